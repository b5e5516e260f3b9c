// JSON reader that keeps the source text of every number, so values from
// the design service can be shown exactly as sent.

export interface RawNumber {
  readonly kind: "number";
  readonly raw: string;
  readonly value: number;
}

export type Json = null | boolean | string | RawNumber | Json[] | { [key: string]: Json };

export class JsonError extends Error {
  constructor(
    message: string,
    readonly position: number,
  ) {
    super(`${message} at position ${position}`);
  }
}

const NUMBER = /-?(?:0|[1-9]\d*)(?:\.\d+)?(?:[eE][+-]?\d+)?/y;

export function parseJson(text: string): Json {
  let i = 0;
  const ws = () => {
    while (i < text.length && " \t\n\r".includes(text[i])) i++;
  };
  const fail = (what: string): never => {
    throw new JsonError(i < text.length ? `expected ${what}, found '${text[i]}'` : `expected ${what}, found end of input`, i);
  };
  const literal = (word: string, value: Json): Json => {
    if (text.startsWith(word, i)) {
      i += word.length;
      return value;
    }
    return fail("a value");
  };
  const string = (): string => {
    const start = i;
    i++;
    while (i < text.length && text[i] !== '"') i += text[i] === "\\" ? 2 : 1;
    if (i >= text.length) throw new JsonError("unterminated string", start);
    i++;
    return JSON.parse(text.slice(start, i)) as string;
  };
  const value = (): Json => {
    ws();
    const c = text[i];
    if (c === "{") {
      i++;
      const obj: { [key: string]: Json } = {};
      ws();
      if (text[i] === "}") {
        i++;
        return obj;
      }
      for (;;) {
        ws();
        if (text[i] !== '"') fail("a key");
        const key = string();
        ws();
        if (text[i] !== ":") fail("':'");
        i++;
        obj[key] = value();
        ws();
        if (text[i] === ",") {
          i++;
          continue;
        }
        if (text[i] === "}") {
          i++;
          return obj;
        }
        fail("',' or '}'");
      }
    }
    if (c === "[") {
      i++;
      const arr: Json[] = [];
      ws();
      if (text[i] === "]") {
        i++;
        return arr;
      }
      for (;;) {
        arr.push(value());
        ws();
        if (text[i] === ",") {
          i++;
          continue;
        }
        if (text[i] === "]") {
          i++;
          return arr;
        }
        fail("',' or ']'");
      }
    }
    if (c === '"') return string();
    if (c === "t") return literal("true", true);
    if (c === "f") return literal("false", false);
    if (c === "n") return literal("null", null);
    NUMBER.lastIndex = i;
    const m = NUMBER.exec(text);
    if (!m) return fail("a value");
    i += m[0].length;
    return { kind: "number", raw: m[0], value: Number(m[0]) };
  };
  const out = value();
  ws();
  if (i < text.length) fail("end of input");
  return out;
}

export function isNumber(j: Json | undefined): j is RawNumber {
  return typeof j === "object" && j !== null && !Array.isArray(j) && (j as RawNumber).kind === "number";
}

export function field(j: Json | undefined, key: string): Json | undefined {
  return typeof j === "object" && j !== null && !Array.isArray(j) && !isNumber(j) ? j[key] : undefined;
}

export function num(j: Json | undefined): number | null {
  return isNumber(j) ? j.value : null;
}
