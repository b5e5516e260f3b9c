// Control net files shared with the command line tool: a JSON array of
// [u, v] pairs (or {"control_points": [...]}) whose coordinates are numbers
// or constants such as "pi/8" and "3pi/8".

import { field, isNumber, Json, JsonError, parseJson } from "./json.js";

export interface DomainPoint {
  u: number;
  v: number;
}

export const U_MAX = Math.PI;
export const V_MAX = 2 * Math.PI;

const CONSTANT = /^\s*([+-]?)\s*(\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)?\s*(\*?\s*pi)?\s*(?:\/\s*(\d+(?:\.\d+)?))?\s*$/;

/** Evaluates `k`, `pi`, `k pi`, `k*pi`, with an optional `/ d`, in the same
 * operation order as the service so that both produce identical doubles. */
export function parseConstant(text: string): number | null {
  const m = CONSTANT.exec(text);
  if (!m || (m[2] === undefined && m[3] === undefined)) return null;
  let x = m[3] !== undefined ? (m[2] !== undefined ? Number(m[2]) * Math.PI : Math.PI) : Number(m[2]);
  if (m[4] !== undefined) x = x / Number(m[4]);
  return m[1] === "-" ? -x : x;
}

export function importNet(text: string): DomainPoint[] {
  const root = parseJson(text);
  const items = Array.isArray(root) ? root : field(root, "control_points");
  if (!Array.isArray(items)) throw new JsonError("expected an array of [u, v] pairs", 0);
  const coordinate = (j: Json, index: number): number => {
    if (isNumber(j)) return j.value;
    if (typeof j === "string") {
      const x = parseConstant(j);
      if (x !== null) return x;
    }
    throw new JsonError(`control point ${index}: bad coordinate`, locate(text, index));
  };
  const points = items.map((item, index) => {
    if (!Array.isArray(item) || item.length !== 2) {
      throw new JsonError(`control point ${index}: expected [u, v]`, locate(text, index));
    }
    return { u: coordinate(item[0], index), v: coordinate(item[1], index) };
  });
  if (points.length < 2) throw new JsonError("a net needs at least two control points", 0);
  return points;
}

/** Offset of the `index`-th inner array, for error messages. */
function locate(text: string, index: number): number {
  let depth = 0;
  let seen = -1;
  for (let i = 0; i < text.length; i++) {
    const c = text[i];
    if (c === "[") {
      depth++;
      if (depth === 2 && ++seen === index) return i;
    } else if (c === "]") depth--;
  }
  return 0;
}

/** Numbers are written in shortest round-trip form. */
export function exportNet(points: readonly DomainPoint[]): string {
  return "[\n" + points.map((p) => `  [${p.u}, ${p.v}]`).join(",\n") + "\n]\n";
}
