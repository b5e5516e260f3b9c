// Calls to the design service. Failures become diagnostics to show inline;
// they never replace the scene.

import { field, num, parseJson } from "./json.js";
import { Lift } from "./editor.js";
import { DomainPoint } from "./net.js";
import { Scene, sceneFromBody } from "./scene.js";

export interface DesignRequest {
  control_points: [number, number][];
  lift: Lift;
  samples?: number;
  w_min?: number;
  w_max?: number;
  mesh_nt?: number;
  mesh_nw?: number;
}

export interface Diagnostic {
  status: number;
  message: string;
  field?: string;
  position?: number;
  /** Offered action, e.g. "close curve". */
  fixIt?: string;
}

export type Outcome = { ok: true; scene: Scene; body: string } | { ok: false; diagnostic: Diagnostic };

export type Fetch = (url: string, init: { method: string; headers: Record<string, string>; body: string }) => Promise<{ status: number; text(): Promise<string> }>;

export function designRequest(net: readonly DomainPoint[], lift: Lift, extra: Partial<DesignRequest> = {}): DesignRequest {
  return { control_points: net.map((p) => [p.u, p.v]), lift, ...extra };
}

export function interpret(status: number, body: string): Outcome {
  if (status === 200) {
    try {
      return { ok: true, scene: sceneFromBody(body), body };
    } catch (e) {
      return { ok: false, diagnostic: { status, message: `unreadable response: ${(e as Error).message}` } };
    }
  }
  let message = body.trim() || `HTTP ${status}`;
  const diagnostic: Diagnostic = { status, message };
  try {
    const j = parseJson(body);
    const error = field(j, "error");
    if (typeof error === "string") message = error;
    const f = field(j, "field");
    if (typeof f === "string") diagnostic.field = f;
    const position = num(field(j, "position"));
    if (position !== null) diagnostic.position = position;
  } catch {
    // plain-text error bodies are shown as they are
  }
  diagnostic.message = message;
  if (status === 422 && message === "curve not closed") diagnostic.fixIt = "close curve";
  return { ok: false, diagnostic };
}

export async function requestDesign(fetchFn: Fetch, baseUrl: string, request: DesignRequest): Promise<Outcome> {
  try {
    const resp = await fetchFn(`${baseUrl}/api/design`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
    return interpret(resp.status, await resp.text());
  } catch (e) {
    return { ok: false, diagnostic: { status: 0, message: `service unreachable: ${(e as Error).message}` } };
  }
}
