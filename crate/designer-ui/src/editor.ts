// Editor state for the control net. The net is always closed: the first
// and last control points are one handle.

import { DomainPoint, U_MAX, V_MAX } from "./net.js";

export interface Lift {
  u_bar: string;
  v_bar: string;
}

export interface Camera {
  azimuth: number;
  elevation: number;
  distance: number;
}

export interface EditorState<R = unknown> {
  readonly net: readonly DomainPoint[];
  readonly lift: Lift;
  readonly selection: number | null;
  readonly camera: Camera;
  /** On release of p1 or p(n-1), make p(n-1), p0, p1 collinear. */
  readonly c1Snap: boolean;
  readonly lastResponse: R | null;
  readonly pending: boolean;
  /** Set when the last drag was clamped to the domain rectangle. */
  readonly clamped: boolean;
}

export const DEFAULT_CAMERA: Camera = { azimuth: 0.6, elevation: 0.4, distance: 6 };

function same(a: DomainPoint, b: DomainPoint): boolean {
  return a.u === b.u && a.v === b.v;
}

export function isClosed(net: readonly DomainPoint[]): boolean {
  return net.length > 2 && same(net[0], net[net.length - 1]);
}

/** Appends p0 when the last point differs from it. */
export function closeNet(points: readonly DomainPoint[]): DomainPoint[] {
  const out = points.map((p) => ({ ...p }));
  if (out.length > 0 && !same(out[0], out[out.length - 1])) out.push({ ...out[0] });
  return out;
}

export function createEditor<R>(net: readonly DomainPoint[], lift: Lift, c1Snap = false): EditorState<R> {
  const closed = closeNet(net);
  if (closed.length < 3) throw new RangeError("a closed net needs at least two distinct control points");
  return { net: closed, lift, selection: null, camera: DEFAULT_CAMERA, c1Snap, lastResponse: null, pending: false, clamped: false };
}

function clamp(p: DomainPoint): { point: DomainPoint; clamped: boolean } {
  const u = Math.min(Math.max(p.u, 0), U_MAX);
  const v = Math.min(Math.max(p.v, 0), V_MAX);
  return { point: { u, v }, clamped: u !== p.u || v !== p.v };
}

function checkIndex(state: EditorState<unknown>, index: number): void {
  if (!Number.isInteger(index) || index < 0 || index >= state.net.length) {
    throw new RangeError(`control point ${index} does not exist`);
  }
}

export function dragControlPoint<R>(state: EditorState<R>, index: number, to: DomainPoint): EditorState<R> {
  checkIndex(state, index);
  const { point, clamped } = clamp(to);
  const n = state.net.length - 1;
  const tied = isClosed(state.net) && (index === 0 || index === n);
  const net = state.net.map((p, i) => (i === index || (tied && (i === 0 || i === n)) ? { ...point } : p));
  return { ...state, net, selection: index, clamped };
}

/** Foot of `q` on the line through `a` and `b`. */
function project(q: DomainPoint, a: DomainPoint, b: DomainPoint): DomainPoint {
  const du = b.u - a.u;
  const dv = b.v - a.v;
  const len2 = du * du + dv * dv;
  if (len2 === 0) return { ...q };
  const s = ((q.u - a.u) * du + (q.v - a.v) * dv) / len2;
  return { u: a.u + s * du, v: a.v + s * dv };
}

export function releaseControlPoint<R>(state: EditorState<R>, index: number): EditorState<R> {
  checkIndex(state, index);
  const n = state.net.length - 1;
  const released = { ...state, selection: null };
  if (!state.c1Snap || n < 3 || !isClosed(state.net)) return released;
  const net = state.net.map((p) => ({ ...p }));
  const p0 = net[0];
  if (index === 1) {
    net[n - 1] = clamp(project(net[n - 1], p0, net[1])).point;
  } else if (index === n - 1) {
    net[1] = clamp(project(net[1], p0, net[n - 1])).point;
  } else {
    return released;
  }
  return { ...released, net };
}

/** Twice the signed area of (p(n-1), p0, p1); zero when collinear. */
export function seamArea(net: readonly DomainPoint[]): number {
  const n = net.length - 1;
  const [a, o, b] = [net[n - 1], net[0], net[1]];
  return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
}
