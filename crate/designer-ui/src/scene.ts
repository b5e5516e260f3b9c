// Display model built from a design response body. Every number shown to
// the user is the service's own text; nothing geometric is computed here.

import { field, isNumber, Json, num, parseJson } from "./json.js";

export type Rgb = [number, number, number];

export interface Readouts {
  pitch: string | null;
  angleOfPitch: string | null;
  strictionLength: string | null;
}

export interface Scene {
  readouts: Readouts;
  /** Distribution parameter per profile sample, for the sparkline. */
  delta: (number | null)[];
  vertices: number[][];
  normals: number[][];
  faces: number[][];
  /** Vertex colour from the Gaussian curvature. */
  colors: Rgb[];
  striction: { points: number[][]; dashed: boolean };
  badges: string[];
  warnings: string[];
}

const NEUTRAL: Rgb = [0.92, 0.92, 0.92];
const SINGULAR: Rgb = [0.55, 0.55, 0.55];
const NEGATIVE: Rgb = [0.1, 0.25, 0.85];
const POSITIVE: Rgb = [0.85, 0.2, 0.1];

/** Sign-magnitude colour map: negative curvature blends towards blue,
 * positive towards red, in proportion to `|k| / scale`. */
export function curvatureColor(k: number | null, scale: number): Rgb {
  if (k === null) return SINGULAR;
  const m = scale > 0 ? Math.min(Math.abs(k) / scale, 1) : 0;
  const target = k < 0 ? NEGATIVE : POSITIVE;
  return NEUTRAL.map((c, i) => c + (target[i] - c) * m) as Rgb;
}

function rows(j: Json | undefined): number[][] {
  return Array.isArray(j) ? j.map((r) => (Array.isArray(r) ? r.map((x) => num(x) ?? NaN) : [])) : [];
}

function raw(j: Json | undefined): string | null {
  return isNumber(j) ? j.raw : null;
}

export function sceneFromBody(body: string): Scene {
  const root = parseJson(body);
  const integrals = field(root, "integrals");
  const mesh = field(root, "mesh");
  const profile = field(root, "profile");
  const samples = Array.isArray(profile) ? profile : [];
  const flag = (name: string) => samples.some((s) => field(field(s, "flags"), name) === true);
  const gaussian = field(root, "gaussian");
  const ks = Array.isArray(gaussian) ? gaussian.map((k) => num(k)) : [];
  const scale = ks.reduce<number>((m, k) => (k === null ? m : Math.max(m, Math.abs(k))), 0);
  const warnings = field(root, "warnings");
  const badges = (["developable", "cylindrical", "pole"] as const).filter(flag);
  return {
    readouts: {
      pitch: raw(field(integrals, "pitch")),
      angleOfPitch: raw(field(integrals, "angle_of_pitch")),
      strictionLength: raw(field(integrals, "striction_length")),
    },
    delta: samples.map((s) => num(field(s, "delta"))),
    vertices: rows(field(mesh, "vertices")),
    normals: rows(field(mesh, "normals")),
    faces: rows(field(mesh, "faces")),
    colors: ks.map((k) => curvatureColor(k, scale)),
    striction: { points: rows(field(root, "striction")), dashed: flag("developable") },
    badges,
    warnings: Array.isArray(warnings) ? warnings.filter((w): w is string => typeof w === "string") : [],
  };
}
