/** Client-side geometry validation.
 *
 * Mirrors the server's rejection rules strictly: everything this module
 * accepts, the server accepts too. Numeric margins are slightly tighter than
 * the server's so float noise cannot flip a verdict across the wire.
 */

import { AirfoilJson, Condition, WingShapeJson, hasControlSections } from "./types.js";

export interface Range {
  min: number;
  max: number;
}

/** Slider/drag boxes for the editable controls. */
export const EDIT_RANGES = {
  sweep_le: { min: 25.0, max: 40.0 },
  aspect_ratio: { min: 8.0, max: 11.0 },
  taper_ratio: { min: 0.15, max: 0.4 },
  kink_eta: { min: 0.36, max: 0.42 },
  root_adjust: { min: 0.1, max: 1.1 },
  twist_deg: { min: -3.0, max: 0.0 },
  mach: { min: 0.75, max: 0.9 },
  aoa_deg: { min: -2.0, max: 12.0 },
} as const;

/** CST coefficients may move +-40% from their baseline value. */
export const CST_PERTURB = 0.4;
/** Dihedral offsets move within +-0.05 * c_root of the baseline. */
export const DIHEDRAL_PERTURB = 0.05;

export function clamp(value: number, range: Range): number {
  return Math.min(range.max, Math.max(range.min, value));
}

export function cstBox(baseline: number): Range {
  const lo = baseline * (1 - CST_PERTURB);
  const hi = baseline * (1 + CST_PERTURB);
  return { min: Math.min(lo, hi), max: Math.max(lo, hi) };
}

const N_COEF = 10;

function binomial(n: number, k: number): number {
  let out = 1;
  for (let i = 0; i < k; i++) out = (out * (n - i)) / (i + 1);
  return out;
}

const BINOM9 = Array.from({ length: N_COEF }, (_, i) => binomial(N_COEF - 1, i));

/** y/c of one CST surface; same formula the server evaluates. */
export function cstEvaluate(airfoil: AirfoilJson, x: number, surface: "upper" | "lower"): number {
  const coef = surface === "upper" ? airfoil.upper : airfoil.lower;
  const sign = surface === "upper" ? 1 : -1;
  const cls = Math.sqrt(x) * (1 - x);
  let shape = 0;
  for (let i = 0; i < N_COEF; i++) {
    shape += coef[i] * BINOM9[i] * Math.pow(x, i) * Math.pow(1 - x, N_COEF - 1 - i);
  }
  return cls * shape + (sign * x * airfoil.te_thickness) / 2;
}

export function airfoilSelfIntersects(airfoil: AirfoilJson): boolean {
  // tighter threshold (1e-9) than the server (1e-12): client-reject first
  for (let k = 0; k <= 200; k++) {
    const x = 0.5 * (1 - Math.cos((Math.PI * k) / 200));
    if (cstEvaluate(airfoil, x, "upper") - cstEvaluate(airfoil, x, "lower") < -1e-9) {
      return true;
    }
  }
  return false;
}

export interface Violation {
  field: string;
  message: string;
}

export function validateGeometry(geometry: WingShapeJson): Violation[] {
  const out: Violation[] = [];
  const p = geometry.planform;
  const checks: Array<[string, number, number, number]> = [
    ["planform.sweep_le", p.sweep_le, 0, 59.999],
    ["planform.aspect_ratio", p.aspect_ratio, 1e-6, Infinity],
    ["planform.taper_ratio", p.taper_ratio, 1e-6, 0.999999],
    ["planform.kink_eta", p.kink_eta, 1e-6, 0.999999],
    ["planform.root_adjust", p.root_adjust, 0, 1.2],
  ];
  for (const [field, value, lo, hi] of checks) {
    if (!Number.isFinite(value) || value < lo || value > hi) {
      out.push({ field, message: `${field} out of range: ${value}` });
    }
  }
  for (const key of ["thickness_dist", "camber_dist", "dihedral_dist", "twist_dist"] as const) {
    const d = geometry[key];
    const n = d.kind === "bspline5" ? 5 : 7;
    if (d.control_etas.length !== n || d.control_values.length !== n) {
      out.push({ field: key, message: `${key} needs ${n} controls for ${d.kind}` });
    }
    if (d.control_etas[0] !== 0 || d.control_etas[d.control_etas.length - 1] !== 1) {
      out.push({ field: key, message: `${key} etas must span [0, 1]` });
    }
    if (!d.control_values.every(Number.isFinite)) {
      out.push({ field: key, message: `${key} has non-finite values` });
    }
  }
  const sections = geometry.section_airfoils;
  const airfoils = hasControlSections(sections) ? sections.map((s) => s.airfoil) : [sections];
  airfoils.forEach((airfoil, i) => {
    if (airfoil.upper.length !== N_COEF || airfoil.lower.length !== N_COEF) {
      out.push({ field: `section_airfoils[${i}]`, message: "need 10 coefficients per surface" });
    } else if (airfoil.te_thickness < 0) {
      out.push({ field: `section_airfoils[${i}].te_thickness`, message: "must be >= 0" });
    } else if (airfoilSelfIntersects(airfoil)) {
      out.push({ field: `section_airfoils[${i}]`, message: "surfaces cross" });
    }
  });
  return out;
}

export function validateCondition(c: Condition): Violation[] {
  const out: Violation[] = [];
  if (!(c.mach > 0.001 && c.mach < 0.999)) {
    out.push({ field: "mach", message: `mach out of (0, 1): ${c.mach}` });
  }
  if (!(c.aoa_deg >= -10 && c.aoa_deg <= 15)) {
    out.push({ field: "aoa_deg", message: `aoa_deg out of [-10, 15]: ${c.aoa_deg}` });
  }
  return out;
}
