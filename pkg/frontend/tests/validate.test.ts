import { describe, expect, it } from "vitest";

import { AirfoilJson, WingShapeJson } from "../src/types.js";
import {
  airfoilSelfIntersects,
  clamp,
  cstBox,
  cstEvaluate,
  validateCondition,
  validateGeometry,
} from "../src/validate.js";

const BASE_AIRFOIL: AirfoilJson = {
  upper: [0.17, 0.15, 0.158, 0.148, 0.155, 0.15, 0.158, 0.17, 0.16, 0.15],
  lower: [-0.155, -0.14, -0.13, -0.11, -0.09, -0.04, 0.01, 0.05, 0.02, -0.02],
  te_thickness: 0.004,
};

function validGeometry(): WingShapeJson {
  return {
    planform: {
      sweep_le: 37.16,
      aspect_ratio: 8.38,
      taper_ratio: 0.275,
      kink_eta: 0.368,
      root_adjust: 0.67,
    },
    thickness_dist: { control_etas: [0, 0.25, 0.5, 0.75, 1], control_values: [1, 1, 1, 1, 1], kind: "bspline5" },
    camber_dist: { control_etas: [0, 0.25, 0.5, 0.75, 1], control_values: [1, 1, 1, 1, 1], kind: "bspline5" },
    dihedral_dist: { control_etas: [0, 0.25, 0.5, 0.75, 1], control_values: [0, 0, 0, 0, 0], kind: "bspline5" },
    twist_dist: { control_etas: [0, 0.25, 0.5, 0.75, 1], control_values: [0, -1, -1, -2, -2], kind: "bspline5" },
    section_airfoils: structuredClone(BASE_AIRFOIL),
  };
}

describe("cst evaluation", () => {
  it("matches the frozen server-side value", () => {
    // a = (1, 0, ..., 0) upper at x = 0.25: 0.5 * 0.75 * 0.75^9
    const airfoil: AirfoilJson = {
      upper: [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
      lower: new Array(10).fill(0),
      te_thickness: 0,
    };
    expect(cstEvaluate(airfoil, 0.25, "upper")).toBeCloseTo(0.028156757354736328, 14);
  });

  it("vanishes at the leading edge and honors the TE gap", () => {
    expect(cstEvaluate(BASE_AIRFOIL, 0, "upper")).toBe(0);
    expect(cstEvaluate(BASE_AIRFOIL, 1, "upper")).toBeCloseTo(0.002, 12);
    expect(cstEvaluate(BASE_AIRFOIL, 1, "lower")).toBeCloseTo(-0.002, 12);
  });
});

describe("edit boxes", () => {
  it("clamps to the box", () => {
    expect(clamp(1.5, { min: 0, max: 1 })).toBe(1);
    expect(clamp(-0.5, { min: 0, max: 1 })).toBe(0);
    expect(clamp(0.3, { min: 0, max: 1 })).toBe(0.3);
  });

  it("allows +40% and clamps +41% of a CST coefficient", () => {
    const base = 0.15;
    const box = cstBox(base);
    expect(clamp(base * 1.4, box)).toBeCloseTo(base * 1.4, 12);
    expect(clamp(base * 1.41, box)).toBeCloseTo(base * 1.4, 12);
    // negative baselines flip the interval
    const neg = cstBox(-0.1);
    expect(neg.min).toBeCloseTo(-0.14, 12);
    expect(neg.max).toBeCloseTo(-0.06, 12);
  });
});

describe("geometry validation", () => {
  it("accepts the baseline", () => {
    expect(validateGeometry(validGeometry())).toEqual([]);
  });

  it("rejects out-of-range planform fields by name", () => {
    const geom = validGeometry();
    geom.planform.taper_ratio = 1.7;
    const errors = validateGeometry(geom);
    expect(errors.some((e) => e.field.includes("taper_ratio"))).toBe(true);
  });

  it("rejects crossed airfoil surfaces", () => {
    const crossed: AirfoilJson = {
      upper: new Array(10).fill(-0.1),
      lower: new Array(10).fill(0.1),
      te_thickness: 0,
    };
    expect(airfoilSelfIntersects(crossed)).toBe(true);
    const geom = validGeometry();
    geom.section_airfoils = crossed;
    expect(validateGeometry(geom).length).toBeGreaterThan(0);
  });

  it("rejects wrong control counts", () => {
    const geom = validGeometry();
    geom.twist_dist.control_etas = [0, 1];
    geom.twist_dist.control_values = [0, 0];
    expect(validateGeometry(geom).some((e) => e.field === "twist_dist")).toBe(true);
  });
});

describe("condition validation", () => {
  it("accepts the Table boxes and rejects supersonic Mach", () => {
    expect(validateCondition({ mach: 0.85, aoa_deg: 2 })).toEqual([]);
    expect(validateCondition({ mach: 1.2, aoa_deg: 2 }).length).toBe(1);
    expect(validateCondition({ mach: 0.8, aoa_deg: 20 }).length).toBe(1);
  });
});
