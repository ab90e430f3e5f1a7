import { describe, expect, it } from "vitest";

import { encodeF32 } from "../src/codec.js";
import { PredictClient, Scheduler } from "../src/requests.js";
import {
  AppStore,
  Snapshot,
  coefficientReadout,
  scenarioCompare,
} from "../src/state.js";
import { PredictResponse, WingShapeJson } from "../src/types.js";

function geometry(): WingShapeJson {
  return {
    planform: {
      sweep_le: 37.16, aspect_ratio: 8.38, taper_ratio: 0.275,
      kink_eta: 0.368, root_adjust: 0.67,
    },
    thickness_dist: { control_etas: [0, 0.25, 0.5, 0.75, 1], control_values: [1, 1, 1, 1, 1], kind: "bspline5" },
    camber_dist: { control_etas: [0, 0.25, 0.5, 0.75, 1], control_values: [1, 1, 1, 1, 1], kind: "bspline5" },
    dihedral_dist: {
      control_etas: [0, 1 / 6, 2 / 6, 0.5, 4 / 6, 5 / 6, 1],
      control_values: [0, 0.01, 0.02, 0.035, 0.055, 0.08, 0.11],
      kind: "linear7",
    },
    twist_dist: {
      control_etas: [0, 1 / 6, 2 / 6, 0.5, 4 / 6, 5 / 6, 1],
      control_values: [0, -0.3, -0.6, -1, -1.4, -1.8, -2.2],
      kind: "linear7",
    },
    section_airfoils: Array.from({ length: 7 }, (_, i) => ({
      eta: i / 6,
      airfoil: {
        upper: [0.17, 0.15, 0.158, 0.148, 0.155, 0.15, 0.158, 0.17, 0.16, 0.15],
        lower: [-0.155, -0.14, -0.13, -0.11, -0.09, -0.04, 0.01, 0.05, 0.02, -0.02],
        te_thickness: 0.004,
      },
    })),
  };
}

const instantScheduler: Scheduler = (fn) => {
  fn();
  return { cancel: () => undefined };
};

function storeWithCapture() {
  const sent: string[] = [];
  const fetchFn = (_url: string, init: RequestInit) => {
    sent.push(init.body as string);
    return Promise.resolve(
      new Response(JSON.stringify(fakeResponse(1)), { status: 200 }),
    );
  };
  const client = new PredictClient("", fetchFn, 0, instantScheduler);
  const store = new AppStore(geometry(), { mach: 0.85, aoa_deg: 2 }, client);
  return { store, sent };
}

function fakeResponse(seed: number): PredictResponse {
  const h = 4;
  const w = 2;
  const field = Float32Array.from({ length: h * w }, (_, k) => seed + k * 0.1);
  const mesh = Float32Array.from({ length: 3 * h * w }, (_, k) => k * 0.01);
  return {
    mesh_shape: [3, h, w],
    mesh: encodeF32(mesh),
    fields: [{ cp: encodeF32(field), cf_tau: encodeF32(field), cf_z: encodeF32(field) }],
    coefficients: [{ cl: 0.5 * seed, cd: 0.02 * seed, cmz: 0.1 * seed }],
    timing_ms: 3,
  };
}

function snapshotOf(seed: number): Snapshot {
  return {
    geometry: geometry(),
    conditions: { mach: 0.85, aoa_deg: 2 },
    response: fakeResponse(seed),
  };
}

describe("app store edits", () => {
  it("valid edits send a request; invalid geometry never leaves the client", async () => {
    const { store, sent } = storeWithCapture();
    store.editPlanform("sweep_le", 30);
    await new Promise((r) => setTimeout(r, 0));
    expect(sent.length).toBe(1);
    expect(store.state.geometry.planform.sweep_le).toBe(30);

    // corrupt the geometry directly (bypassing the clamped setter)
    store.state.geometry.planform.taper_ratio = 1.9;
    store.requestPrediction();
    await new Promise((r) => setTimeout(r, 0));
    expect(sent.length).toBe(1); // nothing was sent
    expect(store.state.errors.length).toBeGreaterThan(0);
  });

  it("clamps CST edits to the +-40% box around the loaded baseline", () => {
    const { store } = storeWithCapture();
    const sections = store.state.geometry.section_airfoils;
    if (!Array.isArray(sections)) throw new Error("expected control sections");
    const base = sections[3].airfoil.upper[0];
    store.editCstCoefficient(3, "upper", 0, base * 10);
    expect(sections[3].airfoil.upper[0]).toBeCloseTo(base * 1.4, 10);
  });

  it("uploading the same geometry reproduces the initial state", async () => {
    const { store } = storeWithCapture();
    const before = JSON.stringify(store.state.geometry);
    expect(store.loadGeometry(geometry())).toBe(true);
    await new Promise((r) => setTimeout(r, 0));
    expect(JSON.stringify(store.state.geometry)).toBe(before);
  });

  it("keeps only the latest response", async () => {
    const { store } = storeWithCapture();
    store.setCondition("mach", 0.8, true);
    await new Promise((r) => setTimeout(r, 0));
    expect(store.state.last_response).not.toBeNull();
    expect(store.state.pending).toBe(false);
  });

  it("never regresses to an earlier response under artificial reordering", () => {
    // drive the store's settle callback directly with shuffled outcomes,
    // mirroring the client contract (stale outcomes carry response: null)
    const captured: Array<(o: { token: number; response: PredictResponse | null }) => void> = [];
    const fakeClient = {
      request: (_g: unknown, _c: unknown, onSettled: (o: never) => void) =>
        captured.push(onSettled as never),
    } as unknown as PredictClient;
    const store = new AppStore(geometry(), { mach: 0.85, aoa_deg: 2 }, fakeClient);
    store.requestPrediction(true); // request 1
    store.requestPrediction(true); // request 2 (newer)
    expect(captured.length).toBe(2);
    captured[1]({ token: 2, response: fakeResponse(9) }); // newest arrives first
    expect(store.state.last_response?.coefficients[0].cl).toBeCloseTo(4.5, 12);
    captured[0]({ token: 1, response: null }); // stale arrives late, discarded
    expect(store.state.last_response?.coefficients[0].cl).toBeCloseTo(4.5, 12);
  });
});

describe("scenario compare", () => {
  it("self-comparison yields zero deltas", () => {
    const snap = snapshotOf(2);
    const result = scenarioCompare(snap, snap);
    expect(result.d_cl).toBe(0);
    expect(result.d_cd).toBe(0);
    expect(result.d_cmz).toBe(0);
    expect(result.section_dcp).not.toBeNull();
    for (const v of result.section_dcp!) expect(v).toBe(0);
  });

  it("swapping arguments negates the deltas", () => {
    const a = snapshotOf(2);
    const b = snapshotOf(5);
    const ab = scenarioCompare(a, b);
    const ba = scenarioCompare(b, a);
    expect(ab.d_cl).toBeCloseTo(-ba.d_cl, 12);
    expect(ab.d_cd).toBeCloseTo(-ba.d_cd, 12);
    expect(ab.d_cmz).toBeCloseTo(-ba.d_cmz, 12);
  });

  it("fixture pair deltas equal hand subtraction", () => {
    const a = snapshotOf(3);
    const b = snapshotOf(1);
    const result = scenarioCompare(a, b);
    expect(result.d_cl).toBeCloseTo(0.5 * 3 - 0.5 * 1, 12);
    expect(result.d_cd).toBeCloseTo(0.02 * 3 - 0.02 * 1, 12);
    expect(result.d_cmz).toBeCloseTo(0.1 * 3 - 0.1 * 1, 12);
  });

  it("mismatched shapes disable the sectional plot", () => {
    const a = snapshotOf(1);
    const b = snapshotOf(1);
    b.response = { ...b.response, mesh_shape: [3, 8, 2] };
    expect(scenarioCompare(a, b).section_dcp).toBeNull();
  });
});

describe("coefficient readout", () => {
  it("renders 4 significant digits", () => {
    const r = coefficientReadout({ cl: 0.523456, cd: 0.0123456, cmz: -0.987654 });
    expect(r.cl).toBe("0.5235");
    expect(r.cd).toBe("0.01235");
    expect(r.cmz).toBe("-0.9877");
  });
});
