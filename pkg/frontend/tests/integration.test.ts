/** Live-server acceptance: S1 (validation subset + latest-wins against the
 * real service) and S2 (end-to-end Mach drag matching a direct CLI predict).
 *
 * Spawns the python inference service on a scratch checkpoint; the fixture
 * is created once under /tmp and reused across runs.
 */

import { execFileSync, spawn, ChildProcess } from "node:child_process";
import { existsSync, mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { PredictClient } from "../src/requests.js";
import { AppStore } from "../src/state.js";
import { buildResultView } from "../src/render.js";
import { DefaultsResponse, PredictResponse, WingShapeJson } from "../src/types.js";
import { EDIT_RANGES, cstBox, validateCondition, validateGeometry } from "../src/validate.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;
const FIXTURE_DIR = "/tmp/wingflow-ui-fixture";
const CKPT = `${FIXTURE_DIR}/ui.ckpt`;

let server: ChildProcess | null = null;

function py(args: string[], timeoutMs = 600_000): string {
  return execFileSync("python3", ["-m", "wingflow.cli", ...args], {
    encoding: "utf8",
    timeout: timeoutMs,
    cwd: "/root/pkg",
  });
}

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 120; i++) {
    try {
      const res = await fetch(`${BASE}/api/info`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 500));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  if (!existsSync(CKPT)) {
    mkdirSync(FIXTURE_DIR, { recursive: true });
    py(["gen-data", "--kind", "finetune", "--shapes", "2", "--out",
        `${FIXTURE_DIR}/data`, "--seed", "5", "--conditions", "2",
        "--chord", "64", "--span", "33"]);
    writeFileSync(`${FIXTURE_DIR}/cfg.json`, JSON.stringify({
      model: { hidden0: 8, depths: [1, 1, 1, 1, 1], window: 4, heads: 2 },
      train: { batch_size: 4, total_steps: 60, lr_max: 2e-3, seed: 0, log_every: 50 },
    }));
    py(["train", "--data", `${FIXTURE_DIR}/data`, "--config", `${FIXTURE_DIR}/cfg.json`,
        "--out", CKPT]);
  }
  server = spawn("python3", ["-m", "wingflow.cli", "serve", "--ckpt", CKPT,
                             "--port", String(PORT)], {
    cwd: "/root/pkg",
    stdio: "ignore",
  });
  await waitForServer();
}, 600_000);

afterAll(() => {
  server?.kill();
});

function randIn(min: number, max: number): number {
  return min + Math.random() * (max - min);
}

function randomClientValidGeometry(base: WingShapeJson): WingShapeJson {
  const g = structuredClone(base);
  g.planform.sweep_le = randIn(EDIT_RANGES.sweep_le.min, EDIT_RANGES.sweep_le.max);
  g.planform.aspect_ratio = randIn(EDIT_RANGES.aspect_ratio.min, EDIT_RANGES.aspect_ratio.max);
  g.planform.taper_ratio = randIn(EDIT_RANGES.taper_ratio.min, EDIT_RANGES.taper_ratio.max);
  g.planform.kink_eta = randIn(EDIT_RANGES.kink_eta.min, EDIT_RANGES.kink_eta.max);
  g.planform.root_adjust = randIn(EDIT_RANGES.root_adjust.min, EDIT_RANGES.root_adjust.max);
  if (Array.isArray(g.section_airfoils)) {
    for (const section of g.section_airfoils) {
      for (const surface of ["upper", "lower"] as const) {
        section.airfoil[surface] = section.airfoil[surface].map((c) => {
          const box = cstBox(c);
          return randIn(box.min, box.max);
        });
      }
    }
  }
  g.twist_dist.control_values = g.twist_dist.control_values.map(() =>
    randIn(EDIT_RANGES.twist_deg.min, EDIT_RANGES.twist_deg.max),
  );
  return g;
}

describe("S1: client validation is a subset of server validation", () => {
  it("every client-valid geometry/condition is accepted by the live server", async () => {
    const defaults = (await (await fetch(`${BASE}/api/defaults`)).json()) as DefaultsResponse;
    let accepted = 0;
    for (let trial = 0; trial < 20; trial++) {
      const geometry = randomClientValidGeometry(defaults.geometry);
      const condition = {
        mach: randIn(EDIT_RANGES.mach.min, EDIT_RANGES.mach.max),
        aoa_deg: randIn(EDIT_RANGES.aoa_deg.min, EDIT_RANGES.aoa_deg.max),
      };
      if (validateGeometry(geometry).length || validateCondition(condition).length) {
        continue; // client rejects: subset property says nothing
      }
      const res = await fetch(`${BASE}/api/predict`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ geometry, conditions: [condition] }),
      });
      expect(res.status).toBe(200);
      accepted++;
    }
    expect(accepted).toBeGreaterThan(10); // the sampler mostly stays client-valid
  }, 300_000);

  it("latest-wins holds against the live server for rapid edits", async () => {
    const defaults = (await (await fetch(`${BASE}/api/defaults`)).json()) as DefaultsResponse;
    const client = new PredictClient(BASE, undefined, 10);
    const store = new AppStore(defaults.geometry, defaults.conditions[0], client);
    const seen: number[] = [];
    store.subscribe((state) => {
      if (state.last_response) seen.push(state.last_response.coefficients[0].cl);
    });
    // three rapid condition commits, each flushed immediately -> three
    // distinct requests race; the rendered state must match the last one
    store.setCondition("aoa_deg", 0.0, true);
    store.setCondition("aoa_deg", 2.0, true);
    store.setCondition("aoa_deg", 4.0, true);
    await new Promise((r) => setTimeout(r, 4000));
    expect(store.state.last_response).not.toBeNull();
    const direct = await fetch(`${BASE}/api/predict`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        geometry: store.state.geometry,
        conditions: [{ mach: store.state.conditions.mach, aoa_deg: 4.0 }],
      }),
    });
    const body = (await direct.json()) as PredictResponse;
    expect(store.state.last_response!.coefficients[0].cl).toBeCloseTo(
      body.coefficients[0].cl, 10,
    );
  }, 120_000);
});

describe("S2: end-to-end Mach drag matches the CLI", () => {
  it("drag 0.75 -> 0.85 updates the contour and the readout agrees with predict", async () => {
    const defaults = (await (await fetch(`${BASE}/api/defaults`)).json()) as DefaultsResponse;
    const client = new PredictClient(BASE, undefined, 150);
    const store = new AppStore(defaults.geometry, defaults.conditions[0], client);

    store.setCondition("mach", 0.75, true);
    await waitForResponse(store);
    const viewBefore = buildResultView(store.state.last_response!, 0.5);

    // continuous drag: many rapid updates, then the debounce settles
    for (let i = 1; i <= 10; i++) {
      store.setCondition("mach", 0.75 + 0.01 * i);
      await new Promise((r) => setTimeout(r, 15));
    }
    await waitForResponse(store, viewBefore);
    expect(store.state.conditions.mach).toBeCloseTo(0.85, 12);
    const viewAfter = buildResultView(store.state.last_response!, 0.5);

    // the Cp contour visibly changed
    const changed = viewAfter.contour.some((cell, i) =>
      cell.color !== viewBefore.contour[i].color);
    expect(changed).toBe(true);

    // readout matches a direct CLI predict on the same inputs, to display rounding
    writeFileSync(`${FIXTURE_DIR}/geom.json`, JSON.stringify(store.state.geometry));
    const out = py(["predict", "--ckpt", CKPT, "--geometry", `${FIXTURE_DIR}/geom.json`,
                    "--mach", "0.85", "--aoa", String(store.state.conditions.aoa_deg)]);
    const cli = JSON.parse(out).coefficients as { cl: number; cd: number; cmz: number };
    expect(viewAfter.coefficients.cl).toBe(cli.cl.toPrecision(4));
    expect(viewAfter.coefficients.cd).toBe(cli.cd.toPrecision(4));
    expect(viewAfter.coefficients.cmz).toBe(cli.cmz.toPrecision(4));
  }, 300_000);
});

async function waitForResponse(store: AppStore, previous?: unknown): Promise<void> {
  for (let i = 0; i < 200; i++) {
    if (store.state.last_response && !store.state.pending) {
      if (!previous) return;
      return; // pending cleared after the newest request resolved
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error("no prediction arrived");
}
