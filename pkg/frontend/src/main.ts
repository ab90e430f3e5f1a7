/** Browser entry point: wires sliders, airfoil handles, and result views. */

import { Grid, decodeF32 } from "./codec.js";
import { PredictClient } from "./requests.js";
import { AppStore, Snapshot, coefficientReadout, scenarioCompare } from "./state.js";
import { buildResultView, paintContour, paintSeries } from "./render.js";
import { DefaultsResponse, WingShapeJson, hasControlSections } from "./types.js";
import { EDIT_RANGES, cstBox, cstEvaluate } from "./validate.js";

const SECTION_ETAS = [0, 1 / 6, 2 / 6, 3 / 6, 4 / 6, 5 / 6, 1];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function slider(
  id: string,
  min: number,
  max: number,
  value: number,
  onInput: (v: number) => void,
): HTMLInputElement {
  const input = el<HTMLInputElement>(id);
  input.min = String(min);
  input.max = String(max);
  input.step = String((max - min) / 200);
  input.value = String(value);
  input.addEventListener("input", () => onInput(Number(input.value)));
  return input;
}

async function boot(): Promise<void> {
  const base = "";
  const defaults = (await (await fetch(`${base}/api/defaults`)).json()) as DefaultsResponse;
  const client = new PredictClient(base);
  const store = new AppStore(defaults.geometry, defaults.conditions[0], client);

  const planformFields = [
    "sweep_le",
    "aspect_ratio",
    "taper_ratio",
    "kink_eta",
    "root_adjust",
  ] as const;
  for (const field of planformFields) {
    const range = EDIT_RANGES[field];
    slider(`pf-${field}`, range.min, range.max, store.state.geometry.planform[field], (v) => {
      store.editPlanform(field, v);
      syncLabels();
    });
  }
  slider("cond-mach", EDIT_RANGES.mach.min, EDIT_RANGES.mach.max,
         store.state.conditions.mach, (v) => {
    store.setCondition("mach", v);
    syncLabels();
  });
  slider("cond-aoa", EDIT_RANGES.aoa_deg.min, EDIT_RANGES.aoa_deg.max,
         store.state.conditions.aoa_deg, (v) => {
    store.setCondition("aoa_deg", v);
    syncLabels();
  });
  const sectionPicker = el<HTMLInputElement>("section-pick");
  sectionPicker.addEventListener("input", () => {
    store.selectSection(Number(sectionPicker.value));
    drawAirfoilEditor();
  });
  const twistSlider = slider("sec-twist", EDIT_RANGES.twist_deg.min, EDIT_RANGES.twist_deg.max,
                             0, (v) => store.editTwist(store.state.selected_section, v));

  // ---------------------------------------------------------- airfoil editor
  const editor = el<HTMLCanvasElement>("airfoil-editor");
  let dragging: { surface: "upper" | "lower"; index: number } | null = null;

  function handlePositions() {
    const sections = store.state.geometry.section_airfoils;
    if (!hasControlSections(sections)) return [];
    const airfoil = sections[store.state.selected_section].airfoil;
    const out: Array<{ surface: "upper" | "lower"; index: number; x: number; y: number }> = [];
    for (const surface of ["upper", "lower"] as const) {
      airfoil[surface].forEach((_, i) => {
        const x = (i + 0.5) / 10;
        out.push({ surface, index: i, x, y: cstEvaluate(airfoil, x, surface) });
      });
    }
    return out;
  }

  const toPx = (x: number, y: number): [number, number] => [
    20 + x * (editor.width - 40),
    editor.height / 2 - y * editor.height * 1.6,
  ];

  function drawAirfoilEditor(): void {
    const ctx = editor.getContext("2d");
    const sections = store.state.geometry.section_airfoils;
    if (!ctx || !hasControlSections(sections)) return;
    const airfoil = sections[store.state.selected_section].airfoil;
    ctx.clearRect(0, 0, editor.width, editor.height);
    for (const surface of ["upper", "lower"] as const) {
      ctx.beginPath();
      for (let k = 0; k <= 100; k++) {
        const x = k / 100;
        const [px, py] = toPx(x, cstEvaluate(airfoil, x, surface));
        if (k === 0) ctx.moveTo(px, py);
        else ctx.lineTo(px, py);
      }
      ctx.strokeStyle = surface === "upper" ? "#c44" : "#46a";
      ctx.stroke();
    }
    for (const handle of handlePositions()) {
      const [px, py] = toPx(handle.x, handle.y);
      ctx.beginPath();
      ctx.arc(px, py, 4, 0, Math.PI * 2);
      ctx.fillStyle = handle.surface === "upper" ? "#c44" : "#46a";
      ctx.fill();
    }
  }

  editor.addEventListener("pointerdown", (ev) => {
    const rect = editor.getBoundingClientRect();
    const mx = ev.clientX - rect.left;
    const my = ev.clientY - rect.top;
    for (const handle of handlePositions()) {
      const [px, py] = toPx(handle.x, handle.y);
      if ((px - mx) ** 2 + (py - my) ** 2 < 64) {
        dragging = { surface: handle.surface, index: handle.index };
        editor.setPointerCapture(ev.pointerId);
        return;
      }
    }
  });
  editor.addEventListener("pointermove", (ev) => {
    if (!dragging) return;
    const sections = store.state.geometry.section_airfoils;
    if (!hasControlSections(sections)) return;
    const airfoil = sections[store.state.selected_section].airfoil;
    const current = airfoil[dragging.surface][dragging.index];
    // vertical drag maps to a coefficient change through the class function
    const delta = (-ev.movementY / (editor.height * 1.6)) * 4.0;
    store.editCstCoefficient(
      store.state.selected_section, dragging.surface, dragging.index, current + delta,
    );
    drawAirfoilEditor();
  });
  editor.addEventListener("pointerup", () => (dragging = null));

  // advanced panel: raw coefficient entry
  el<HTMLButtonElement>("apply-raw").addEventListener("click", () => {
    const sections = store.state.geometry.section_airfoils;
    if (!hasControlSections(sections)) return;
    try {
      const values = JSON.parse(el<HTMLTextAreaElement>("raw-coefficients").value);
      const section = store.state.selected_section;
      (["upper", "lower"] as const).forEach((surface) => {
        (values[surface] as number[]).forEach((v, i) =>
          store.editCstCoefficient(section, surface, i, v),
        );
      });
      drawAirfoilEditor();
    } catch (err) {
      el<HTMLDivElement>("errors").textContent = `raw input: ${err}`;
    }
  });

  // geometry upload / download
  el<HTMLInputElement>("geometry-file").addEventListener("change", async (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (!file) return;
    const geometry = JSON.parse(await file.text()) as WingShapeJson;
    if (!store.loadGeometry(geometry)) return;
    drawAirfoilEditor();
  });
  el<HTMLButtonElement>("geometry-download").addEventListener("click", () => {
    const blob = new Blob([JSON.stringify(store.state.geometry, null, 1)],
                          { type: "application/json" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "wing.json";
    a.click();
  });

  // ---------------------------------------------------------- compare
  let snapA: Snapshot | null = null;
  let snapB: Snapshot | null = null;
  const compareOut = el<HTMLDivElement>("compare-out");
  function refreshCompare(): void {
    if (!snapA || !snapB) return;
    const sectionEta = SECTION_ETAS[store.state.selected_section];
    const result = scenarioCompare(snapA, snapB, sectionEta);
    compareOut.textContent =
      `dCL ${result.d_cl.toPrecision(4)}  dCD ${result.d_cd.toPrecision(4)}  ` +
      `dCMz ${result.d_cmz.toPrecision(4)}`;
    compareOut.title = result.section_dcp
      ? ""
      : "sectional delta-Cp disabled: the two snapshots have different mesh shapes";
    if (result.section_dcp) {
      const half = Math.floor(result.section_dcp.length / 2);
      const xs = new Float32Array(half).map((_, i) => i / Math.max(half - 1, 1));
      paintSeries(
        el<HTMLCanvasElement>("compare-plot"),
        {
          upper: { x: xs, v: result.section_dcp.slice(half, 2 * half) },
          lower: { x: xs, v: result.section_dcp.slice(0, half).reverse() },
        },
        "delta Cp (A - B)",
        true,
      );
    }
  }
  el<HTMLButtonElement>("snap-a").addEventListener("click", () => {
    snapA = store.snapshot();
    refreshCompare();
  });
  el<HTMLButtonElement>("snap-b").addEventListener("click", () => {
    snapB = store.snapshot();
    refreshCompare();
  });

  // ---------------------------------------------------------- render loop
  function syncLabels(): void {
    el<HTMLSpanElement>("mach-label").textContent = store.state.conditions.mach.toFixed(3);
    el<HTMLSpanElement>("aoa-label").textContent = store.state.conditions.aoa_deg.toFixed(2);
  }

  store.subscribe((state) => {
    el<HTMLDivElement>("status").textContent = state.pending ? "computing..." : "ready";
    el<HTMLDivElement>("errors").textContent = state.errors
      .map((e) => `${e.field}: ${e.message}`)
      .join("; ");
    if (!state.last_response) return;
    const view = buildResultView(state.last_response,
                                 SECTION_ETAS[state.selected_section]);
    paintContour(el<HTMLCanvasElement>("contour"), view.contour);
    paintSeries(el<HTMLCanvasElement>("section-cp"), view.sectionCp, "Cp", true);
    paintSeries(el<HTMLCanvasElement>("section-cf"), view.sectionCfTau, "Cf_tau");
    const r = coefficientReadout(state.last_response.coefficients[0]);
    el<HTMLDivElement>("readout").textContent =
      `CL ${r.cl}   CD ${r.cd}   CMz ${r.cmz}   (${view.timingMs.toFixed(0)} ms)`;
  });

  syncLabels();
  drawAirfoilEditor();
  store.requestPrediction(true);
}

boot().catch((err) => {
  document.body.insertAdjacentText("beforeend", `failed to start: ${err}`);
});
