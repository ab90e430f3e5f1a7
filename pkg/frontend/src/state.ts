/** UI state container: geometry edits, prediction lifecycle, comparisons. */

import { decodeF32 } from "./codec.js";
import { PredictClient, PredictOutcome } from "./requests.js";
import {
  Coefficients,
  Condition,
  PredictResponse,
  SectionJson,
  WingShapeJson,
  hasControlSections,
} from "./types.js";
import {
  EDIT_RANGES,
  Violation,
  clamp,
  cstBox,
  validateCondition,
  validateGeometry,
} from "./validate.js";

export interface UiState {
  geometry: WingShapeJson;
  selected_section: number; // 0..6
  conditions: Condition;
  last_response: PredictResponse | null;
  pending: boolean;
  errors: Violation[];
}

export interface Snapshot {
  geometry: WingShapeJson;
  conditions: Condition;
  response: PredictResponse;
}

export interface CompareResult {
  d_cl: number;
  d_cd: number;
  d_cmz: number;
  /** Cp difference (a - b) along the selected section, when shapes match. */
  section_dcp: Float32Array | null;
}

type Listener = (state: UiState) => void;

export class AppStore {
  state: UiState;
  private baselineSections: SectionJson[];
  private baselineDihedral: number[];
  private listeners: Listener[] = [];

  constructor(
    geometry: WingShapeJson,
    conditions: Condition,
    private readonly client: PredictClient,
  ) {
    this.state = {
      geometry: structuredClone(geometry),
      selected_section: 3,
      conditions: { ...conditions },
      last_response: null,
      pending: false,
      errors: [],
    };
    this.baselineSections = hasControlSections(geometry.section_airfoils)
      ? structuredClone(geometry.section_airfoils)
      : [];
    this.baselineDihedral = [...geometry.dihedral_dist.control_values];
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  // ------------------------------------------------------------ edits

  editPlanform(field: keyof typeof EDIT_RANGES, value: number): void {
    const range = EDIT_RANGES[field];
    (this.state.geometry.planform as unknown as Record<string, number>)[field] = clamp(
      value,
      range,
    );
    this.requestPrediction();
  }

  /** Drag one CST coefficient; values clamp to +-40% of the baseline. */
  editCstCoefficient(
    section: number,
    surface: "upper" | "lower",
    index: number,
    value: number,
  ): void {
    const sections = this.state.geometry.section_airfoils;
    if (!hasControlSections(sections)) return;
    const baseline = this.baselineSections[section].airfoil[surface][index];
    sections[section].airfoil[surface][index] = clamp(value, cstBox(baseline));
    this.requestPrediction();
  }

  editTwist(sectionIndex: number, valueDeg: number): void {
    this.state.geometry.twist_dist.control_values[sectionIndex] = clamp(
      valueDeg,
      EDIT_RANGES.twist_deg,
    );
    this.requestPrediction();
  }

  editDihedral(sectionIndex: number, value: number, cRoot: number): void {
    if (sectionIndex === 0) return; // root stays put
    const base = this.baselineDihedral[sectionIndex];
    this.state.geometry.dihedral_dist.control_values[sectionIndex] = clamp(value, {
      min: base - 0.05 * cRoot,
      max: base + 0.05 * cRoot,
    });
    this.requestPrediction();
  }

  setCondition(field: keyof Condition, value: number, immediate = false): void {
    this.state.conditions[field] = clamp(value, EDIT_RANGES[field]);
    this.requestPrediction(immediate);
  }

  selectSection(index: number): void {
    this.state.selected_section = Math.max(0, Math.min(6, Math.round(index)));
    this.emit();
  }

  /** Replace the whole geometry (upload path); invalid input never leaves
   * the client. */
  loadGeometry(geometry: WingShapeJson, immediate = true): boolean {
    const errors = validateGeometry(geometry);
    if (errors.length) {
      this.state.errors = errors;
      this.emit();
      return false;
    }
    this.state.geometry = structuredClone(geometry);
    if (hasControlSections(geometry.section_airfoils)) {
      this.baselineSections = structuredClone(geometry.section_airfoils);
    }
    this.baselineDihedral = [...geometry.dihedral_dist.control_values];
    this.requestPrediction(immediate);
    return true;
  }

  // ------------------------------------------------------------ predict

  requestPrediction(immediate = false): void {
    const errors = [
      ...validateGeometry(this.state.geometry),
      ...validateCondition(this.state.conditions),
    ];
    this.state.errors = errors;
    if (errors.length) {
      this.emit();
      return; // client validation failed: nothing is sent
    }
    this.state.pending = true;
    this.emit();
    this.client.request(
      structuredClone(this.state.geometry),
      [{ ...this.state.conditions }],
      (outcome) => this.onSettled(outcome),
      immediate,
    );
  }

  private onSettled(outcome: PredictOutcome): void {
    if (outcome.response === null) {
      if (outcome.status !== undefined) {
        this.state.pending = false;
        this.state.errors = [{ field: "server", message: `HTTP ${outcome.status}` }];
        this.emit();
      }
      return; // superseded response: keep the newer state
    }
    this.state.last_response = outcome.response;
    this.state.pending = false;
    this.state.errors = [];
    this.emit();
  }

  snapshot(): Snapshot | null {
    if (!this.state.last_response) return null;
    return {
      geometry: structuredClone(this.state.geometry),
      conditions: { ...this.state.conditions },
      response: this.state.last_response,
    };
  }
}

// ------------------------------------------------------------ compare

export function scenarioCompare(
  a: Snapshot,
  b: Snapshot,
  sectionEta = 0.5,
): CompareResult {
  const ca = a.response.coefficients[0];
  const cb = b.response.coefficients[0];
  const result: CompareResult = {
    d_cl: ca.cl - cb.cl,
    d_cd: ca.cd - cb.cd,
    d_cmz: ca.cmz - cb.cmz,
    section_dcp: null,
  };
  const shapeA = a.response.mesh_shape;
  const shapeB = b.response.mesh_shape;
  if (shapeA.length === 3 && shapeA.every((v, i) => v === shapeB[i])) {
    const [, h, w] = shapeA;
    const j = Math.min(w - 1, Math.floor(sectionEta * w));
    const cpA = decodeF32(a.response.fields[0].cp, h * w);
    const cpB = decodeF32(b.response.fields[0].cp, h * w);
    const diff = new Float32Array(h);
    for (let i = 0; i < h; i++) diff[i] = cpA[i * w + j] - cpB[i * w + j];
    result.section_dcp = diff;
  }
  return result;
}

export function formatCoefficient(value: number): string {
  return value.toPrecision(4);
}

export function coefficientReadout(c: Coefficients): Record<string, string> {
  return {
    cl: formatCoefficient(c.cl),
    cd: formatCoefficient(c.cd),
    cmz: formatCoefficient(c.cmz),
  };
}
