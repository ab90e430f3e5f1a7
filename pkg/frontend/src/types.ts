/** JSON mirrors of the server's geometry and prediction schemas. */

export interface PlanformJson {
  sweep_le: number;
  aspect_ratio: number;
  taper_ratio: number;
  kink_eta: number;
  root_adjust: number;
}

export interface SpanwiseJson {
  control_etas: number[];
  control_values: number[];
  kind: "bspline5" | "linear7";
}

export interface AirfoilJson {
  upper: number[];
  lower: number[];
  te_thickness: number;
}

export interface SectionJson {
  eta: number;
  airfoil: AirfoilJson;
}

export interface WingShapeJson {
  planform: PlanformJson;
  thickness_dist: SpanwiseJson;
  camber_dist: SpanwiseJson;
  dihedral_dist: SpanwiseJson;
  twist_dist: SpanwiseJson;
  section_airfoils: AirfoilJson | SectionJson[];
}

export interface Condition {
  mach: number;
  aoa_deg: number;
}

export interface FieldPayload {
  cp: string;
  cf_tau: string;
  cf_z: string;
}

export interface Coefficients {
  cl: number;
  cd: number;
  cmz: number;
}

export interface PredictResponse {
  mesh_shape: number[]; // [3, H, W]
  mesh: string;         // base64 f32 little-endian
  fields: FieldPayload[];
  coefficients: Coefficients[];
  timing_ms: number;
}

export interface DefaultsResponse {
  geometry: WingShapeJson;
  conditions: Condition[];
}

export function hasControlSections(
  sections: WingShapeJson["section_airfoils"],
): sections is SectionJson[] {
  return Array.isArray(sections);
}
