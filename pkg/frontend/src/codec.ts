/** Base64 <-> little-endian f32 array codec for the field payloads. */

export function decodeF32(payload: string, expected: number): Float32Array {
  const binary = atob(payload);
  if (binary.length !== expected * 4) {
    throw new Error(`payload has ${binary.length / 4} floats, expected ${expected}`);
  }
  const bytes = new Uint8Array(binary.length);
  for (let i = 0; i < binary.length; i++) bytes[i] = binary.charCodeAt(i);
  // File and wire format are little-endian; DataView reads explicitly.
  const view = new DataView(bytes.buffer);
  const out = new Float32Array(expected);
  for (let i = 0; i < expected; i++) out[i] = view.getFloat32(i * 4, true);
  return out;
}

export function encodeF32(values: Float32Array | number[]): string {
  const arr = values instanceof Float32Array ? values : Float32Array.from(values);
  const bytes = new Uint8Array(arr.length * 4);
  const view = new DataView(bytes.buffer);
  for (let i = 0; i < arr.length; i++) view.setFloat32(i * 4, arr[i], true);
  let binary = "";
  for (let i = 0; i < bytes.length; i++) binary += String.fromCharCode(bytes[i]);
  return btoa(binary);
}

/** Row-major [H, W] accessor over a flat field array. */
export class Grid {
  constructor(
    readonly data: Float32Array,
    readonly h: number,
    readonly w: number,
  ) {
    if (data.length !== h * w) throw new Error(`grid ${h}x${w} != ${data.length}`);
  }

  at(i: number, j: number): number {
    return this.data[i * this.w + j];
  }

  /** Spanwise column at the given span fraction (column floor(eta * W)). */
  column(eta: number): Float32Array {
    const j = Math.min(this.w - 1, Math.max(0, Math.floor(eta * this.w)));
    const out = new Float32Array(this.h);
    for (let i = 0; i < this.h; i++) out[i] = this.at(i, j);
    return out;
  }
}
