import { describe, expect, it } from "vitest";

import { Grid, decodeF32, encodeF32 } from "../src/codec.js";

// Fixture produced by the server-side encoder (numpy '<f4' + base64):
// [1.0, -2.5, 0.15625, 3.4028235e38]
const SHARED_FIXTURE = "AACAPwAAIMAAACA+//9/fw==";

describe("f32 codec", () => {
  it("decodes the shared little-endian fixture", () => {
    const values = decodeF32(SHARED_FIXTURE, 4);
    expect(values[0]).toBe(1.0);
    expect(values[1]).toBe(-2.5);
    expect(values[2]).toBe(0.15625);
    expect(values[3]).toBeCloseTo(3.4028235e38, -31);
  });

  it("round-trips through encode", () => {
    const values = Float32Array.from([0.5, -1.25, 1e-7, 42.0]);
    const decoded = decodeF32(encodeF32(values), 4);
    expect([...decoded]).toEqual([...values]);
  });

  it("re-encodes the fixture to identical base64", () => {
    expect(encodeF32(decodeF32(SHARED_FIXTURE, 4))).toBe(SHARED_FIXTURE);
  });

  it("rejects wrong payload sizes", () => {
    expect(() => decodeF32(SHARED_FIXTURE, 5)).toThrow(/expected 5/);
  });
});

describe("grid accessor", () => {
  it("extracts the spanwise column at floor(eta * W)", () => {
    // 3x4 grid, value = 10 * i + j
    const data = Float32Array.from(
      Array.from({ length: 12 }, (_, k) => 10 * Math.floor(k / 4) + (k % 4)),
    );
    const grid = new Grid(data, 3, 4);
    expect([...grid.column(0.5)]).toEqual([2, 12, 22]); // floor(0.5 * 4) = 2
    expect([...grid.column(0.0)]).toEqual([0, 10, 20]);
    expect([...grid.column(1.0)]).toEqual([3, 13, 23]); // clamped to last
  });

  it("validates its shape", () => {
    expect(() => new Grid(new Float32Array(5), 2, 3)).toThrow();
  });
});
