/** Diverging blue-white-red map over a fixed Cp range.
 *
 * The scale is shared across every update so colors stay comparable while
 * the user drags controls.
 */

export const CP_MIN = -2.0;
export const CP_MAX = 1.0;

const STOPS: Array<[number, [number, number, number]]> = [
  [0.0, [5, 48, 97]],
  [0.25, [67, 147, 195]],
  [0.5, [247, 247, 247]],
  [0.75, [214, 96, 77]],
  [1.0, [103, 0, 31]],
];

export function cpToColor(cp: number): [number, number, number] {
  const t = Math.min(1, Math.max(0, (cp - CP_MIN) / (CP_MAX - CP_MIN)));
  for (let i = 1; i < STOPS.length; i++) {
    if (t <= STOPS[i][0]) {
      const [t0, c0] = STOPS[i - 1];
      const [t1, c1] = STOPS[i];
      const f = (t - t0) / (t1 - t0);
      return [
        Math.round(c0[0] + f * (c1[0] - c0[0])),
        Math.round(c0[1] + f * (c1[1] - c0[1])),
        Math.round(c0[2] + f * (c1[2] - c0[2])),
      ];
    }
  }
  return STOPS[STOPS.length - 1][1];
}

export function cpToCss(cp: number): string {
  const [r, g, b] = cpToColor(cp);
  return `rgb(${r},${g},${b})`;
}
