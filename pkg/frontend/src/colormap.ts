/** Viridis-style colormap (9 anchors, linearly interpolated); NaN -> white. */
import { Color, WHITE } from "./raster";

const ANCHORS: [number, Color][] = [
  [0.0, [68, 1, 84]],
  [0.125, [72, 40, 120]],
  [0.25, [62, 74, 137]],
  [0.375, [49, 104, 142]],
  [0.5, [38, 130, 142]],
  [0.625, [31, 158, 137]],
  [0.75, [53, 183, 121]],
  [0.875, [109, 205, 89]],
  [1.0, [253, 231, 37]],
];

export function colorFor(value: number, lo: number, hi: number): Color {
  if (Number.isNaN(value)) return WHITE;
  let t = hi > lo ? (value - lo) / (hi - lo) : 0.5;
  t = Math.min(1, Math.max(0, t));
  for (let i = 1; i < ANCHORS.length; i++) {
    const [t1, c1] = ANCHORS[i];
    if (t <= t1) {
      const [t0, c0] = ANCHORS[i - 1];
      const f = (t - t0) / (t1 - t0);
      return [
        Math.round(c0[0] + f * (c1[0] - c0[0])),
        Math.round(c0[1] + f * (c1[1] - c0[1])),
        Math.round(c0[2] + f * (c1[2] - c0[2])),
      ];
    }
  }
  return ANCHORS[ANCHORS.length - 1][1];
}

/** distinguishable line colors for multi-curve plots */
export const SERIES_COLORS: Color[] = [
  [31, 119, 180],
  [214, 39, 40],
  [44, 160, 44],
  [255, 127, 14],
  [148, 103, 189],
  [140, 86, 75],
];
