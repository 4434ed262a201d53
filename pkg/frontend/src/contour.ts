/**
 * Constraint contours: the (e, eps) zero-level points of C for each
 * resonance approximant, with dashed vertical reference lines at the
 * eccentricities solving eta(e) = p/q.
 */
import { SERIES_COLORS } from "./colormap";
import { Table } from "./csv";
import { eccentricityForDrift } from "./drift";
import { Frame } from "./frame";
import { GREY, Raster } from "./raster";
import { textWidth } from "./font";

export interface ContourOptions {
  title?: string;
  width?: number;
  height?: number;
}

export interface ContourRender {
  raster: Raster;
  /** pixel x of each dashed eta(e) = p/q reference line */
  dashedAt: number[];
}

export function renderContours(table: Table, options: ContourOptions = {}): ContourRender {
  const rows = table.rows;
  const finite: number[] = [];
  for (let i = 0; i < rows; i++) {
    if (!Number.isNaN(table.values.e[i])) finite.push(i);
  }
  if (finite.length === 0) throw new Error("no contour points to plot");

  const es = finite.map((i) => table.values.e[i]);
  const epss = finite.map((i) => table.values.eps[i]);
  const eSpan = Math.max(...es) - Math.min(...es);
  const ePad = eSpan > 0 ? 0.15 * eSpan : 0.01;
  const epsMax = Math.max(...epss);

  const frame = new Frame(
    Math.min(...es) - ePad, Math.max(...es) + ePad,
    0, epsMax > 0 ? epsMax * 1.05 : 1e-3,
    {
      width: options.width ?? 560,
      height: options.height ?? 420,
      xLabel: "e",
      yLabel: "eps",
      title: options.title ?? "C = 0 contours",
    },
  );

  // one color per (k, sign) family so the approximant lines are separable
  const familyIds: string[] = [];
  const familyOf = (i: number) =>
    `${table.values.k[i]}:${table.strings.sign?.[i] ?? ""}`;
  for (const i of finite) {
    const id = familyOf(i);
    if (!familyIds.includes(id)) familyIds.push(id);
  }
  for (const i of finite) {
    const color = SERIES_COLORS[familyIds.indexOf(familyOf(i)) % SERIES_COLORS.length];
    const x = frame.px(table.values.e[i]);
    const y = frame.py(table.values.eps[i]);
    frame.raster.fillRect(x - 1, y - 1, 3, 3, color);
  }

  // dashed exact-resonance reference per distinct p/q in the file
  const targets = new Set<number>();
  for (const i of finite) {
    targets.add(table.values.p[i] / table.values.q[i]);
  }
  const dashedAt: number[] = [];
  for (const target of [...targets].sort()) {
    const eStar = eccentricityForDrift(target);
    if (eStar === null || eStar < frame.x0 || eStar > frame.x1) continue;
    const x = Math.round(frame.px(eStar));
    frame.raster.line(x, frame.top, x, frame.bottom, GREY, [4, 4]);
    const label = `eta=${formatRatio(target)}`;
    frame.raster.text(
      Math.min(x + 4, frame.raster.width - textWidth(label) - 2), frame.top + 4, label,
    );
    dashedAt.push(x);
  }
  return { raster: frame.raster, dashedAt };
}

function formatRatio(value: number): string {
  for (const [p, q] of [[1, 1], [3, 2], [4, 3], [2, 1], [5, 4], [5, 3]]) {
    if (Math.abs(value - p / q) < 1e-9) return `${p}/${q}`;
  }
  return value.toPrecision(4);
}
