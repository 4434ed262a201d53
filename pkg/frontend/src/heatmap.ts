/**
 * (e, eps) heat map from a freq-map or nf-map table: one filled cell per
 * grid point, NaN cells left white, plus a labeled color bar.
 */
import { colorFor } from "./colormap";
import { Table, uniqueSorted } from "./csv";
import { Frame } from "./frame";
import { BLACK, formatTick, niceTicks, Raster } from "./raster";

export interface HeatmapOptions {
  valueColumn: string;
  title?: string;
  min?: number;
  max?: number;
  width?: number;
  height?: number;
}

export function renderHeatmap(table: Table, options: HeatmapOptions): Raster {
  const { valueColumn } = options;
  if (!(valueColumn in table.values)) {
    throw new Error(`value column '${valueColumn}' not in table`);
  }
  const es = table.values.e;
  const epss = table.values.eps;
  const values = table.values[valueColumn];
  const eGrid = uniqueSorted(es);
  const epsGrid = uniqueSorted(epss);

  const finite = values.filter((v) => !Number.isNaN(v));
  if (finite.length === 0) throw new Error("no finite cells to plot");
  const lo = options.min ?? Math.min(...finite);
  const hi = options.max ?? Math.max(...finite);

  const width = options.width ?? 560;
  const height = options.height ?? 420;
  const colorbarWidth = 74;
  // cell edges halfway between grid values, clamped at the data range
  const eEdges = edges(eGrid);
  const epsEdges = edges(epsGrid);
  const frame = new Frame(eEdges[0], eEdges[eGrid.length], epsEdges[0], epsEdges[epsGrid.length], {
    width,
    height,
    xLabel: "e",
    yLabel: "eps",
    title: options.title ?? valueColumn,
  }, colorbarWidth + 18);

  const eIndex = new Map(eGrid.map((v, i) => [v, i]));
  const epsIndex = new Map(epsGrid.map((v, i) => [v, i]));
  for (let row = 0; row < table.rows; row++) {
    const i = eIndex.get(es[row])!;
    const j = epsIndex.get(epss[row])!;
    const xLeft = frame.px(eEdges[i]);
    const xRight = frame.px(eEdges[i + 1]);
    const yTop = frame.py(epsEdges[j + 1]);
    const yBottom = frame.py(epsEdges[j]);
    frame.raster.fillRect(
      Math.floor(xLeft), Math.floor(yTop),
      Math.ceil(xRight - xLeft) + 1, Math.ceil(yBottom - yTop) + 1,
      colorFor(values[row], lo, hi),
    );
  }

  drawColorbar(frame.raster, width - colorbarWidth - 8, frame.top, 14,
               frame.bottom - frame.top, lo, hi);
  return frame.raster;
}

function edges(grid: number[]): number[] {
  if (grid.length === 1) return [grid[0] - 0.5, grid[0] + 0.5];
  const result = [grid[0] - (grid[1] - grid[0]) / 2];
  for (let i = 0; i < grid.length - 1; i++) {
    result.push((grid[i] + grid[i + 1]) / 2);
  }
  result.push(grid[grid.length - 1] + (grid[grid.length - 1] - grid[grid.length - 2]) / 2);
  return result;
}

function drawColorbar(raster: Raster, x: number, y: number, w: number, h: number,
                      lo: number, hi: number): void {
  for (let row = 0; row < h; row++) {
    const value = hi - ((hi - lo) * row) / (h - 1);
    const color = colorFor(value, lo, hi);
    raster.fillRect(x, y + row, w, 1, color);
  }
  raster.line(x, y, x, y + h, BLACK);
  raster.line(x + w, y, x + w, y + h, BLACK);
  raster.line(x, y, x + w, y, BLACK);
  raster.line(x, y + h, x + w, y + h, BLACK);
  for (const tick of niceTicks(lo, hi, 5)) {
    if (tick < lo - 1e-12 || tick > hi + 1e-12) continue;
    const ty = y + h - ((tick - lo) / (hi - lo)) * h;
    raster.line(x + w, ty, x + w + 3, ty, BLACK);
    raster.text(x + w + 5, ty - 3, formatTick(tick));
  }
}
