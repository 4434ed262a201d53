/**
 * Log-log decay curves of max|sigma| versus integration time T, one curve
 * per input CSV (e.g. one per dissipation strength), labeled from the
 * sibling manifest when available.
 */
import { SERIES_COLORS } from "./colormap";
import { Table } from "./csv";
import { Frame } from "./frame";
import { Raster } from "./raster";
import { textWidth } from "./font";

export interface SigmaCurveInput {
  table: Table;
  label: string;
}

export interface SigmaCurveOptions {
  title?: string;
  width?: number;
  height?: number;
}

export function renderSigmaCurves(inputs: SigmaCurveInput[], options: SigmaCurveOptions = {}): Raster {
  if (inputs.length === 0) throw new Error("no input tables");
  const points = inputs.map(({ table }) => {
    const T = table.values.T;
    const sigma = table.values.max_abs_sigma;
    const pairs = T.map((t, i) => [Math.log10(t), Math.log10(sigma[i])] as [number, number])
      .filter(([lt, ls]) => Number.isFinite(lt) && Number.isFinite(ls));
    if (pairs.length === 0) throw new Error("curve has no finite points");
    return pairs;
  });

  const xs = points.flat().map(([x]) => x);
  const ys = points.flat().map(([, y]) => y);
  const pad = 0.3;
  const frame = new Frame(
    Math.floor(Math.min(...xs)), Math.ceil(Math.max(...xs)),
    Math.floor(Math.min(...ys)) - pad, Math.ceil(Math.max(...ys)) + pad,
    {
      width: options.width ?? 560,
      height: options.height ?? 420,
      xLabel: "T",
      yLabel: "max|sigma|",
      title: options.title ?? "max|sigma| vs T",
      xTicks: integerRange(Math.floor(Math.min(...xs)), Math.ceil(Math.max(...xs))),
      yTicks: integerRange(Math.floor(Math.min(...ys)) - 1, Math.ceil(Math.max(...ys)) + 1),
      xTickText: (v) => `1e${v}`,
      yTickText: (v) => `1e${v}`,
    },
  );

  points.forEach((pairs, index) => {
    const color = SERIES_COLORS[index % SERIES_COLORS.length];
    for (let i = 0; i + 1 < pairs.length; i++) {
      frame.raster.line(
        frame.px(pairs[i][0]), frame.py(pairs[i][1]),
        frame.px(pairs[i + 1][0]), frame.py(pairs[i + 1][1]), color,
      );
    }
    for (const [x, y] of pairs) {
      frame.raster.fillRect(frame.px(x) - 1, frame.py(y) - 1, 3, 3, color);
    }
    const label = inputs[index].label;
    const lx = frame.right - textWidth(label) - 6;
    const ly = frame.top + 8 + 12 * index;
    frame.raster.fillRect(lx - 12, ly + 2, 8, 2, color);
    frame.raster.text(lx, ly, label);
  });
  return frame.raster;
}

function integerRange(lo: number, hi: number): number[] {
  const result = [];
  for (let v = lo; v <= hi; v++) result.push(v);
  return result;
}
