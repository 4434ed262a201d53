/**
 * Figure CLI: one figure specification per invocation.
 *
 *   node dist/main.js heatmap     --input fmap.csv --out fmap.png
 *                                 [--value-col omega_num] [--min v] [--max v]
 *   node dist/main.js sigma-curve --input a.csv,b.csv --out sig.png
 *   node dist/main.js contour     --input kam.csv --out kam.png
 *
 * Reads only the CSV and its sibling manifest; never recomputes dynamics.
 */
import { writeFileSync } from "fs";

import { readManifest, readTable } from "./csv";
import { renderContours } from "./contour";
import { renderHeatmap } from "./heatmap";
import { encodePng } from "./png";
import { Raster } from "./raster";
import { renderSigmaCurves } from "./sigmacurve";

export interface FigureSpec {
  kind: "heatmap" | "sigma-curve" | "contour";
  inputs: string[];
  output: string;
  valueColumn?: string;
  title?: string;
  min?: number;
  max?: number;
  width?: number;
  height?: number;
}

export function parseArgs(argv: string[]): FigureSpec {
  const kind = argv[0];
  if (kind !== "heatmap" && kind !== "sigma-curve" && kind !== "contour") {
    throw new Error(
      `usage: <heatmap|sigma-curve|contour> --input csv[,csv...] --out file.png ` +
      `[--value-col name] [--title text] [--min v] [--max v] [--width px] [--height px]`,
    );
  }
  const flags = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--") || i + 1 >= argv.length) {
      throw new Error(`malformed flag: ${argv[i]}`);
    }
    flags.set(argv[i].slice(2), argv[i + 1]);
  }
  const input = flags.get("input");
  const output = flags.get("out");
  if (!input || !output) throw new Error("--input and --out are required");
  const numeric = (name: string) => {
    const raw = flags.get(name);
    return raw === undefined ? undefined : Number(raw);
  };
  return {
    kind,
    inputs: input.split(","),
    output,
    valueColumn: flags.get("value-col"),
    title: flags.get("title"),
    min: numeric("min"),
    max: numeric("max"),
    width: numeric("width"),
    height: numeric("height"),
  };
}

export function render(spec: FigureSpec): Raster {
  switch (spec.kind) {
    case "heatmap": {
      if (spec.inputs.length !== 1) throw new Error("heatmap takes exactly one input CSV");
      // accept either producing schema; pick the value column accordingly
      const table = readTable(spec.inputs[0]);
      const valueColumn =
        spec.valueColumn ?? ("omega_num" in table.values ? "omega_num" : "omega_app");
      const schema = valueColumn === "omega_num" ? "freq-map" : "nf-map";
      readTable(spec.inputs[0], schema);
      return renderHeatmap(table, {
        valueColumn,
        title: spec.title,
        min: spec.min,
        max: spec.max,
        width: spec.width,
        height: spec.height,
      });
    }
    case "sigma-curve": {
      const inputs = spec.inputs.map((path) => {
        const table = readTable(path, "sigma-vs-t");
        const manifest = readManifest(path);
        const mu = (manifest?.params as Record<string, unknown> | undefined)?.mu;
        return { table, label: mu !== undefined ? `mu=${mu}` : path };
      });
      return renderSigmaCurves(inputs, {
        title: spec.title,
        width: spec.width,
        height: spec.height,
      });
    }
    case "contour": {
      if (spec.inputs.length !== 1) throw new Error("contour takes exactly one input CSV");
      const table = readTable(spec.inputs[0], "constraint-map");
      return renderContours(table, {
        title: spec.title,
        width: spec.width,
        height: spec.height,
      }).raster;
    }
  }
}

export function main(argv: string[]): number {
  let spec: FigureSpec;
  try {
    spec = parseArgs(argv);
  } catch (error) {
    console.error((error as Error).message);
    return 2;
  }
  try {
    const raster = render(spec);
    writeFileSync(spec.output, encodePng(raster.width, raster.height, raster.data));
    console.log(`wrote ${spec.output} (${raster.width}x${raster.height})`);
    return 0;
  } catch (error) {
    console.error((error as Error).message);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
