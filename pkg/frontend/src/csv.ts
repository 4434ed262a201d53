/**
 * CSV + manifest reading for the spinorbit output files.
 *
 * The producer writes plain comma-separated numeric columns (no quoting),
 * with "NaN" marking failed cells; schemas are fixed per subcommand and
 * validated here so a wrong input file fails with the missing columns
 * spelled out.
 */
import { readFileSync, existsSync } from "fs";

export interface Table {
  columns: string[];
  /** numeric columns; string columns (e.g. `sign`) live in `strings` */
  values: Record<string, number[]>;
  strings: Record<string, string[]>;
  rows: number;
}

/** columns every figure kind requires, by producing subcommand */
export const SCHEMAS: Record<string, string[]> = {
  "freq-map": ["e", "eps", "omega_num", "sigma"],
  "nf-map": ["e", "eps", "omega_app"],
  "sigma-vs-t": ["T", "max_abs_sigma"],
  "constraint-map": ["p", "q", "k", "sign", "omega", "eps", "e"],
  "drift-table": ["e", "lbar", "nbar", "eta_exact", "eta_series"],
};

const STRING_COLUMNS = new Set(["sign"]);

export function parseCsv(text: string): Table {
  const lines = text.trim().split("\n");
  if (lines.length === 0 || lines[0] === "") {
    throw new Error("empty CSV");
  }
  const columns = lines[0].split(",");
  const values: Record<string, number[]> = {};
  const strings: Record<string, string[]> = {};
  for (const name of columns) {
    if (STRING_COLUMNS.has(name)) strings[name] = [];
    else values[name] = [];
  }
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new Error(`row has ${cells.length} cells, expected ${columns.length}: ${line}`);
    }
    columns.forEach((name, i) => {
      if (STRING_COLUMNS.has(name)) strings[name].push(cells[i]);
      else values[name].push(Number(cells[i]));
    });
  }
  return { columns, values, strings, rows: lines.length - 1 };
}

export function readTable(path: string, schema?: string): Table {
  const table = parseCsv(readFileSync(path, "utf8"));
  if (schema) {
    const required = SCHEMAS[schema];
    if (!required) throw new Error(`unknown schema '${schema}'`);
    const missing = required.filter((c) => !table.columns.includes(c));
    if (missing.length > 0) {
      throw new Error(
        `${path} does not match the '${schema}' schema: missing columns ${missing.join(", ")}`,
      );
    }
  }
  return table;
}

/** sibling manifest (<name>.manifest.json), or null when absent */
export function readManifest(csvPath: string): Record<string, unknown> | null {
  const manifestPath = csvPath.replace(/\.[^.\/]+$/, "") + ".manifest.json";
  if (!existsSync(manifestPath)) return null;
  return JSON.parse(readFileSync(manifestPath, "utf8"));
}

export function uniqueSorted(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}
