/**
 * CSV interchange schema of the simulator's result tables.
 *
 * The header line doubles as the schema version: a file whose header differs
 * from EXPECTED_HEADER is refused outright rather than guessed at.
 */

export const CSV_COLUMNS = [
  "axis",
  "axis_value",
  "variant",
  "strategy",
  "model",
  "bits",
  "gamma",
  "mu",
  "rho",
  "mean_cs",
  "ci_low",
  "ci_high",
  "sop",
  "intercept",
  "spsc",
  "coverage",
  "see",
  "prenull_failures",
  "prenull_leakage",
  "trials",
  "seed",
] as const;

export const EXPECTED_HEADER = CSV_COLUMNS.join(",");

export interface ResultRow {
  axis: string;
  axisValue: number;
  variant: string;
  strategy: string;
  model: string;
  /** Quantization bits; null means continuous phases ("inf" in the file). */
  bits: number | null;
  gamma: number;
  mu: number | null;
  rho: number | null;
  meanCs: number;
  ciLow: number;
  ciHigh: number;
  sop: number;
  intercept: number;
  spsc: number;
  coverage: number;
  see: number;
  prenullFailures: number;
  prenullLeakage: number | null;
  trials: number;
  seed: number;
}

export class SchemaError extends Error {}

function requiredNumber(raw: string, column: string, line: number): number {
  const value = Number(raw);
  if (raw === "" || !Number.isFinite(value)) {
    throw new SchemaError(`line ${line}: column '${column}' is not a number (got '${raw}')`);
  }
  return value;
}

function optionalNumber(raw: string, column: string, line: number): number | null {
  return raw === "" ? null : requiredNumber(raw, column, line);
}

/** Parse one result CSV, refusing anything whose header is not the known schema. */
export function parseResultCsv(text: string): ResultRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty file");
  }
  if (lines[0] !== EXPECTED_HEADER) {
    throw new SchemaError(
      `CSV header does not match the expected result schema; got '${lines[0]}'`,
    );
  }
  if (lines.length === 1) {
    throw new SchemaError("no data rows");
  }
  const rows: ResultRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== CSV_COLUMNS.length) {
      throw new SchemaError(`line ${i + 1}: expected ${CSV_COLUMNS.length} cells, got ${cells.length}`);
    }
    const n = i + 1;
    rows.push({
      axis: cells[0],
      axisValue: requiredNumber(cells[1], "axis_value", n),
      variant: cells[2],
      strategy: cells[3],
      model: cells[4],
      bits: cells[5] === "inf" ? null : requiredNumber(cells[5], "bits", n),
      gamma: requiredNumber(cells[6], "gamma", n),
      mu: optionalNumber(cells[7], "mu", n),
      rho: optionalNumber(cells[8], "rho", n),
      meanCs: requiredNumber(cells[9], "mean_cs", n),
      ciLow: requiredNumber(cells[10], "ci_low", n),
      ciHigh: requiredNumber(cells[11], "ci_high", n),
      sop: requiredNumber(cells[12], "sop", n),
      intercept: requiredNumber(cells[13], "intercept", n),
      spsc: requiredNumber(cells[14], "spsc", n),
      coverage: requiredNumber(cells[15], "coverage", n),
      see: requiredNumber(cells[16], "see", n),
      prenullFailures: requiredNumber(cells[17], "prenull_failures", n),
      prenullLeakage: optionalNumber(cells[18], "prenull_leakage", n),
      trials: requiredNumber(cells[19], "trials", n),
      seed: requiredNumber(cells[20], "seed", n),
    });
  }
  return rows;
}
