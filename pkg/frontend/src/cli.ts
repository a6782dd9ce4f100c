/**
 * render --kind vs_n|vs_placement|vs_rho --in results.csv [--in more.csv] --out figure.svg
 *
 * Exit codes: 0 ok, 1 bad arguments or refused input, 2 I/O failure.
 */

import { readFileSync, writeFileSync } from "fs";

import { FigureKind, renderFigure } from "./figure.js";
import { parseResultCsv, ResultRow, SchemaError } from "./schema.js";

const USAGE = "usage: ris-secrecy-figures render --kind vs_n|vs_placement|vs_rho --in <csv> [--in <csv>...] --out <svg>";

interface Args {
  kind: FigureKind;
  inputs: string[];
  output: string;
}

function parseArgs(argv: string[]): Args {
  if (argv[0] !== "render") {
    throw new SchemaError(USAGE);
  }
  let kind: string | undefined;
  const inputs: string[] = [];
  let output: string | undefined;
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) {
      throw new SchemaError(`missing value for ${flag}\n${USAGE}`);
    }
    if (flag === "--kind") kind = value;
    else if (flag === "--in") inputs.push(value);
    else if (flag === "--out") output = value;
    else throw new SchemaError(`unknown flag ${flag}\n${USAGE}`);
  }
  if (kind !== "vs_n" && kind !== "vs_placement" && kind !== "vs_rho") {
    throw new SchemaError(`--kind must be vs_n, vs_placement or vs_rho\n${USAGE}`);
  }
  if (inputs.length === 0 || output === undefined) {
    throw new SchemaError(USAGE);
  }
  return { kind, inputs, output };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    console.error((e as Error).message);
    return 1;
  }
  const rows: ResultRow[] = [];
  for (const path of args.inputs) {
    let text: string;
    try {
      text = readFileSync(path, "utf-8");
    } catch (e) {
      console.error(`cannot read ${path}: ${(e as Error).message}`);
      return 2;
    }
    try {
      rows.push(...parseResultCsv(text));
    } catch (e) {
      console.error(`${path}: ${(e as Error).message}`);
      return 1;
    }
  }
  let svg: string;
  try {
    svg = renderFigure({ kind: args.kind, rows });
  } catch (e) {
    console.error((e as Error).message);
    return 1;
  }
  try {
    writeFileSync(args.output, svg, "utf-8");
  } catch (e) {
    console.error(`cannot write ${args.output}: ${(e as Error).message}`);
    return 2;
  }
  console.log(`wrote ${args.output}`);
  return 0;
}

