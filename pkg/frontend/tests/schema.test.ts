import { readFileSync } from "fs";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { EXPECTED_HEADER, parseResultCsv, SchemaError } from "../src/schema.js";

const FIXTURES = join(__dirname, "fixtures");

function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

describe("parseResultCsv", () => {
  it("parses a real fig8a table", () => {
    const rows = parseResultCsv(fixture("fig8a.csv"));
    expect(rows).toHaveLength(32);
    expect(rows[0].axis).toBe("n_elements");
    expect(rows[0].strategy).toBe("matched");
    expect(rows.every((r) => r.ciLow <= r.meanCs && r.meanCs <= r.ciHigh)).toBe(true);
  });

  it("maps the inf bits marker to null", () => {
    const rows = parseResultCsv(fixture("fig8a.csv"));
    const bits = new Set(rows.map((r) => r.bits));
    expect(bits.has(null)).toBe(true);
    expect(bits.has(1)).toBe(true);
    expect(bits.has(3)).toBe(true);
  });

  it("keeps mu null outside AN runs and populated inside", () => {
    expect(parseResultCsv(fixture("fig8a.csv")).every((r) => r.mu === null)).toBe(true);
    const an = parseResultCsv(fixture("fig10.csv"));
    expect(new Set(an.map((r) => r.mu))).toEqual(new Set([0.3, 0.5, 0.7]));
  });

  it("refuses a header that does not match the schema", () => {
    const tampered = fixture("fig8a.csv").replace("mean_cs", "mean_sc");
    expect(() => parseResultCsv(tampered)).toThrow(SchemaError);
    expect(() => parseResultCsv(tampered)).toThrow(/header/);
  });

  it("refuses extra columns", () => {
    const tampered = fixture("fig8a.csv").replace(EXPECTED_HEADER, EXPECTED_HEADER + ",extra");
    expect(() => parseResultCsv(tampered)).toThrow(SchemaError);
  });

  it("refuses an empty table", () => {
    expect(() => parseResultCsv(EXPECTED_HEADER + "\n")).toThrow(/no data rows/);
    expect(() => parseResultCsv("")).toThrow(/empty/);
  });

  it("refuses a short row", () => {
    const text = fixture("single_row.csv");
    const lines = text.trimEnd().split("\n");
    const broken = [lines[0], lines[1].split(",").slice(0, 5).join(",")].join("\n");
    expect(() => parseResultCsv(broken)).toThrow(/cells/);
  });
});
