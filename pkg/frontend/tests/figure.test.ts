import { readFileSync } from "fs";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { groupRows, renderFigure } from "../src/figure.js";
import { parseResultCsv, SchemaError } from "../src/schema.js";

const FIXTURES = join(__dirname, "fixtures");

function rowsFrom(name: string) {
  return parseResultCsv(readFileSync(join(FIXTURES, name), "utf-8"));
}

describe("groupRows", () => {
  it("fig8a yields the 8-line legend structure (2 models x 4 bit levels)", () => {
    const groups = groupRows(rowsFrom("fig8a.csv"));
    expect(groups).toHaveLength(8);
    const labels = groups.map((g) => g.label).sort();
    expect(labels).toContain("ideal b=inf");
    expect(labels).toContain("practical b=3");
    for (const g of groups) {
      expect(g.points).toHaveLength(4);
    }
  });

  it("fig9a yields 8 curves over the placement grid", () => {
    const groups = groupRows(rowsFrom("fig9a.csv"));
    expect(groups).toHaveLength(8);
    for (const g of groups) {
      expect(g.points.map((p) => p.axisValue)).toEqual([5, 7, 9, 11, 13, 15, 17, 19]);
    }
  });

  it("fig10 yields 6 curves (3 mu x quantized/unquantized)", () => {
    expect(groupRows(rowsFrom("fig10.csv"))).toHaveLength(6);
  });

  it("sorts points by axis value within a group", () => {
    const rows = rowsFrom("fig8a.csv").reverse();
    for (const g of groupRows(rows)) {
      const xs = g.points.map((p) => p.axisValue);
      expect(xs).toEqual([...xs].sort((a, b) => a - b));
    }
  });
});

describe("renderFigure", () => {
  it("renders fig8a with one polyline and one band per group", () => {
    const svg = renderFigure({ kind: "vs_n", rows: rowsFrom("fig8a.csv") });
    expect((svg.match(/<polyline /g) ?? []).length).toBe(8);
    expect((svg.match(/<polygon /g) ?? []).length).toBe(8);
    expect(svg).toContain("number of RIS elements (elements)");
    expect(svg).toContain("secrecy rate (bits/s/Hz)");
  });

  it("renders fig9a and fig10 without error", () => {
    expect(renderFigure({ kind: "vs_placement", rows: rowsFrom("fig9a.csv") })).toContain("</svg>");
    expect(renderFigure({ kind: "vs_rho", rows: rowsFrom("fig10.csv") })).toContain("</svg>");
  });

  it("single-row input renders one marker and no band", () => {
    const svg = renderFigure({ kind: "vs_n", rows: rowsFrom("single_row.csv") });
    expect((svg.match(/<circle /g) ?? []).length).toBe(1);
    expect(svg).not.toContain("<polygon ");
    expect(svg).not.toContain("<polyline ");
  });

  it("re-rendering the same input is byte-identical", () => {
    const rows = rowsFrom("fig8a.csv");
    const a = renderFigure({ kind: "vs_n", rows });
    const b = renderFigure({ kind: "vs_n", rows: rowsFrom("fig8a.csv") });
    expect(a).toBe(b);
  });

  it("refuses an axis/kind mismatch", () => {
    expect(() => renderFigure({ kind: "vs_rho", rows: rowsFrom("fig8a.csv") })).toThrow(SchemaError);
    expect(() => renderFigure({ kind: "vs_rho", rows: rowsFrom("fig8a.csv") })).toThrow(/axis/);
  });

  it("never recomputes statistics: plotted y positions come from the CSV only", () => {
    // Doubling mean_cs in the input must move the curve, proving the figure
    // is a pure view of the file contents.
    const rows = rowsFrom("single_row.csv");
    const doubled = rows.map((r) => ({ ...r, meanCs: r.meanCs * 2, ciHigh: r.ciHigh * 2 }));
    expect(renderFigure({ kind: "vs_n", rows })).not.toBe(renderFigure({ kind: "vs_n", rows: doubled }));
  });

  it("assigns legend colors by sorted group key", () => {
    const svg = renderFigure({ kind: "vs_n", rows: rowsFrom("fig8a.csv") });
    const legendOrder = [...svg.matchAll(/font-size="12" fill="#222222">([^<]+)</g)].map((m) => m[1]);
    expect(legendOrder).toEqual([...legendOrder].sort());
  });
});
