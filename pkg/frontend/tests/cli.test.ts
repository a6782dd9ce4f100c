import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { afterEach, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";

const FIXTURES = join(__dirname, "fixtures");

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "figures-"));
}

describe("cli", () => {
  afterEach(() => {
    vi.restoreAllMocks();
  });

  it("renders a fixture to SVG", () => {
    const out = join(tmp(), "fig8a.svg");
    const code = main(["render", "--kind", "vs_n", "--in", join(FIXTURES, "fig8a.csv"), "--out", out]);
    expect(code).toBe(0);
    const svg = readFileSync(out, "utf-8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("</svg>");
  });

  it("two renders of the same input produce identical bytes", () => {
    const dir = tmp();
    const a = join(dir, "a.svg");
    const b = join(dir, "b.svg");
    main(["render", "--kind", "vs_rho", "--in", join(FIXTURES, "fig10.csv"), "--out", a]);
    main(["render", "--kind", "vs_rho", "--in", join(FIXTURES, "fig10.csv"), "--out", b]);
    expect(readFileSync(a)).toEqual(readFileSync(b));
  });

  it("merges multiple input files sharing an axis", () => {
    const out = join(tmp(), "merged.svg");
    const fig9a = join(FIXTURES, "fig9a.csv");
    const code = main(["render", "--kind", "vs_placement", "--in", fig9a, "--in", fig9a, "--out", out]);
    expect(code).toBe(0);
  });

  it("rejects bad arguments with exit 1", () => {
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    expect(main(["render", "--kind", "vs_everything", "--in", "x", "--out", "y"])).toBe(1);
    expect(main(["plot"])).toBe(1);
    expect(err).toHaveBeenCalled();
  });

  it("missing input file is an I/O failure (exit 2)", () => {
    vi.spyOn(console, "error").mockImplementation(() => {});
    expect(main(["render", "--kind", "vs_n", "--in", "/nonexistent.csv", "--out", join(tmp(), "x.svg")])).toBe(2);
  });

  it("schema-mismatched input is refused (exit 1)", () => {
    vi.spyOn(console, "error").mockImplementation(() => {});
    const dir = tmp();
    const bad = join(dir, "bad.csv");
    const text = readFileSync(join(FIXTURES, "fig8a.csv"), "utf-8");
    writeFileSync(bad, text.replace("mean_cs", "mean"), "utf-8");
    expect(main(["render", "--kind", "vs_n", "--in", bad, "--out", join(dir, "x.svg")])).toBe(1);
  });
});
