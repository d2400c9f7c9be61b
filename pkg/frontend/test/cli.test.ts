import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

const here = fileURLToPath(new URL(".", import.meta.url));
const cliPath = join(here, "..", "dist", "cli.js");
const fixturePath = (name: string) => join(here, "..", "fixtures", name);

function runCli(args: string[]) {
  return spawnSync("node", [cliPath, ...args], { encoding: "utf8" });
}

describe("render cli", () => {
  it("renders all three figure kinds from real artifacts", () => {
    const dir = mkdtempSync(join(tmpdir(), "voiplots-"));
    for (const [kind, csv] of [
      ["heatmap", "phase_map.csv"],
      ["curves", "comparison.csv"],
      ["trace", "beta_trace.csv"],
    ] as const) {
      const out = join(dir, `${kind}.svg`);
      const result = runCli([kind, fixturePath(csv), out]);
      expect(result.status, result.stderr).toBe(0);
      const svg = readFileSync(out, "utf8");
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg).toContain("</svg>");
    }
  });

  it("is byte-deterministic across runs", () => {
    const dir = mkdtempSync(join(tmpdir(), "voiplots-"));
    const a = join(dir, "a.svg");
    const b = join(dir, "b.svg");
    expect(runCli(["trace", fixturePath("beta_trace.csv"), a]).status).toBe(0);
    expect(runCli(["trace", fixturePath("beta_trace.csv"), b]).status).toBe(0);
    expect(readFileSync(a)).toEqual(readFileSync(b));
  });

  it("reports schema mismatches with the offending column", () => {
    const dir = mkdtempSync(join(tmpdir(), "voiplots-"));
    const result = runCli(["curves", fixturePath("phase_map.csv"), join(dir, "x.svg")]);
    expect(result.status).toBe(1);
    expect(result.stderr).toContain("missing column: strategy");
  });

  it("reports empty inputs", () => {
    const dir = mkdtempSync(join(tmpdir(), "voiplots-"));
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "mu,sigma,best_beta_mse,best_beta_ll\n");
    const result = runCli(["heatmap", empty, join(dir, "x.svg")]);
    expect(result.status).toBe(1);
    expect(result.stderr).toContain("no data rows");
  });

  it("rejects unknown figure kinds and bad usage", () => {
    expect(runCli(["pie", "a.csv", "b.svg"]).status).toBe(2);
    expect(runCli([]).status).toBe(2);
  });
});
