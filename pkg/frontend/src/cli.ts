/**
 * Figure renderer: `node dist/cli.js <heatmap|curves|trace> <input.csv> <output.svg>`.
 * Exits nonzero with the offending column named on any schema mismatch.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { SchemaError } from "./csv.js";
import { renderCurves } from "./curves.js";
import { renderHeatmap } from "./heatmap.js";
import { renderTrace } from "./trace.js";

const RENDERERS: Record<string, (csv: string) => string> = {
  heatmap: renderHeatmap,
  curves: renderCurves,
  trace: renderTrace,
};

export function main(argv: string[]): number {
  const [kind, inputPath, outputPath] = argv;
  if (!kind || !inputPath || !outputPath) {
    console.error("usage: render <heatmap|curves|trace> <input.csv> <output.svg>");
    return 2;
  }
  const renderer = RENDERERS[kind];
  if (!renderer) {
    console.error(`unknown figure kind: ${kind} (expected heatmap, curves, or trace)`);
    return 2;
  }
  let csvText: string;
  try {
    csvText = readFileSync(inputPath, "utf8");
  } catch (err) {
    console.error(`cannot read ${inputPath}: ${(err as Error).message}`);
    return 1;
  }
  try {
    writeFileSync(outputPath, renderer(csvText));
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`${inputPath}: ${err.message}`);
      return 1;
    }
    throw err;
  }
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
