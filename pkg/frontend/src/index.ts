export { parseCsv, requireColumns, numericColumn, SchemaError } from "./csv.js";
export { renderHeatmap } from "./heatmap.js";
export { renderCurves } from "./curves.js";
export { renderTrace } from "./trace.js";
export { sequentialColor } from "./svg.js";
