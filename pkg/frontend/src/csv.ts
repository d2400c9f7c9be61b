/**
 * Comment-aware CSV reading for the harness artifacts.
 *
 * Artifact files start with `# key: value` provenance lines, then a header
 * row, then plain numeric/text cells (no quoting or escaping is ever
 * emitted by the producer, so none is parsed here).
 */

export class SchemaError extends Error {}

export interface Table {
  comments: string[];
  columns: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const comments: string[] = [];
  let columns: string[] | null = null;
  const rows: string[][] = [];
  for (const rawLine of text.split(/\r?\n/)) {
    const line = rawLine.trimEnd();
    if (line === "") continue;
    if (line.startsWith("#")) {
      comments.push(line.replace(/^#\s?/, ""));
      continue;
    }
    if (columns === null) {
      columns = line.split(",");
      continue;
    }
    rows.push(line.split(","));
  }
  if (columns === null) {
    throw new SchemaError("no header row");
  }
  if (rows.length === 0) {
    throw new SchemaError("no data rows");
  }
  for (const row of rows) {
    if (row.length !== columns.length) {
      throw new SchemaError(
        `row has ${row.length} cells, header has ${columns.length}`,
      );
    }
  }
  return { comments, columns, rows };
}

/** Index of each required column; missing ones are reported by name. */
export function requireColumns(table: Table, names: string[]): Map<string, number> {
  const index = new Map<string, number>();
  for (const name of names) {
    const i = table.columns.indexOf(name);
    if (i < 0) {
      throw new SchemaError(`missing column: ${name}`);
    }
    index.set(name, i);
  }
  return index;
}

export function numericColumn(table: Table, index: number, name: string): number[] {
  return table.rows.map((row, line) => {
    const value = Number(row[index]);
    if (!Number.isFinite(value)) {
      throw new SchemaError(`column ${name}: non-numeric value ${JSON.stringify(row[index])} at data row ${line}`);
    }
    return value;
  });
}
