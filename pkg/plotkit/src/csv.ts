import { readFileSync } from "node:fs";

export interface Table {
  header: string[];
  cells: string[][];
  file: string;
}

/** Parse a plain numeric CSV (no quoting) with a header row. */
export function readCsv(file: string): Table {
  const text = readFileSync(file, "utf8").trim();
  const lines = text.split(/\r?\n/);
  if (lines.length < 2) {
    throw new SchemaMismatch(`${file}: expected a header row and at least one data row`);
  }
  const header = lines[0].split(",").map((s) => s.trim());
  const cells = lines.slice(1).map((ln) => ln.split(",").map((s) => s.trim()));
  return { header, cells, file };
}

export class SchemaMismatch extends Error {}

/** Column values as numbers; throws SchemaMismatch naming a missing column. */
export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaMismatch(
      `${table.file}: missing column '${name}' (header: ${table.header.join(", ")})`,
    );
  }
  return table.cells.map((row) => (row[idx] === "" ? NaN : Number(row[idx])));
}

export function textColumn(table: Table, name: string): string[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaMismatch(`${table.file}: missing column '${name}'`);
  }
  return table.cells.map((row) => row[idx] ?? "");
}

export function requireColumns(table: Table, names: string[]): void {
  for (const n of names) {
    if (!table.header.includes(n)) {
      throw new SchemaMismatch(
        `${table.file}: missing column '${n}' (header: ${table.header.join(", ")})`,
      );
    }
  }
}
