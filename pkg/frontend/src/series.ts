/** CSV readers for the run series and the entropy scan outputs. */

import * as fs from "fs";

export class CsvFormatError extends Error {
  constructor(message: string, public readonly line: number) {
    super(`line ${line}: ${message}`);
    this.name = "CsvFormatError";
  }
}

export interface Table {
  columns: string[];
  rows: number[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvFormatError("empty document", 1);
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows: number[][] = [];
  for (let k = 1; k < lines.length; k++) {
    const cells = lines[k].split(",");
    if (cells.length !== columns.length) {
      throw new CsvFormatError(
        `expected ${columns.length} cells, found ${cells.length}`, k + 1);
    }
    const row = cells.map((cell, ci) => {
      const v = Number(cell);
      if (!Number.isFinite(v) && cell.trim() !== "nan" && cell.trim() !== "inf") {
        throw new CsvFormatError(`cell ${ci + 1} is not numeric: ${cell}`, k + 1);
      }
      return v;
    });
    rows.push(row);
  }
  return { columns, rows };
}

export function loadCsv(path: string): Table {
  return parseCsv(fs.readFileSync(path, "utf-8"));
}

export function column(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvFormatError(`missing column ${name}`, 1);
  }
  return table.rows.map((r) => r[idx]);
}
