/**
 * Stateless plotting filter: input files in, one SVG out.
 *
 *   node dist/src/cli.js peak_series --series series.csv --out peak.svg
 *   node dist/src/cli.js surface     --snapshot snap.snap --out surf.svg
 *   node dist/src/cli.js contour     --snapshot snap.snap --out map.svg
 *   node dist/src/cli.js ce_series   --ce ce.csv --out ce.svg
 *   node dist/src/cli.js ce_bar      --ce a.csv --ce b.csv ... --out bars.svg
 */

import * as fs from "fs";
import { loadSnapshot, SnapshotFormatError } from "./snapshot";
import { CsvFormatError, column, loadCsv } from "./series";
import {
  renderCeBar, renderCeSeries, renderContour, renderPeakSeries, renderSurface,
} from "./render";

interface Args {
  kind: string;
  series?: string;
  snapshot?: string;
  ce: string[];
  out?: string;
}

function parseArgs(argv: string[]): Args {
  const args: Args = { kind: argv[0] ?? "", ce: [] };
  for (let k = 1; k < argv.length; k += 2) {
    const key = argv[k];
    const val = argv[k + 1];
    if (val === undefined) throw new Error(`missing value for ${key}`);
    if (key === "--series") args.series = val;
    else if (key === "--snapshot") args.snapshot = val;
    else if (key === "--ce") args.ce.push(val);
    else if (key === "--out") args.out = val;
    else throw new Error(`unknown option ${key}`);
  }
  return args;
}

function render(args: Args): string {
  switch (args.kind) {
    case "peak_series": {
      if (!args.series) throw new Error("peak_series needs --series");
      return renderPeakSeries(loadCsv(args.series));
    }
    case "surface": {
      if (!args.snapshot) throw new Error("surface needs --snapshot");
      return renderSurface(loadSnapshot(args.snapshot));
    }
    case "contour": {
      if (!args.snapshot) throw new Error("contour needs --snapshot");
      return renderContour(loadSnapshot(args.snapshot));
    }
    case "ce_series": {
      if (args.ce.length !== 1) throw new Error("ce_series needs exactly one --ce");
      return renderCeSeries(loadCsv(args.ce[0]));
    }
    case "ce_bar": {
      if (args.ce.length === 0) throw new Error("ce_bar needs at least one --ce");
      const rows = args.ce.map((path) => {
        const table = loadCsv(path);
        const f1 = column(table, "f1");
        const ce = column(table, "ce");
        return { f1: f1[f1.length - 1], ce: ce[ce.length - 1] };
      });
      rows.sort((a, b) => a.f1 - b.f1);
      return renderCeBar(rows);
    }
    default:
      throw new Error(
        `unknown plot kind ${JSON.stringify(args.kind)}; expected surface, ` +
        "contour, peak_series, ce_bar or ce_series");
  }
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 2;
  }
  try {
    const svg = render(args);
    if (!args.out) throw new Error("missing --out");
    fs.writeFileSync(args.out, svg);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    if (err instanceof SnapshotFormatError || err instanceof CsvFormatError) {
      console.error(`format error: ${(err as Error).message}`);
      return 3;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
