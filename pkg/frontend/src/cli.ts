#!/usr/bin/env node
/**
 * ftnplot: render figures from ftnsim CSV output.
 *
 *   ftnplot ber <csv...> -o fig.svg        BER vs SNR, log-y, one series
 *                                          per (scheme, alpha)
 *   ftnplot errorfree <csv> -o fig.svg     error-free SNR vs 1/alpha,
 *                                          linear axes, one line per scheme
 *
 * Output is always an SVG document, written to the exact path given.
 * Input CSVs are only ever read; rendering is deterministic, so re-running
 * with the same inputs rewrites the same bytes.
 */

import { readFileSync, writeFileSync } from "fs";
import yargs from "yargs";
import { renderBer, PlotDataError } from "./ber";
import { renderErrorFree } from "./errorfree";
import { parseBerCsv, parseErrorFreeCsv, SchemaError, BerRow } from "./schema";

function fail(message: string): never {
  throw new PlotDataError(message);
}

function cmdBer(csvPaths: string[], out: string, threshold?: number): void {
  const rows: BerRow[] = [];
  for (const path of csvPaths) {
    rows.push(...parseBerCsv(readFileSync(path, "utf8"), path));
  }
  if (rows.length === 0) fail("no data rows in any input CSV");
  const svg = renderBer(rows, { threshold });
  writeFileSync(out, svg);
}

function cmdErrorFree(csvPath: string, out: string): void {
  const rows = parseErrorFreeCsv(readFileSync(csvPath, "utf8"), csvPath);
  const svg = renderErrorFree(rows);
  writeFileSync(out, svg);
}

export function main(argv: string[]): number {
  let rc = 0;
  const parser = yargs(argv)
    .scriptName("ftnplot")
    .command(
      "ber <csv...>",
      "render a BER-vs-SNR figure (log-y) from ftnsim run CSVs",
      (y) =>
        y
          .positional("csv", { type: "string", array: true, demandOption: true })
          .option("o", {
            alias: "out",
            type: "string",
            demandOption: true,
            describe: "output SVG path",
          })
          .option("threshold", {
            type: "number",
            describe: "draw a dashed horizontal line at this BER",
          }),
      (args) => {
        cmdBer(args.csv as string[], args.o as string, args.threshold);
        console.log(`wrote ${args.o}`);
      },
    )
    .command(
      "errorfree <csv>",
      "render an error-free-SNR-vs-1/alpha figure from a (scheme, inv_alpha, snr_db) CSV",
      (y) =>
        y
          .positional("csv", { type: "string", demandOption: true })
          .option("o", {
            alias: "out",
            type: "string",
            demandOption: true,
            describe: "output SVG path",
          }),
      (args) => {
        cmdErrorFree(args.csv as string, args.o as string);
        console.log(`wrote ${args.o}`);
      },
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      if (err instanceof PlotDataError || err instanceof SchemaError) {
        console.error(`error: ${err.message}`);
      } else if (err) {
        console.error(`error: ${err.message}`);
      } else {
        console.error(`error: ${msg}`);
      }
      rc = 1;
    });
  try {
    parser.parseSync();
  } catch (err) {
    // yargs rethrows handler errors after .fail(); rc is already set there.
    if (rc === 0) {
      console.error(`error: ${(err as Error).message}`);
      rc = 1;
    }
  }
  return rc;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
