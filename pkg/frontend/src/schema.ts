/**
 * CSV schemas for the two figure inputs.
 *
 * `BerRow` mirrors the column order emitted by `ftnsim run` exactly; the
 * error-free input is the small hand-assembled table of
 * (scheme, inv_alpha, snr_db) crossings produced from `ftnsim errorfree`
 * output. Both parsers report problems by column name.
 */

import Papa from "papaparse";
import { z } from "zod";

const num = z.coerce.number().refine((v) => Number.isFinite(v), {
  message: "not a finite number",
});

export const BER_COLUMNS = [
  "scheme",
  "alpha",
  "beta",
  "nu",
  "N",
  "channel",
  "snr_db",
  "frames",
  "bits",
  "bit_errors",
  "ber",
  "wall_seconds",
  "seed",
] as const;

export const berRowSchema = z.object({
  scheme: z.string().min(1),
  alpha: num,
  beta: num,
  nu: num,
  N: num,
  channel: z.string(),
  snr_db: num,
  frames: num,
  bits: num,
  bit_errors: num,
  ber: num,
  wall_seconds: num,
  seed: num,
});
export type BerRow = z.infer<typeof berRowSchema>;

export const ERRORFREE_COLUMNS = ["scheme", "inv_alpha", "snr_db"] as const;

export const errorFreeRowSchema = z.object({
  scheme: z.string().min(1),
  inv_alpha: num,
  snr_db: num,
});
export type ErrorFreeRow = z.infer<typeof errorFreeRowSchema>;

export class SchemaError extends Error {}

function parseRows<T>(
  text: string,
  schema: z.ZodType<T>,
  columns: readonly string[],
  label: string,
): T[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  const missing = columns.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(`${label}: missing column(s): ${missing.join(", ")}`);
  }
  const rows: T[] = [];
  parsed.data.forEach((raw, i) => {
    const result = schema.safeParse(raw);
    if (!result.success) {
      const issue = result.error.issues[0];
      const col = issue.path.join(".") || "<row>";
      throw new SchemaError(
        `${label}: row ${i + 1}, column "${col}": ${issue.message}`,
      );
    }
    rows.push(result.data);
  });
  return rows;
}

export function parseBerCsv(text: string, label = "csv"): BerRow[] {
  return parseRows(text, berRowSchema, BER_COLUMNS, label);
}

export function parseErrorFreeCsv(text: string, label = "csv"): ErrorFreeRow[] {
  return parseRows(text, errorFreeRowSchema, ERRORFREE_COLUMNS, label);
}
