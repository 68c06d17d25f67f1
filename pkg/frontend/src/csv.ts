/**
 * Reader for the harness sweep.csv contract.
 *
 * Column names are a bit-exact contract with the Python harness:
 * n,delta,lambda,i_stop_pred,bound,obs_mean,obs_min,obs_max,trials,master_seed,error
 * Observation fields are empty above the simulation cap; the error column is
 * empty on clean rows. Fields may be RFC-4180 quoted (error messages can
 * contain commas); multi-line fields are not part of the contract.
 */

export const SWEEP_COLUMNS = [
  "n",
  "delta",
  "lambda",
  "i_stop_pred",
  "bound",
  "obs_mean",
  "obs_min",
  "obs_max",
  "trials",
  "master_seed",
  "error",
] as const;

export interface SweepRow {
  n: number;
  delta: number;
  lambda: number;
  i_stop_pred: number | null;
  bound: number | null;
  obs_mean: number | null;
  obs_min: number | null;
  obs_max: number | null;
  trials: number | null;
  master_seed: number | null;
  error: string;
}

export class SchemaError extends Error {}

function splitCsvLine(line: string): string[] {
  const fields: string[] = [];
  let field = "";
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"') {
        if (line[i + 1] === '"') {
          field += '"';
          i++;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch === '"') {
      quoted = true;
    } else if (ch === ",") {
      fields.push(field);
      field = "";
    } else {
      field += ch;
    }
  }
  fields.push(field);
  return fields;
}

function numberOrNull(raw: string, column: string, lineno: number): number | null {
  if (raw === "") {
    return null;
  }
  const value = Number(raw);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`line ${lineno}: column ${column} is not numeric: ${raw}`);
  }
  return value;
}

function required(value: number | null, column: string, lineno: number): number {
  if (value === null) {
    throw new SchemaError(`line ${lineno}: column ${column} must not be empty`);
  }
  return value;
}

/** Parse sweep CSV text; throws SchemaError naming any missing column. */
export function parseSweep(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty file: missing header row");
  }
  const header = splitCsvLine(lines[0]!);
  for (const column of SWEEP_COLUMNS) {
    if (!header.includes(column)) {
      throw new SchemaError(`missing column: ${column}`);
    }
  }
  for (const column of header) {
    if (!(SWEEP_COLUMNS as readonly string[]).includes(column)) {
      throw new SchemaError(`unexpected column: ${column}`);
    }
  }
  const index = new Map(header.map((name, i) => [name, i]));
  const rows: SweepRow[] = [];
  for (let lineno = 2; lineno <= lines.length; lineno++) {
    const fields = splitCsvLine(lines[lineno - 1]!);
    if (fields.length !== header.length) {
      throw new SchemaError(
        `line ${lineno}: expected ${header.length} fields, found ${fields.length}`,
      );
    }
    const get = (name: string): string => fields[index.get(name)!]!;
    const num = (name: string) => numberOrNull(get(name), name, lineno);
    rows.push({
      n: required(num("n"), "n", lineno),
      delta: required(num("delta"), "delta", lineno),
      lambda: required(num("lambda"), "lambda", lineno),
      i_stop_pred: num("i_stop_pred"),
      bound: num("bound"),
      obs_mean: num("obs_mean"),
      obs_min: num("obs_min"),
      obs_max: num("obs_max"),
      trials: num("trials"),
      master_seed: num("master_seed"),
      error: get("error"),
    });
  }
  return rows;
}
