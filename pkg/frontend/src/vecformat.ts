/**
 * Text vector format shared with the profiler:
 *   line 1:  "<count> <dimension>"
 *   line 2+: "<label> <v1> ... <vd>"  (single spaces, UTF-8, \n endings)
 *
 * Labels must not contain spaces; '%' is escaped as %25 and ' ' as %20 so
 * decoding is bijective.
 */

export function encodeLabel(label: string): string {
  return label.replaceAll("%", "%25").replaceAll(" ", "%20");
}

export function decodeLabel(label: string): string {
  return label.replaceAll("%20", " ").replaceAll("%25", "%");
}

export function formatRow(label: string, vector: ArrayLike<number>): string {
  const parts = new Array<string>(vector.length + 1);
  parts[0] = encodeLabel(label);
  for (let i = 0; i < vector.length; i++) {
    parts[i + 1] = numberToShortest(vector[i]);
  }
  return parts.join(" ");
}

/** Shortest decimal that round-trips to the same float64. */
export function numberToShortest(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite vector component: ${x}`);
  return String(x);
}

export interface ParsedVectors {
  dimension: number;
  rows: Map<string, Float64Array>;
}

/** Strict parser (mirror of the profiler's loader; used by tests). */
export function parseVectors(text: string): ParsedVectors {
  const lines = text.split("\n");
  const header = lines[0].split(" ");
  if (header.length !== 2) throw new Error("header must be '<count> <dimension>'");
  const count = Number(header[0]);
  const dimension = Number(header[1]);
  if (!Number.isInteger(count) || !Number.isInteger(dimension) || dimension < 1) {
    throw new Error(`invalid header: ${lines[0]}`);
  }
  const rows = new Map<string, Float64Array>();
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (line === "") continue;
    const fields = line.split(" ");
    const label = decodeLabel(fields[0]);
    if (fields.length - 1 !== dimension) {
      throw new Error(`line ${i + 1}: dimension mismatch for label '${label}'`);
    }
    if (rows.has(label)) throw new Error(`line ${i + 1}: duplicate label '${label}'`);
    const vec = new Float64Array(dimension);
    for (let j = 0; j < dimension; j++) {
      const v = Number(fields[j + 1]);
      if (Number.isNaN(v)) throw new Error(`line ${i + 1}: non-numeric value`);
      vec[j] = v;
    }
    rows.set(label, vec);
  }
  if (rows.size !== count) {
    throw new Error(`header count ${count} != parsed rows ${rows.size}`);
  }
  return { dimension, rows };
}
