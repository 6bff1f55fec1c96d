/**
 * Label collection from a triple dataset directory (train/valid/test TSV,
 * one "head<TAB>relation<TAB>tail" per line).
 */
import * as fs from "node:fs";
import * as path from "node:path";

/** Bad or missing input files (CLI maps this to exit code 2). */
export class InputError extends Error {}

export interface LabelCollection {
  /** all distinct labels in canonical (lexicographically sorted) order */
  labels: string[];
  entityCount: number;
  relationCount: number;
  /** labels occurring both as an entity and as a relation (exported once) */
  sharedLabels: string[];
  /** rows that cannot be exported, e.g. empty-string labels */
  errorRows: string[];
}

const SPLIT_FILES = ["train.txt", "valid.txt", "test.txt"];

export function collectLabels(datasetDir: string, namesMap?: Map<string, string>): LabelCollection {
  const entities = new Set<string>();
  const relations = new Set<string>();
  const errorRows: string[] = [];
  let anySplit = false;
  for (const name of SPLIT_FILES) {
    const file = path.join(datasetDir, name);
    if (!fs.existsSync(file)) continue;
    anySplit = true;
    const text = fs.readFileSync(file, "utf-8");
    let lineno = 0;
    for (const rawLine of text.split("\n")) {
      lineno += 1;
      const line = rawLine.replace(/\r$/, "");
      if (line === "") continue;
      const fields = line.split("\t");
      if (fields.length !== 3) {
        errorRows.push(`${name}:${lineno}: expected 3 tab-separated fields, got ${fields.length}`);
        continue;
      }
      const [h, r, t] = fields;
      for (const [value, kind] of [[h, "entity"], [r, "relation"], [t, "entity"]] as const) {
        const label = resolve(value, namesMap);
        if (label === "") {
          errorRows.push(`${name}:${lineno}: empty ${kind} label`);
          continue;
        }
        (kind === "entity" ? entities : relations).add(label);
      }
    }
  }
  if (!anySplit) {
    throw new InputError(`no split files found under ${datasetDir}`);
  }
  const shared = [...entities].filter((l) => relations.has(l)).sort();
  const labels = [...new Set([...entities, ...relations])].sort();
  return {
    labels,
    entityCount: entities.size,
    relationCount: relations.size,
    sharedLabels: shared,
    errorRows,
  };
}

/** Map an opaque id to its readable name when a names map is provided. */
function resolve(label: string, namesMap?: Map<string, string>): string {
  if (!namesMap) return label;
  return namesMap.get(label) ?? label;
}

/** Names map file: one "<id><TAB><name>" per line. */
export function loadNamesMap(file: string): Map<string, string> {
  const map = new Map<string, string>();
  const text = fs.readFileSync(file, "utf-8");
  let lineno = 0;
  for (const rawLine of text.split("\n")) {
    lineno += 1;
    const line = rawLine.replace(/\r$/, "");
    if (line === "") continue;
    const fields = line.split("\t");
    if (fields.length !== 2) {
      throw new InputError(`${file}:${lineno}: expected "<id><TAB><name>"`);
    }
    map.set(fields[0], fields[1]);
  }
  return map;
}
