/**
 * Export job: encode every distinct entity and relation label of a dataset
 * and write the profiler's text vector format plus a metadata sidecar.
 *
 * Rows are written in canonical (sorted) label order regardless of batch
 * scheduling; a label used both as entity and relation is exported once and
 * flagged. Empty labels abort the export with a row-level error report.
 */
import * as fs from "node:fs";

import { collectLabels, loadNamesMap } from "./dataset.js";
import { Encoder, Pooling } from "./encoder.js";
import { formatRow } from "./vecformat.js";

export interface ExportJob {
  datasetDir: string;
  outputPath: string;
  pooling: Pooling;
  batchSize: number;
  namesMapPath?: string;
}

export interface ExportReport {
  rows: number;
  dimension: number;
  encoder: string;
  pooling: Pooling;
  truncated: number;
  sharedLabels: string[];
  namesMapUsed: boolean;
}

export class ExportError extends Error {
  readonly errorRows: string[];

  constructor(message: string, errorRows: string[]) {
    super(message);
    this.errorRows = errorRows;
  }
}

export async function runExport(job: ExportJob, encoder: Encoder): Promise<ExportReport> {
  const namesMap = job.namesMapPath ? loadNamesMap(job.namesMapPath) : undefined;
  const collection = collectLabels(job.datasetDir, namesMap);
  if (collection.errorRows.length > 0) {
    throw new ExportError(
      `dataset contains ${collection.errorRows.length} unexportable row(s)`,
      collection.errorRows,
    );
  }
  const labels = collection.labels;
  let truncated = 0;
  const lines: string[] = [`${labels.length} ${encoder.dimension}`];
  for (let start = 0; start < labels.length; start += job.batchSize) {
    const batch = labels.slice(start, start + job.batchSize);
    const result = await encoder.encode(batch, job.pooling);
    truncated += result.truncated;
    for (let i = 0; i < batch.length; i++) {
      if (result.vectors[i].length !== encoder.dimension) {
        throw new Error(
          `encoder returned dimension ${result.vectors[i].length}, expected ${encoder.dimension}`,
        );
      }
      lines.push(formatRow(batch[i], result.vectors[i]));
    }
  }
  fs.writeFileSync(job.outputPath, lines.join("\n") + "\n", "utf-8");
  const report: ExportReport = {
    rows: labels.length,
    dimension: encoder.dimension,
    encoder: encoder.name,
    pooling: job.pooling,
    truncated,
    sharedLabels: collection.sharedLabels,
    namesMapUsed: namesMap !== undefined,
  };
  const meta = {
    encoder: report.encoder,
    pooling: report.pooling,
    truncation_count: report.truncated,
    rows: report.rows,
    dimension: report.dimension,
    entity_labels: collection.entityCount,
    relation_labels: collection.relationCount,
    shared_labels: collection.sharedLabels,
    names_map_used: report.namesMapUsed,
  };
  fs.writeFileSync(job.outputPath + ".meta.json", JSON.stringify(meta, null, 1) + "\n", "utf-8");
  return report;
}
