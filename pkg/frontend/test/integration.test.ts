/**
 * Cross-component checks: the exported file must be consumed byte-for-byte
 * by the profiler through its documented interfaces (vector file + dataset
 * directory). Skipped when the profiler CLI is not installed.
 */
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { spawnSync } from "node:child_process";

import { describe, expect, it } from "vitest";

import { MockEncoder, TransformerEncoder } from "../src/encoder.js";
import { runExport } from "../src/export.js";
import { writeDataset } from "./helpers.js";

function haveCli(cmd: string, args: string[]): boolean {
  const res = spawnSync(cmd, args, { encoding: "utf-8" });
  return res.status === 0;
}

const hasProfiler = haveCli("kgcx", ["--version"]);

describe.skipIf(!hasProfiler)("profiler integration", () => {
  it("exported vectors load through the profiler and drive a spectral run", async () => {
    const lines: string[] = [];
    for (let c = 0; c < 5; c++) {
      for (let i = 0; i < 8; i++) lines.push(`h${c}_${i}\trel${c}\ttail${c}`);
    }
    const dir = writeDataset(lines);
    const out = path.join(dir, "vectors.vec");
    await runExport(
      { datasetDir: dir, outputPath: out, pooling: "mean-of-tokens", batchSize: 16 },
      new MockEncoder(32),
    );
    const loader = spawnSync(
      "python3",
      ["-c",
       "import sys; from kgcx.embeddings import load_embeddings; " +
       "t = load_embeddings(sys.argv[1]); print(t.dimension, len(t))",
       out],
      { encoding: "utf-8" },
    );
    expect(loader.status, loader.stderr).toBe(0);
    expect(loader.stdout.trim()).toBe("32 50");

    const outDir = fs.mkdtempSync(path.join(os.tmpdir(), "kgx-csg-"));
    const run = spawnSync(
      "kgcx",
      ["csg", dir, "--splits", "train", "--classes", "5", "--k", "5",
       "--embeddings", out, "--out", outDir],
      { encoding: "utf-8" },
    );
    expect(run.status, run.stderr).toBe(0);
    const record = JSON.parse(
      fs.readFileSync(path.join(outDir, path.basename(dir) + ".csg.json"), "utf-8"),
    );
    expect(record.embedding_source).toBe("file");
    expect(record.embedding_dim).toBe(32);
    expect(record.csg_full).toBeGreaterThanOrEqual(0);
    expect(record.csg_full).toBeLessThanOrEqual(2);
  });
});

const realModel = process.env.KG_EXPORTER_REAL_MODEL;

/**
 * Full exporter round trip against a real encoder and dataset. Set
 * KG_EXPORTER_REAL_MODEL (e.g. bert-base-uncased) and KG_EXPORTER_DATASET
 * (e.g. ../data/codex-s); needs model weights, so network on first run.
 */
describe.skipIf(!realModel)("pretrained encoder round trip", () => {
  it("exports, re-exports within 1e-5, and drives a spectral run", async () => {
    const datasetDir = process.env.KG_EXPORTER_DATASET;
    expect(datasetDir, "set KG_EXPORTER_DATASET to a dataset directory").toBeTruthy();
    const encoder = await TransformerEncoder.load(realModel);
    expect(encoder.dimension).toBe(768);
    const outDir = fs.mkdtempSync(path.join(os.tmpdir(), "kgx-real-"));
    const out = path.join(outDir, "real.vec");
    const report = await runExport(
      { datasetDir: datasetDir!, outputPath: out, pooling: "mean-of-tokens", batchSize: 32 },
      encoder,
    );
    expect(report.dimension).toBe(768);
    expect(report.rows).toBeGreaterThan(0);
    if (path.basename(datasetDir!).toLowerCase() === "codex-s") {
      expect(report.rows).toBe(2076); // 2,034 entities + 42 relations
    }

    // re-export: component-wise equal within 1e-5
    const out2 = path.join(outDir, "real2.vec");
    await runExport(
      { datasetDir: datasetDir!, outputPath: out2, pooling: "mean-of-tokens", batchSize: 64 },
      encoder,
    );
    const { parseVectors } = await import("../src/vecformat.js");
    const va = parseVectors(fs.readFileSync(out, "utf-8"));
    const vb = parseVectors(fs.readFileSync(out2, "utf-8"));
    for (const [label, vec] of va.rows) {
      const other = vb.rows.get(label)!;
      for (let i = 0; i < vec.length; i++) {
        expect(Math.abs(vec[i] - other[i])).toBeLessThanOrEqual(1e-5);
      }
    }

    if (hasProfiler) {
      // the profiler's property checks (eigenvalue bounds, row sums,
      // determinism) run inside this subcommand; a zero exit means the
      // spectral pipeline accepted the exported vectors end to end
      const run = spawnSync(
        "kgcx",
        ["csg", datasetDir!, "--classes", "100", "--k", "50", "--samples", "120",
         "--embeddings", out, "--out", outDir],
        { encoding: "utf-8" },
      );
      expect(run.status, run.stderr).toBe(0);
      const record = JSON.parse(fs.readFileSync(
        path.join(outDir, path.basename(datasetDir!) + ".csg.json"), "utf-8"));
      expect(record.csg_full).toBeGreaterThanOrEqual(0);
      expect(record.csg_full).toBeLessThanOrEqual(2);
    }
  }, 1_800_000);
});
