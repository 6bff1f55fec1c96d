#!/usr/bin/env node
/**
 * kg-embed-exporter: encode a dataset's entity and relation labels with a
 * pretrained text encoder and write the profiler's vector format.
 *
 * Usage:
 *   kg-embed-export <dataset-dir> --out vectors.vec
 *     [--encoder bert-base-uncased] [--pooling mean-of-tokens|cls-token]
 *     [--batch-size 32] [--names-map names.tsv] [--mock-dim N]
 *
 * --mock-dim selects the deterministic mock encoder (offline testing).
 */
import { InputError } from "./dataset.js";
import { DEFAULT_ENCODER, Encoder, MockEncoder, Pooling, TransformerEncoder } from "./encoder.js";
import { ExportError, runExport } from "./export.js";

interface Args {
  datasetDir: string;
  out: string;
  encoder: string;
  pooling: Pooling;
  batchSize: number;
  namesMap?: string;
  mockDim?: number;
}

function parseArgs(argv: string[]): Args {
  const positional: string[] = [];
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg.startsWith("--")) {
      const value = argv[i + 1];
      if (value === undefined) throw new Error(`missing value for ${arg}`);
      flags.set(arg.slice(2), value);
      i += 1;
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 1) {
    throw new Error("exactly one <dataset-dir> argument is required");
  }
  const out = flags.get("out");
  if (!out) throw new Error("--out is required");
  const pooling = (flags.get("pooling") ?? "mean-of-tokens") as Pooling;
  if (pooling !== "mean-of-tokens" && pooling !== "cls-token") {
    throw new Error(`--pooling must be mean-of-tokens or cls-token, got ${pooling}`);
  }
  return {
    datasetDir: positional[0],
    out,
    encoder: flags.get("encoder") ?? DEFAULT_ENCODER,
    pooling,
    batchSize: Number(flags.get("batch-size") ?? 32),
    namesMap: flags.get("names-map"),
    mockDim: flags.has("mock-dim") ? Number(flags.get("mock-dim")) : undefined,
  };
}

async function main(): Promise<number> {
  let args: Args;
  try {
    args = parseArgs(process.argv.slice(2));
  } catch (err) {
    console.error(`kg-embed-export: ${(err as Error).message}`);
    return 2;
  }
  let encoder: Encoder;
  if (args.mockDim !== undefined) {
    encoder = new MockEncoder(args.mockDim);
  } else {
    encoder = await TransformerEncoder.load(args.encoder);
  }
  try {
    const report = await runExport(
      {
        datasetDir: args.datasetDir,
        outputPath: args.out,
        pooling: args.pooling,
        batchSize: args.batchSize,
        namesMapPath: args.namesMap,
      },
      encoder,
    );
    console.log(
      `wrote ${report.rows} rows (d=${report.dimension}) to ${args.out}; ` +
        `truncated=${report.truncated}, shared labels=${report.sharedLabels.length}`,
    );
    if (report.namesMapUsed) {
      console.log("labels resolved through the provided names map");
    }
    return 0;
  } catch (err) {
    if (err instanceof ExportError) {
      console.error(`kg-embed-export: ${err.message}`);
      for (const row of err.errorRows) console.error(`  ${row}`);
      return 2;
    }
    console.error(`kg-embed-export: ${(err as Error).message}`);
    return err instanceof InputError ? 2 : 1;
  }
}

main().then((code) => {
  process.exitCode = code;
});
