/** Command line: train, sample, plot. Flags mirror TrainerConfig. */

import { resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { parseArgs } from "node:util";

import { fromCheckpoint } from "./model.js";
import { plotSpeed } from "./plot.js";
import { sampleCandidates, writeCandidates } from "./sample.js";
import { DEFAULTS, TrainerConfig, readCheckpoint, trainModel, writeCheckpoint } from "./train.js";

const USAGE = `usage:
  trainer train  --corpus FILE --out CHECKPOINT [--context N] [--layers N]
                 [--width N] [--hidden N] [--steps N] [--batch N] [--lr X] [--seed N]
  trainer sample --checkpoint FILE --out FILE [--samples N] [--temperature X] [--seed N]
  trainer plot   --trace FILE --out FILE`;

function intFlag(value: string | undefined, fallback: number, name: string): number {
  if (value === undefined) return fallback;
  const n = Number(value);
  if (!Number.isInteger(n) || n < 0) throw new Error(`--${name} must be a non-negative integer`);
  return n;
}

function floatFlag(value: string | undefined, fallback: number, name: string): number {
  if (value === undefined) return fallback;
  const n = Number(value);
  if (!Number.isFinite(n) || n < 0) throw new Error(`--${name} must be a non-negative number`);
  return n;
}

function requireFlag(value: string | undefined, name: string): string {
  if (value === undefined) throw new Error(`--${name} is required`);
  return value;
}

export function run(argv: string[]): number {
  const [command, ...rest] = argv;
  const { values } = parseArgs({
    args: rest,
    options: {
      corpus: { type: "string" },
      checkpoint: { type: "string" },
      trace: { type: "string" },
      out: { type: "string" },
      context: { type: "string" },
      layers: { type: "string" },
      width: { type: "string" },
      hidden: { type: "string" },
      steps: { type: "string" },
      batch: { type: "string" },
      lr: { type: "string" },
      samples: { type: "string" },
      temperature: { type: "string" },
      seed: { type: "string" },
    },
  });

  if (command === "train") {
    const config: TrainerConfig = {
      corpusPath: requireFlag(values.corpus, "corpus"),
      outPath: requireFlag(values.out, "out"),
      contextLength: intFlag(values.context, DEFAULTS.contextLength, "context"),
      layerCount: Math.max(1, intFlag(values.layers, DEFAULTS.layerCount, "layers")),
      embeddingWidth: Math.max(1, intFlag(values.width, DEFAULTS.embeddingWidth, "width")),
      hiddenWidth: Math.max(1, intFlag(values.hidden, DEFAULTS.hiddenWidth, "hidden")),
      steps: intFlag(values.steps, DEFAULTS.steps, "steps"),
      batchSize: Math.max(1, intFlag(values.batch, DEFAULTS.batchSize, "batch")),
      learningRate: floatFlag(values.lr, DEFAULTS.learningRate, "lr"),
      temperature: floatFlag(values.temperature, DEFAULTS.temperature, "temperature"),
      sampleCount: intFlag(values.samples, DEFAULTS.sampleCount, "samples"),
      seed: intFlag(values.seed, DEFAULTS.seed, "seed"),
    };
    const result = trainModel(config, (msg) => console.log(msg));
    writeCheckpoint(config.outPath, result.model);
    console.log(`checkpoint written to ${config.outPath}`);
    return 0;
  }

  if (command === "sample") {
    const checkpointPath = requireFlag(values.checkpoint, "checkpoint");
    const outPath = requireFlag(values.out, "out");
    const count = Math.max(1, intFlag(values.samples, DEFAULTS.sampleCount, "samples"));
    const temperature = floatFlag(values.temperature, DEFAULTS.temperature, "temperature");
    const seed = intFlag(values.seed, DEFAULTS.seed, "seed");
    const model = fromCheckpoint(readCheckpoint(checkpointPath));
    const result = sampleCandidates(model, count, temperature, seed);
    writeCandidates(outPath, result.lines);
    console.log(
      `wrote ${result.lines.length} lines to ${outPath} ` +
        `(well-formed token fraction ${result.wellFormed.toFixed(3)})`,
    );
    return 0;
  }

  if (command === "plot") {
    const tracePath = requireFlag(values.trace, "trace");
    const outPath = requireFlag(values.out, "out");
    const rows = plotSpeed(tracePath, outPath);
    console.log(`plotted ${rows} rows to ${outPath}`);
    return 0;
  }

  console.error(USAGE);
  return 2;
}

const isMain =
  process.argv[1] !== undefined && fileURLToPath(import.meta.url) === resolve(process.argv[1]);
if (isMain) {
  try {
    process.exit(run(process.argv.slice(2)));
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    process.exit(1);
  }
}
