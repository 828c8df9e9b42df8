/** Training: strict corpus in, checkpoint out, deterministic for a seed. */

import { readFileSync, writeFileSync } from "node:fs";

import { BOS_ID, CHAR_TO_ID, Corpus, loadCorpus } from "./corpus.js";
import { Adam, Checkpoint, WindowMlp, toCheckpoint } from "./model.js";
import { mulberry32, shuffle } from "./rng.js";

export interface TrainerConfig {
  corpusPath: string;
  /** 0 means: exactly long enough for the longest corpus line. */
  contextLength: number;
  layerCount: number;
  embeddingWidth: number;
  hiddenWidth: number;
  /** Training step budget (minibatches). */
  steps: number;
  batchSize: number;
  learningRate: number;
  temperature: number;
  sampleCount: number;
  outPath: string;
  seed: number;
}

export const DEFAULTS = {
  contextLength: 0,
  layerCount: 1,
  embeddingWidth: 8,
  hiddenWidth: 48,
  steps: 1500,
  batchSize: 16,
  learningRate: 0.01,
  temperature: 0.7,
  sampleCount: 200,
  seed: 0,
} as const;

export interface TrainResult {
  model: WindowMlp;
  corpus: Corpus;
  heldOutBefore: number;
  heldOutAfter: number;
  finalStepLoss: number;
}

interface Dataset {
  ids: Int32Array[]; // encoded lines, terminating newline included
  lineOf: Int32Array; // position -> line index
  charOf: Int32Array; // position -> char index within the line
  heldOut: number[]; // positions reserved for evaluation
  train: number[];
}

function encodeLines(corpus: Corpus): Int32Array[] {
  return corpus.lines.map((line) => {
    const s = line + "\n";
    const ids = new Int32Array(s.length);
    for (let i = 0; i < s.length; i++) ids[i] = CHAR_TO_ID[s[i]];
    return ids;
  });
}

function buildDataset(corpus: Corpus): Dataset {
  const ids = encodeLines(corpus);
  const total = ids.reduce((acc, l) => acc + l.length, 0);
  const lineOf = new Int32Array(total);
  const charOf = new Int32Array(total);
  let pos = 0;
  ids.forEach((line, li) => {
    for (let ci = 0; ci < line.length; ci++) {
      lineOf[pos] = li;
      charOf[pos] = ci;
      pos++;
    }
  });
  // Every tenth line is held out for evaluation; tiny corpora skip the
  // split and are evaluated on what they train on (toy-scale tradeoff).
  const heldOut: number[] = [];
  const train: number[] = [];
  const split = ids.length >= 10;
  for (let p = 0; p < total; p++) {
    if (split && lineOf[p] % 10 === 9) heldOut.push(p);
    else train.push(p);
  }
  return { ids, lineOf, charOf, heldOut: split ? heldOut : train.slice(), train };
}

function fillContext(ds: Dataset, position: number, ctx: Int32Array): number {
  const line = ds.ids[ds.lineOf[position]];
  const charIdx = ds.charOf[position];
  const C = ctx.length;
  for (let p = 0; p < C; p++) {
    const src = charIdx - C + p;
    ctx[p] = src < 0 ? BOS_ID : line[src];
  }
  return line[charIdx];
}

function evalPositions(model: WindowMlp, ds: Dataset, positions: number[]): number {
  const C = model.shape.contextLength;
  const cap = Math.min(positions.length, 4000);
  const ctxs: Int32Array[] = [];
  const targets: number[] = [];
  for (let i = 0; i < cap; i++) {
    const ctx = new Int32Array(C);
    targets.push(fillContext(ds, positions[i], ctx));
    ctxs.push(ctx);
  }
  return model.batchLoss(ctxs, targets);
}

export function trainModel(
  config: TrainerConfig,
  log: (msg: string) => void = () => {},
): TrainResult {
  const corpus = loadCorpus(config.corpusPath);
  const contextLength = config.contextLength === 0 ? corpus.maxLineChars : config.contextLength;
  if (contextLength < corpus.maxLineChars) {
    throw new Error(
      `contextLength ${contextLength} is shorter than the longest corpus line ` +
        `(${corpus.maxLineChars} chars), so full sets would not fit in context`,
    );
  }

  const rng = mulberry32(config.seed);
  const model = new WindowMlp(
    {
      contextLength,
      embeddingWidth: config.embeddingWidth,
      layerCount: config.layerCount,
      hiddenWidth: config.hiddenWidth,
      d: corpus.d,
    },
    rng,
  );

  const ds = buildDataset(corpus);
  log(
    `corpus: ${corpus.lines.length} lines, d=${corpus.d}, ` +
      `${ds.train.length} training positions, context ${contextLength}`,
  );
  const heldOutBefore = evalPositions(model, ds, ds.heldOut);
  log(`held-out loss before training: ${heldOutBefore.toFixed(4)}`);

  const params = model.params();
  const optimizer = new Adam(params, config.learningRate);
  const ctxs: Int32Array[] = [];
  const targets: number[] = new Array(config.batchSize).fill(0);
  for (let b = 0; b < config.batchSize; b++) ctxs.push(new Int32Array(contextLength));

  shuffle(ds.train, rng);
  let cursor = 0;
  let lastLoss = NaN;
  const logEvery = Math.max(1, Math.floor(config.steps / 10));
  for (let step = 1; step <= config.steps; step++) {
    for (let b = 0; b < config.batchSize; b++) {
      if (cursor === ds.train.length) {
        shuffle(ds.train, rng);
        cursor = 0;
      }
      targets[b] = fillContext(ds, ds.train[cursor++], ctxs[b]);
    }
    const grads = model.zeroGrads();
    lastLoss = model.batchLossAndGrad(ctxs, targets, grads);
    optimizer.step(params, grads);
    if (step % logEvery === 0 || step === config.steps) {
      log(`step ${step}/${config.steps} loss ${lastLoss.toFixed(4)}`);
    }
  }

  const heldOutAfter = evalPositions(model, ds, ds.heldOut);
  log(`held-out loss after training: ${heldOutAfter.toFixed(4)}`);
  return { model, corpus, heldOutBefore, heldOutAfter, finalStepLoss: lastLoss };
}

export function writeCheckpoint(path: string, model: WindowMlp): void {
  writeFileSync(path, JSON.stringify(toCheckpoint(model)) + "\n", "utf8");
}

export function readCheckpoint(path: string): Checkpoint {
  return JSON.parse(readFileSync(path, "utf8")) as Checkpoint;
}
