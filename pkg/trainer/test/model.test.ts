import { describe, expect, it } from "vitest";

import { BOS_ID, VOCAB_IN, VOCAB_OUT } from "../src/corpus.js";
import { WindowMlp, fromCheckpoint, toCheckpoint } from "../src/model.js";
import { mulberry32 } from "../src/rng.js";

const TINY = { contextLength: 5, embeddingWidth: 3, layerCount: 2, hiddenWidth: 4, d: 2 };

function randomBatch(seed: number, size: number): { ctxs: Int32Array[]; targets: number[] } {
  const rng = mulberry32(seed);
  const ctxs: Int32Array[] = [];
  const targets: number[] = [];
  for (let n = 0; n < size; n++) {
    const ctx = new Int32Array(TINY.contextLength);
    for (let p = 0; p < ctx.length; p++) ctx[p] = Math.floor(rng() * VOCAB_IN);
    ctxs.push(ctx);
    targets.push(Math.floor(rng() * VOCAB_OUT));
  }
  return { ctxs, targets };
}

describe("gradients", () => {
  it("match central finite differences on every parameter block", () => {
    // Oracle first: the analytic gradient is checked against a numeric
    // one before any training behavior is trusted.
    const model = new WindowMlp(TINY, mulberry32(42));
    const { ctxs, targets } = randomBatch(7, 3);
    const grads = model.zeroGrads();
    model.batchLossAndGrad(ctxs, targets, grads);

    const params = model.params();
    const rng = mulberry32(1);
    const eps = 1e-5;
    let checked = 0;
    for (let a = 0; a < params.length; a++) {
      const p = params[a];
      const probes = Math.min(p.length, 12);
      for (let probe = 0; probe < probes; probe++) {
        const i = Math.floor(rng() * p.length);
        const orig = p[i];
        p[i] = orig + eps;
        const up = model.batchLoss(ctxs, targets);
        p[i] = orig - eps;
        const down = model.batchLoss(ctxs, targets);
        p[i] = orig;
        const numeric = (up - down) / (2 * eps);
        expect(Math.abs(grads[a][i] - numeric)).toBeLessThan(1e-6 + 1e-4 * Math.abs(numeric));
        checked++;
      }
    }
    expect(checked).toBeGreaterThan(50);
  });

  it("are zero for characters absent from the batch", () => {
    const model = new WindowMlp(TINY, mulberry32(3));
    const ctx = new Int32Array(TINY.contextLength).fill(0); // only char id 0
    const grads = model.zeroGrads();
    model.batchLossAndGrad([ctx], [1], grads);
    const gEmb = grads[0];
    const E = TINY.embeddingWidth;
    for (let e = 0; e < E; e++) {
      expect(gEmb[BOS_ID * E + e]).toBe(0); // BOS never appeared
      expect(gEmb[0 * E + e]).not.toBe(0);
    }
  });
});

describe("forward", () => {
  it("is deterministic", () => {
    const model = new WindowMlp(TINY, mulberry32(5));
    const ctx = new Int32Array([0, 1, 2, 3, 4]);
    const a = Array.from(model.forward(ctx));
    const b = Array.from(model.forward(ctx));
    expect(a).toEqual(b);
  });

  it("gives a one-hot distribution at temperature zero", () => {
    const model = new WindowMlp(TINY, mulberry32(5));
    model.forward(new Int32Array([0, 1, 2, 3, 4]));
    const probs = Array.from(model.charDistribution(0));
    expect(probs.filter((p) => p === 1)).toHaveLength(1);
    expect(probs.filter((p) => p === 0)).toHaveLength(VOCAB_OUT - 1);
  });

  it("gives a normalized distribution at positive temperature", () => {
    const model = new WindowMlp(TINY, mulberry32(5));
    model.forward(new Int32Array([1, 1, 1, 1, 1]));
    const probs = Array.from(model.charDistribution(0.8));
    const total = probs.reduce((a, b) => a + b, 0);
    expect(Math.abs(total - 1)).toBeLessThan(1e-12);
    for (const p of probs) expect(p).toBeGreaterThan(0);
  });
});

describe("checkpoints", () => {
  it("round-trip through JSON preserving behavior", () => {
    const model = new WindowMlp(TINY, mulberry32(9));
    const restored = fromCheckpoint(JSON.parse(JSON.stringify(toCheckpoint(model))));
    expect(restored.shape).toEqual(model.shape);
    const ctx = new Int32Array([4, 3, 2, 1, 0]);
    expect(Array.from(restored.forward(ctx))).toEqual(Array.from(model.forward(ctx)));
  });

  it("reject shape/parameter mismatches", () => {
    const ck = toCheckpoint(new WindowMlp(TINY, mulberry32(9)));
    ck.params[1] = ck.params[1].slice(1);
    expect(() => fromCheckpoint(ck)).toThrow(/length/);
    const bad = { ...ck, version: 2 as never };
    expect(() => fromCheckpoint(bad)).toThrow(/version/);
  });
});
