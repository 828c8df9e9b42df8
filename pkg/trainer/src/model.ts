/** Character-level windowed MLP with hand-rolled backprop.
 *
 * The context is a fixed window of character ids (BOS-padded on the
 * left). Each id maps to a learned embedding; the flattened window
 * passes through `layerCount` tanh layers and a linear head over the
 * four real characters. Everything lives in flat Float64Arrays, and
 * gradients are accumulated by explicit loops, so training is
 * dependency-free and deterministic.
 */

import { BOS_ID, VOCAB_IN, VOCAB_OUT } from "./corpus.js";
import { Rng, gauss, weightedChoice } from "./rng.js";

export interface ModelShape {
  /** Window length in characters; long enough for a whole corpus line. */
  contextLength: number;
  embeddingWidth: number;
  layerCount: number;
  hiddenWidth: number;
  /** Word width of the corpus the model was built for. */
  d: number;
}

interface Layer {
  w: Float64Array; // fanIn x hiddenWidth, input-major
  b: Float64Array;
}

export class WindowMlp {
  readonly shape: ModelShape;
  readonly emb: Float64Array; // VOCAB_IN x embeddingWidth
  readonly layers: Layer[];
  readonly wOut: Float64Array; // hiddenWidth x VOCAB_OUT
  readonly bOut: Float64Array;

  // Scratch buffers reused across forward/backward passes.
  private readonly x: Float64Array;
  private readonly acts: Float64Array[];
  private readonly dacts: Float64Array[];
  private readonly dx: Float64Array;
  private readonly logits: Float64Array;
  private readonly probs: Float64Array;

  constructor(shape: ModelShape, init?: Rng) {
    if (shape.contextLength < 1) throw new Error("contextLength must be >= 1");
    if (shape.embeddingWidth < 1) throw new Error("embeddingWidth must be >= 1");
    if (shape.layerCount < 1) throw new Error("layerCount must be >= 1");
    if (shape.hiddenWidth < 1) throw new Error("hiddenWidth must be >= 1");
    if (shape.d < 1) throw new Error("word width d must be >= 1");
    this.shape = { ...shape };

    const { contextLength: C, embeddingWidth: E, layerCount: L, hiddenWidth: H } = shape;
    this.emb = new Float64Array(VOCAB_IN * E);
    this.layers = [];
    for (let l = 0; l < L; l++) {
      const fanIn = l === 0 ? C * E : H;
      this.layers.push({ w: new Float64Array(fanIn * H), b: new Float64Array(H) });
    }
    this.wOut = new Float64Array(H * VOCAB_OUT);
    this.bOut = new Float64Array(VOCAB_OUT);

    this.x = new Float64Array(C * E);
    this.acts = this.layers.map(() => new Float64Array(H));
    this.dacts = this.layers.map(() => new Float64Array(H));
    this.dx = new Float64Array(C * E);
    this.logits = new Float64Array(VOCAB_OUT);
    this.probs = new Float64Array(VOCAB_OUT);

    if (init) {
      const scale = (fanIn: number) => 1 / Math.sqrt(fanIn);
      const fill = (a: Float64Array, s: number) => {
        for (let i = 0; i < a.length; i++) a[i] = gauss(init) * s;
      };
      fill(this.emb, 1);
      this.layers.forEach((layer, l) => {
        fill(layer.w, scale(l === 0 ? C * E : H));
      });
      fill(this.wOut, scale(H));
    }
  }

  /** Parameter arrays in a fixed order (embedding, layers, output head). */
  params(): Float64Array[] {
    const out = [this.emb];
    for (const layer of this.layers) out.push(layer.w, layer.b);
    out.push(this.wOut, this.bOut);
    return out;
  }

  zeroGrads(): Float64Array[] {
    return this.params().map((p) => new Float64Array(p.length));
  }

  /** Logits for one context window of character ids. */
  forward(ctx: Int32Array): Float64Array {
    const { contextLength: C, embeddingWidth: E, hiddenWidth: H } = this.shape;
    const x = this.x;
    for (let p = 0; p < C; p++) {
      const base = ctx[p] * E;
      for (let e = 0; e < E; e++) x[p * E + e] = this.emb[base + e];
    }
    let input: Float64Array = x;
    for (let l = 0; l < this.layers.length; l++) {
      const { w, b } = this.layers[l];
      const h = this.acts[l];
      h.set(b);
      for (let i = 0; i < input.length; i++) {
        const xi = input[i];
        if (xi === 0) continue;
        const row = i * H;
        for (let j = 0; j < H; j++) h[j] += w[row + j] * xi;
      }
      for (let j = 0; j < H; j++) h[j] = Math.tanh(h[j]);
      input = h;
    }
    const logits = this.logits;
    logits.set(this.bOut);
    for (let j = 0; j < H; j++) {
      const hj = input[j];
      const row = j * VOCAB_OUT;
      for (let k = 0; k < VOCAB_OUT; k++) logits[k] += this.wOut[row + k] * hj;
    }
    return logits;
  }

  /** Softmax of the last forward pass, tempered; temperature 0 is argmax. */
  charDistribution(temperature: number): Float64Array {
    const logits = this.logits;
    const probs = this.probs;
    if (temperature <= 0) {
      let best = 0;
      for (let k = 1; k < VOCAB_OUT; k++) if (logits[k] > logits[best]) best = k;
      probs.fill(0);
      probs[best] = 1;
      return probs;
    }
    let max = -Infinity;
    for (let k = 0; k < VOCAB_OUT; k++) max = Math.max(max, logits[k] / temperature);
    let total = 0;
    for (let k = 0; k < VOCAB_OUT; k++) {
      probs[k] = Math.exp(logits[k] / temperature - max);
      total += probs[k];
    }
    for (let k = 0; k < VOCAB_OUT; k++) probs[k] /= total;
    return probs;
  }

  /** Mean cross-entropy of a batch, no gradients. */
  batchLoss(ctxs: Int32Array[], targets: number[]): number {
    let loss = 0;
    for (let n = 0; n < ctxs.length; n++) {
      const logits = this.forward(ctxs[n]);
      loss += crossEntropy(logits, targets[n], this.probs);
    }
    return loss / ctxs.length;
  }

  /** Mean cross-entropy plus accumulated gradients for the batch. */
  batchLossAndGrad(ctxs: Int32Array[], targets: number[], grads: Float64Array[]): number {
    const { contextLength: C, embeddingWidth: E, hiddenWidth: H } = this.shape;
    const L = this.layers.length;
    const [gEmb] = grads;
    const gOut = grads[grads.length - 2];
    const gbOut = grads[grads.length - 1];
    const inv = 1 / ctxs.length;
    let loss = 0;

    for (let n = 0; n < ctxs.length; n++) {
      const ctx = ctxs[n];
      const logits = this.forward(ctx);
      loss += crossEntropy(logits, targets[n], this.probs);

      // dlogits = softmax - onehot, scaled by 1/batch.
      const dlogits = this.probs;
      dlogits[targets[n]] -= 1;
      for (let k = 0; k < VOCAB_OUT; k++) dlogits[k] *= inv;

      const top = this.acts[L - 1];
      const dtop = this.dacts[L - 1];
      dtop.fill(0);
      for (let j = 0; j < H; j++) {
        const row = j * VOCAB_OUT;
        const hj = top[j];
        let acc = 0;
        for (let k = 0; k < VOCAB_OUT; k++) {
          gOut[row + k] += hj * dlogits[k];
          acc += this.wOut[row + k] * dlogits[k];
        }
        dtop[j] = acc;
      }
      for (let k = 0; k < VOCAB_OUT; k++) gbOut[k] += dlogits[k];

      for (let l = L - 1; l >= 0; l--) {
        const { w } = this.layers[l];
        const h = this.acts[l];
        const dh = this.dacts[l];
        const gw = grads[1 + 2 * l];
        const gb = grads[2 + 2 * l];
        const input = l === 0 ? this.x : this.acts[l - 1];
        const dinput = l === 0 ? this.dx : this.dacts[l - 1];
        // Through the tanh, then the linear layer.
        for (let j = 0; j < H; j++) dh[j] *= 1 - h[j] * h[j];
        for (let j = 0; j < H; j++) gb[j] += dh[j];
        if (l > 0) dinput.fill(0);
        else this.dx.fill(0);
        for (let i = 0; i < input.length; i++) {
          const row = i * H;
          const xi = input[i];
          let acc = 0;
          for (let j = 0; j < H; j++) {
            const dj = dh[j];
            gw[row + j] += xi * dj;
            acc += w[row + j] * dj;
          }
          dinput[i] = acc;
        }
      }

      for (let p = 0; p < C; p++) {
        const base = ctx[p] * E;
        for (let e = 0; e < E; e++) gEmb[base + e] += this.dx[p * E + e];
      }
    }
    return loss / ctxs.length;
  }

  /** Sample one line (without its newline) autoregressively. */
  sampleLine(temperature: number, rng: Rng): string {
    const C = this.shape.contextLength;
    const ctx = new Int32Array(C).fill(BOS_ID);
    const chars: string[] = [];
    const alphabet = "01 \n";
    // The window bounds line length: a full-width line fits exactly.
    for (let step = 0; step < C; step++) {
      this.forward(ctx);
      const probs = this.charDistribution(temperature);
      const id = temperature <= 0 ? probs.indexOf(1) : weightedChoice(Array.from(probs), rng);
      if (id === 3) break;
      chars.push(alphabet[id]);
      ctx.copyWithin(0, 1);
      ctx[C - 1] = id;
    }
    return chars.join("");
  }
}

function crossEntropy(logits: Float64Array, target: number, probs: Float64Array): number {
  let max = -Infinity;
  for (let k = 0; k < logits.length; k++) max = Math.max(max, logits[k]);
  let total = 0;
  for (let k = 0; k < logits.length; k++) {
    probs[k] = Math.exp(logits[k] - max);
    total += probs[k];
  }
  for (let k = 0; k < logits.length; k++) probs[k] /= total;
  return -Math.log(probs[target]);
}

/** Adam with bias correction; state is kept per parameter array. */
export class Adam {
  private readonly m: Float64Array[];
  private readonly v: Float64Array[];
  private t = 0;

  constructor(
    params: Float64Array[],
    private readonly lr = 0.01,
    private readonly beta1 = 0.9,
    private readonly beta2 = 0.999,
    private readonly eps = 1e-8,
  ) {
    this.m = params.map((p) => new Float64Array(p.length));
    this.v = params.map((p) => new Float64Array(p.length));
  }

  step(params: Float64Array[], grads: Float64Array[]): void {
    this.t += 1;
    const c1 = 1 - Math.pow(this.beta1, this.t);
    const c2 = 1 - Math.pow(this.beta2, this.t);
    for (let a = 0; a < params.length; a++) {
      const p = params[a];
      const g = grads[a];
      const m = this.m[a];
      const v = this.v[a];
      for (let i = 0; i < p.length; i++) {
        m[i] = this.beta1 * m[i] + (1 - this.beta1) * g[i];
        v[i] = this.beta2 * v[i] + (1 - this.beta2) * g[i] * g[i];
        p[i] -= (this.lr * (m[i] / c1)) / (Math.sqrt(v[i] / c2) + this.eps);
      }
    }
  }
}

export interface Checkpoint {
  version: 1;
  shape: ModelShape;
  params: number[][];
}

export function toCheckpoint(model: WindowMlp): Checkpoint {
  return {
    version: 1,
    shape: { ...model.shape },
    params: model.params().map((p) => Array.from(p)),
  };
}

export function fromCheckpoint(ck: Checkpoint): WindowMlp {
  if (ck.version !== 1) throw new Error(`unsupported checkpoint version ${ck.version}`);
  const model = new WindowMlp(ck.shape);
  const params = model.params();
  if (ck.params.length !== params.length) {
    throw new Error("checkpoint parameter count does not match its shape");
  }
  ck.params.forEach((arr, i) => {
    if (arr.length !== params[i].length) {
      throw new Error(`checkpoint array ${i} has length ${arr.length}, expected ${params[i].length}`);
    }
    params[i].set(arr);
  });
  return model;
}
