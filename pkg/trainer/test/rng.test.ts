import { describe, expect, it } from "vitest";

import { gauss, mulberry32, shuffle, weightedChoice } from "../src/rng.js";

describe("mulberry32", () => {
  it("is deterministic per seed", () => {
    const a = mulberry32(123);
    const b = mulberry32(123);
    for (let i = 0; i < 100; i++) expect(a()).toBe(b());
  });

  it("differs across seeds", () => {
    const a = mulberry32(1);
    const b = mulberry32(2);
    const streamA = Array.from({ length: 8 }, a);
    const streamB = Array.from({ length: 8 }, b);
    expect(streamA).not.toEqual(streamB);
  });

  it("stays in [0, 1)", () => {
    const rng = mulberry32(7);
    for (let i = 0; i < 5000; i++) {
      const x = rng();
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThan(1);
    }
  });
});

describe("gauss", () => {
  it("is roughly standard", () => {
    const rng = mulberry32(99);
    let sum = 0;
    let sumSq = 0;
    const n = 8000;
    for (let i = 0; i < n; i++) {
      const g = gauss(rng);
      expect(Number.isFinite(g)).toBe(true);
      sum += g;
      sumSq += g * g;
    }
    expect(Math.abs(sum / n)).toBeLessThan(0.06);
    expect(Math.abs(sumSq / n - 1)).toBeLessThan(0.1);
  });
});

describe("shuffle", () => {
  it("permutes deterministically", () => {
    const a = [1, 2, 3, 4, 5, 6, 7, 8];
    const b = [...a];
    shuffle(a, mulberry32(5));
    shuffle(b, mulberry32(5));
    expect(a).toEqual(b);
    expect([...a].sort((x, y) => x - y)).toEqual([1, 2, 3, 4, 5, 6, 7, 8]);
  });
});

describe("weightedChoice", () => {
  it("never picks zero-weight entries", () => {
    const rng = mulberry32(11);
    for (let i = 0; i < 500; i++) {
      expect(weightedChoice([0, 0.3, 0, 0.7, 0], rng)).not.toBe(0);
    }
  });

  it("tracks the weights statistically", () => {
    const rng = mulberry32(12);
    const counts = [0, 0];
    for (let i = 0; i < 4000; i++) counts[weightedChoice([0.25, 0.75], rng)]++;
    expect(counts[1] / 4000).toBeGreaterThan(0.7);
    expect(counts[1] / 4000).toBeLessThan(0.8);
  });
});
