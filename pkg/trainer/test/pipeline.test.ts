/** End-to-end at toy scale: the primary tool exports a corpus, the
 * trainer learns it, sampled candidates flow back through refine, and
 * the refined best lands within one vertex of the corpus minimum.
 */

import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import { loadCorpus, wordCount } from "../src/corpus.js";
import { parseTraceCsv, plotSpeed } from "../src/plot.js";
import { sampleCandidates, writeCandidates } from "../src/sample.js";
import { trainModel } from "../src/train.js";

function percube(args: string[], cwd: string): string {
  return execFileSync("python3", ["-m", "percube", ...args], {
    cwd,
    encoding: "utf8",
    timeout: 180_000,
  });
}

let dir: string;

beforeAll(() => {
  dir = mkdtempSync(join(tmpdir(), "pipeline-"));
});

describe("corpus -> train -> sample -> refine", () => {
  it(
    "round-trips and refines to within one vertex of the corpus minimum",
    () => {
      // 1. Primary search at (7,4) and corpus export.
      percube(
        [
          "search", "--d", "7", "--r", "4",
          "--budget-sweeps", "1200", "--starts", "6", "--pool", "1200",
          "--stall", "0", "--seed", "0", "--out", "pool.txt",
        ],
        dir,
      );
      percube(
        [
          "export-corpus", "--d", "7", "--r", "4",
          "--in", "pool.txt", "--window", "1:48", "--out", "corpus.txt",
        ],
        dir,
      );
      const corpus = loadCorpus(join(dir, "corpus.txt"));
      expect(corpus.d).toBe(7);
      expect(corpus.lines.length).toBeGreaterThanOrEqual(500);
      const corpusMin = Math.min(...corpus.lines.map(wordCount));

      // 2. Toy training budget.
      const result = trainModel({
        corpusPath: join(dir, "corpus.txt"),
        outPath: join(dir, "model.json"),
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
      });
      expect(result.heldOutAfter).toBeLessThan(result.heldOutBefore);

      // 3. Sample 200 candidate lines; at least half the tokens must be
      // well-formed width-7 words.
      const samples = sampleCandidates(result.model, 200, 0.7, 1);
      expect(samples.lines).toHaveLength(200);
      expect(samples.wellFormed).toBeGreaterThanOrEqual(0.5);
      writeCandidates(join(dir, "candidates.txt"), samples.lines);

      // 4. The primary refines the sampled candidates.
      const out = percube(
        [
          "refine", "--d", "7", "--r", "4",
          "--in", "candidates.txt", "--budget-sweeps", "5000",
          "--stall", "0", "--seed", "0", "--out", "refined.txt",
        ],
        dir,
      );
      const match = /best size (\d+), reward -\1, percolates yes/.exec(out);
      expect(match).not.toBeNull();
      const bestSize = Number(match![1]);
      expect(bestSize).toBeLessThanOrEqual(corpusMin + 1);

      // The written pool starts with that best set.
      const firstLine = readFileSync(join(dir, "refined.txt"), "utf8").split("\n")[0];
      expect(wordCount(firstLine)).toBe(bestSize);
    },
    240_000,
  );

  it(
    "plots the infection speed of a refined set",
    () => {
      const best = readFileSync(join(dir, "refined.txt"), "utf8").split("\n")[0];
      writeFileSync(join(dir, "best.txt"), best + "\n", "utf8");
      percube(
        ["trace", "--d", "7", "--r", "4", "--in", "best.txt", "--out", "speed.csv"],
        dir,
      );
      const points = parseTraceCsv(readFileSync(join(dir, "speed.csv"), "utf8"));
      expect(points[0].step).toBe(1);
      expect(points[points.length - 1].infected).toBe(128);
      for (let i = 1; i < points.length; i++) {
        expect(points[i].infected).toBeGreaterThan(points[i - 1].infected);
      }
      expect(plotSpeed(join(dir, "speed.csv"), join(dir, "speed.svg"))).toBe(points.length);
      expect(readFileSync(join(dir, "speed.svg"), "utf8")).toContain("polyline");
    },
    60_000,
  );
});
