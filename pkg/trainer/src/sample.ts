/** Sampling: candidate lines out of a trained (or untrained) model.
 *
 * Output stays inside the corpus alphabet {0, 1, space, newline}, so a
 * tolerant downstream parser can always read it; the words themselves
 * may still be malformed, which is the consumer's problem by contract.
 */

import { writeFileSync } from "node:fs";

import { wellFormedFraction } from "./corpus.js";
import { WindowMlp } from "./model.js";
import { mulberry32 } from "./rng.js";

export interface SampleResult {
  lines: string[];
  /** Fraction of emitted space-separated tokens that are width-d words. */
  wellFormed: number;
}

export function sampleCandidates(
  model: WindowMlp,
  count: number,
  temperature: number,
  seed: number,
): SampleResult {
  if (count < 1) throw new Error("sample count must be >= 1");
  if (temperature < 0) throw new Error("temperature must be >= 0");
  const rng = mulberry32(seed);
  const lines: string[] = [];
  for (let i = 0; i < count; i++) {
    lines.push(model.sampleLine(temperature, rng));
  }
  return { lines, wellFormed: wellFormedFraction(lines, model.shape.d) };
}

export function writeCandidates(path: string, lines: string[]): void {
  writeFileSync(path, lines.map((l) => l + "\n").join(""), "utf8");
}
