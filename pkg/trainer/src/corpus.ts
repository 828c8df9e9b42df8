/** Strict loader for candidate-line corpora.
 *
 * A corpus line is one vertex set: space-separated words, each exactly
 * d characters of 0/1, terminated by a newline. The trainer refuses
 * malformed corpora outright; tolerant parsing of dirty model output is
 * the consumer's job, not ours.
 */

import { readFileSync } from "node:fs";

/** Character vocabulary, fixed by the corpus grammar. */
export const CHARS = "01 \n";
export const CHAR_TO_ID: Record<string, number> = { "0": 0, "1": 1, " ": 2, "\n": 3 };
export const VOCAB_OUT = 4;
/** Begin-of-line marker used only for context padding, never predicted. */
export const BOS_ID = 4;
export const VOCAB_IN = 5;

export interface Corpus {
  /** Word width: every word in every line has exactly this many chars. */
  d: number;
  /** Lines without their trailing newline. */
  lines: string[];
  /** Longest line length counting the terminating newline. */
  maxLineChars: number;
}

export function parseCorpusText(text: string): Corpus {
  const rawLines = text.split("\n");
  if (rawLines[rawLines.length - 1] === "") rawLines.pop();
  if (rawLines.length === 0) {
    throw new Error("corpus is empty");
  }
  let d = -1;
  let maxLineChars = 0;
  rawLines.forEach((line, i) => {
    if (line === "" || line !== line.trim() || line.includes("  ")) {
      throw new Error(`corpus line ${i + 1} is malformed: bad spacing`);
    }
    for (const word of line.split(" ")) {
      if (!/^[01]+$/.test(word)) {
        throw new Error(`corpus line ${i + 1} has a non-binary word "${word}"`);
      }
      if (d === -1) d = word.length;
      if (word.length !== d) {
        throw new Error(
          `corpus line ${i + 1} has a word of width ${word.length}, expected ${d}`,
        );
      }
    }
    maxLineChars = Math.max(maxLineChars, line.length + 1);
  });
  return { d, lines: rawLines, maxLineChars };
}

export function loadCorpus(path: string): Corpus {
  return parseCorpusText(readFileSync(path, "utf8"));
}

/** Token counts of a line under the word grammar. */
export function wordCount(line: string): number {
  return line === "" ? 0 : line.split(" ").length;
}

/** Fraction of space-separated tokens that are well-formed width-d words. */
export function wellFormedFraction(lines: string[], d: number): number {
  let total = 0;
  let good = 0;
  const word = new RegExp(`^[01]{${d}}$`);
  for (const line of lines) {
    for (const tok of line.split(" ")) {
      if (tok === "") continue;
      total += 1;
      if (word.test(tok)) good += 1;
    }
  }
  return total === 0 ? 0 : good / total;
}
