export {
  BOS_ID,
  CHARS,
  CHAR_TO_ID,
  VOCAB_IN,
  VOCAB_OUT,
  loadCorpus,
  parseCorpusText,
  wellFormedFraction,
  wordCount,
} from "./corpus.js";
export type { Corpus } from "./corpus.js";
export { Adam, WindowMlp, fromCheckpoint, toCheckpoint } from "./model.js";
export type { Checkpoint, ModelShape } from "./model.js";
export { gauss, mulberry32, shuffle, weightedChoice } from "./rng.js";
export type { Rng } from "./rng.js";
export { sampleCandidates, writeCandidates } from "./sample.js";
export type { SampleResult } from "./sample.js";
export { parseTraceCsv, plotSpeed, renderSpeedSvg } from "./plot.js";
export type { TracePoint } from "./plot.js";
export { DEFAULTS, readCheckpoint, trainModel, writeCheckpoint } from "./train.js";
export type { TrainResult, TrainerConfig } from "./train.js";
