/** Training and per-bin evaluation of the detector. */

import * as tf from "@tensorflow/tfjs";

import { initBackend } from "./backend.js";
import { IqDataset } from "./dataset.js";
import { buildDetector } from "./model.js";
import { Rng } from "./rng.js";

export interface BinConfusion {
  snrDb: number;
  tp: number;
  fn: number;
  fp: number;
  tn: number;
}

export interface TrainedDetector {
  model: tf.Sequential;
  packetSize: number;
  snrDb: number[];
  paramCount: number;
  confusion: BinConfusion[];
  /** true-positive rate per SNR bin */
  pDetect: number[];
  /** false-positive rate per bin (noise-only, varies by sampling only) */
  pFalseAlarmPerBin: number[];
  /** pooled false-positive rate across all noise examples */
  pFalseAlarm: number;
  accuracyPerBin: number[];
  lossHistory: number[];
  epochs: number;
  seed: number;
}

export interface TrainOptions {
  epochs?: number;
  batchSize?: number;
  seed?: number;
  verbose?: boolean;
}

function shuffled(ds: IqDataset, seed: number) {
  const n = ds.labels.length;
  const per = 2 * ds.packetSize;
  const perm = new Rng(seed ^ 0x5eed).permutation(n);
  const x = new Float32Array(ds.x.length);
  const y = new Float32Array(n * 2);
  for (let i = 0; i < n; i++) {
    const src = perm[i];
    x.set(ds.x.subarray(src * per, (src + 1) * per), i * per);
    y[i * 2 + ds.labels[src]] = 1;
  }
  return { x, y, n };
}

export async function train(ds: IqDataset, opts: TrainOptions = {}): Promise<TrainedDetector> {
  await initBackend();
  const epochs = opts.epochs ?? 12;
  const batchSize = opts.batchSize ?? 128;
  const seed = opts.seed ?? ds.seed;

  const model = buildDetector(ds.packetSize, seed);
  const { x, y, n } = shuffled(ds, seed);
  const xs = tf.tensor4d(x, [n, 2, ds.packetSize, 1]);
  const ys = tf.tensor2d(y, [n, 2]);
  let lossHistory: number[];
  try {
    // data are pre-shuffled with the seeded permutation; fit must not
    // reshuffle or the export would stop being reproducible
    const hist = await model.fit(xs, ys, {
      epochs,
      batchSize,
      shuffle: false,
      verbose: opts.verbose ? 1 : 0,
    });
    lossHistory = (hist.history.loss as number[]).map(Number);
  } finally {
    xs.dispose();
    ys.dispose();
  }
  if (lossHistory.some((v) => !Number.isFinite(v))) {
    throw new Error(`training diverged: loss history [${lossHistory.map((v) => v.toFixed(4)).join(", ")}]`);
  }

  const det = evaluate(model, ds, lossHistory, epochs, seed);
  const top = det.accuracyPerBin[det.accuracyPerBin.length - 1];
  if (top < 0.55) {
    throw new Error(
      `training diverged: top-bin accuracy ${top.toFixed(3)} is at chance level; ` +
        `loss history [${lossHistory.map((v) => v.toFixed(4)).join(", ")}]`,
    );
  }
  return det;
}

function evaluate(
  model: tf.Sequential,
  ds: IqDataset,
  lossHistory: number[],
  epochs: number,
  seed: number,
): TrainedDetector {
  const n = ds.labels.length;
  const per = 2 * ds.packetSize;
  const pred = tf.tidy(() => {
    const xs = tf.tensor4d(ds.x, [n, 2, ds.packetSize, 1]);
    return (model.predict(xs, { batchSize: 512 }) as tf.Tensor).argMax(-1);
  });
  const decided = pred.dataSync();
  pred.dispose();

  const bins = ds.snrDb.length;
  const confusion: BinConfusion[] = ds.snrDb.map((snrDb) => ({ snrDb, tp: 0, fn: 0, fp: 0, tn: 0 }));
  for (let ex = 0; ex < n; ex++) {
    const c = confusion[ds.binIndex[ex]];
    const busy = decided[ex] === 1;
    if (ds.labels[ex] === 1) {
      busy ? c.tp++ : c.fn++;
    } else {
      busy ? c.fp++ : c.tn++;
    }
  }
  const pDetect = confusion.map((c) => c.tp / (c.tp + c.fn));
  const pFalseAlarmPerBin = confusion.map((c) => c.fp / (c.fp + c.tn));
  const fpTotal = confusion.reduce((s, c) => s + c.fp, 0);
  const noiseTotal = confusion.reduce((s, c) => s + c.fp + c.tn, 0);
  const accuracyPerBin = confusion.map(
    (c) => (c.tp + c.tn) / (c.tp + c.tn + c.fp + c.fn),
  );
  return {
    model,
    packetSize: ds.packetSize,
    snrDb: [...ds.snrDb],
    paramCount: model.countParams(),
    confusion,
    pDetect,
    pFalseAlarmPerBin,
    pFalseAlarm: fpTotal / noiseTotal,
    accuracyPerBin,
    lossHistory,
    epochs,
    seed,
  };
}
