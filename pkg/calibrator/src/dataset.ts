/**
 * Synthetic I/Q training data for the signal-presence detector.
 *
 * Signal examples are random BPSK symbols scaled by one complex Rayleigh
 * block-fading coefficient per packet, plus complex white Gaussian noise of
 * unit power; the fading variance sets the per-sample SNR of the bin.
 * No-signal examples are pure noise. Classes are balanced within each bin.
 */

import { Rng } from "./rng.js";

export const PACKET_SIZES = [16, 32, 64, 128] as const;

export interface IqDataset {
  packetSize: number;
  snrDb: number[];
  /** flat [n, 2, packetSize] tensor data; plane 0 = I, plane 1 = Q */
  x: Float32Array;
  /** 1 = Signal, 0 = No Signal */
  labels: Uint8Array;
  /** SNR bin index of each example (noise examples keep their bin pairing) */
  binIndex: Int32Array;
  nPerBin: number;
  seed: number;
}

export function snrGrid(minDb: number, maxDb: number, stepDb: number): number[] {
  if (!(stepDb > 0) || maxDb < minDb) {
    throw new Error(`invalid SNR grid: [${minDb}, ${maxDb}] step ${stepDb}`);
  }
  const grid: number[] = [];
  for (let i = 0; ; i++) {
    const v = minDb + i * stepDb;
    if (v > maxDb + 1e-9) break;
    grid.push(Number(v.toFixed(10)));
  }
  return grid;
}

export function generateDataset(
  packetSize: number,
  snrGridDb: number[],
  nPerBin: number,
  seed: number,
): IqDataset {
  if (!(PACKET_SIZES as readonly number[]).includes(packetSize)) {
    throw new Error(`packet size must be one of ${PACKET_SIZES.join("/")}, got ${packetSize}`);
  }
  if (nPerBin < 1000) {
    throw new Error(`need at least 1000 examples per bin per class, got ${nPerBin}`);
  }
  if (snrGridDb.length === 0) {
    throw new Error("empty SNR grid");
  }
  for (let i = 1; i < snrGridDb.length; i++) {
    if (snrGridDb[i] <= snrGridDb[i - 1]) {
      throw new Error("SNR grid must be strictly increasing");
    }
  }

  const rng = new Rng(seed);
  const n = snrGridDb.length * nPerBin * 2;
  const x = new Float32Array(n * 2 * packetSize);
  const labels = new Uint8Array(n);
  const binIndex = new Int32Array(n);

  let ex = 0;
  for (let b = 0; b < snrGridDb.length; b++) {
    const gamma = Math.pow(10, snrGridDb[b] / 10);
    const hScale = Math.sqrt(gamma / 2);
    for (let k = 0; k < nPerBin * 2; k++) {
      const isSignal = k < nPerBin;
      const base = ex * 2 * packetSize;
      const hRe = isSignal ? hScale * rng.gauss() : 0;
      const hIm = isSignal ? hScale * rng.gauss() : 0;
      for (let s = 0; s < packetSize; s++) {
        let re = Math.SQRT1_2 * rng.gauss();
        let im = Math.SQRT1_2 * rng.gauss();
        if (isSignal) {
          const bit = rng.next() < 0.5 ? -1 : 1;
          re += bit * hRe;
          im += bit * hIm;
        }
        x[base + s] = re;
        x[base + packetSize + s] = im;
      }
      labels[ex] = isSignal ? 1 : 0;
      binIndex[ex] = b;
      ex++;
    }
  }
  return { packetSize, snrDb: [...snrGridDb], x, labels, binIndex, nPerBin, seed };
}

/** mean sample power of one class, optionally restricted to a bin */
export function classPower(ds: IqDataset, label: 0 | 1, bin?: number): number {
  const per = 2 * ds.packetSize;
  let acc = 0;
  let count = 0;
  for (let ex = 0; ex < ds.labels.length; ex++) {
    if (ds.labels[ex] !== label) continue;
    if (bin !== undefined && ds.binIndex[ex] !== bin) continue;
    const base = ex * per;
    for (let s = 0; s < ds.packetSize; s++) {
      const re = ds.x[base + s];
      const im = ds.x[base + ds.packetSize + s];
      acc += re * re + im * im;
    }
    count += ds.packetSize;
  }
  return acc / count;
}

/** empirical per-sample SNR of a bin, from the signal/noise power ratio */
export function empiricalSnrDb(ds: IqDataset, bin: number): number {
  const sig = classPower(ds, 1, bin);
  const noise = classPower(ds, 0, bin);
  return 10 * Math.log10(sig / noise - 1);
}

/** FNV-1a over the raw sample bytes: cheap determinism fingerprint */
export function datasetHash(ds: IqDataset): string {
  const bytes = new Uint8Array(ds.x.buffer, ds.x.byteOffset, ds.x.byteLength);
  let h = 0x811c9dc5;
  for (let i = 0; i < bytes.length; i++) {
    h ^= bytes[i];
    h = Math.imul(h, 0x01000193);
  }
  for (const b of ds.labels) {
    h ^= b;
    h = Math.imul(h, 0x01000193);
  }
  return (h >>> 0).toString(16).padStart(8, "0");
}
