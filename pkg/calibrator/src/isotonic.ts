/** Isotonic (non-decreasing) least-squares fit, pool-adjacent-violators.
 *
 * The link analyzer assumes detection probability never falls as SNR
 * rises; empirical ROC points are smoothed with PAV before export.
 */

export function isotonicNonDecreasing(y: number[]): number[] {
  const n = y.length;
  const level = new Float64Array(n);
  const weight = new Float64Array(n);
  const right = new Int32Array(n);
  let blocks = 0;
  for (let i = 0; i < n; i++) {
    level[blocks] = y[i];
    weight[blocks] = 1;
    right[blocks] = i;
    blocks++;
    while (blocks > 1 && level[blocks - 2] > level[blocks - 1]) {
      const w = weight[blocks - 2] + weight[blocks - 1];
      level[blocks - 2] =
        (level[blocks - 2] * weight[blocks - 2] + level[blocks - 1] * weight[blocks - 1]) / w;
      weight[blocks - 2] = w;
      right[blocks - 2] = right[blocks - 1];
      blocks--;
    }
  }
  const out = new Array<number>(n);
  let start = 0;
  for (let b = 0; b < blocks; b++) {
    for (let i = start; i <= right[b]; i++) out[i] = level[b];
    start = right[b] + 1;
  }
  return out;
}
