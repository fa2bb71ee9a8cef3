/** End-to-end calibration: synthesize data, train, evaluate, export. */

import { generateDataset, snrGrid } from "./dataset.js";
import { train, TrainedDetector } from "./train.js";
import { DetectorTable, tableFromDetectors, writeTable } from "./table.js";

export interface CalibrateOptions {
  packetSizes: number[];
  snrMinDb: number;
  snrMaxDb: number;
  stepDb: number;
  nPerBin: number;
  epochs: number;
  seed: number;
  out?: string;
  log?: (msg: string) => void;
}

export async function calibrate(opts: CalibrateOptions): Promise<DetectorTable> {
  const log = opts.log ?? (() => {});
  const grid = snrGrid(opts.snrMinDb, opts.snrMaxDb, opts.stepDb);
  const detectors: TrainedDetector[] = [];
  for (const size of opts.packetSizes) {
    // one model per packet size, trained on the mixed-SNR dataset
    const seed = (opts.seed + size * 7919) >>> 0;
    log(`packet size ${size}: generating ${grid.length} bins x ${opts.nPerBin} x 2 examples`);
    const ds = generateDataset(size, grid, opts.nPerBin, seed);
    log(`packet size ${size}: training ${opts.epochs} epochs`);
    const det = await train(ds, { epochs: opts.epochs, seed });
    const top = det.accuracyPerBin[det.accuracyPerBin.length - 1];
    log(
      `packet size ${size}: top-bin accuracy ${top.toFixed(3)}, ` +
        `false alarm ${det.pFalseAlarm.toFixed(3)}, ${det.paramCount} params`,
    );
    if (top <= 0.9) {
      log(`packet size ${size}: warning: top-bin accuracy ${top.toFixed(3)} <= 0.9`);
    }
    detectors.push(det);
  }
  const table = tableFromDetectors(detectors, {
    snr_grid: { min_db: opts.snrMinDb, max_db: opts.snrMaxDb, step_db: opts.stepDb },
    n_per_bin: opts.nPerBin,
    base_seed: opts.seed,
  });
  if (opts.out) {
    writeTable(table, opts.out);
    log(`wrote ${opts.out}`);
  }
  return table;
}
