/**
 * Acceptance gate for the calibration tool.
 *
 * Criteria: exact parameter counts; accuracy curves monotone in SNR and
 * ordered by packet size within 2% sampling noise; the exported table
 * passes the link analyzer's schema check and, plugged into its sweep
 * recipes, preserves the decoy monotonicity properties.
 */

import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { beforeAll, describe, expect, it } from "vitest";

import { initBackend } from "../src/backend.js";
import { buildDetector } from "../src/model.js";
import { generateDataset } from "../src/dataset.js";
import { tableFromDetectors, writeTable } from "../src/table.js";
import { train, TrainedDetector } from "../src/train.js";

const GRID = [-5, 0, 5, 10];
const SIZES = [16, 32, 64, 128];
const detectors: TrainedDetector[] = [];
let tablePath: string;

function agejam(...args: string[]): string {
  return execFileSync("python3", ["-m", "agejam.cli", ...args], {
    encoding: "utf-8",
    cwd: path.resolve(__dirname, "..", ".."),
  });
}

function column(csv: string, series: string, field: string): number[] {
  const lines = csv.trim().split("\n");
  const cols = lines[0].split(",");
  const fi = cols.indexOf(field);
  const si = cols.indexOf("series");
  const ei = cols.indexOf("engine");
  return lines
    .slice(1)
    .map((ln) => ln.split(","))
    .filter((v) => v[si] === series && v[ei] === "analytic")
    .map((v) => Number(v[fi]));
}

beforeAll(async () => {
  await initBackend();
  for (const size of SIZES) {
    const ds = generateDataset(size, GRID, 1000, 9000 + size);
    detectors.push(await train(ds, { epochs: 8, seed: 9000 + size }));
  }
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "calib-accept-"));
  tablePath = path.join(dir, "table.json");
  writeTable(
    tableFromDetectors(detectors, { purpose: "acceptance" }),
    tablePath,
  );
}, 1_800_000);

describe("acceptance", () => {
  it("CNN parameter counts equal the published 37,306 and 266,682 exactly", () => {
    expect(buildDetector(16).countParams()).toBe(37306);
    expect(buildDetector(128).countParams()).toBe(266682);
    expect(detectors.find((d) => d.packetSize === 16)!.paramCount).toBe(37306);
    expect(detectors.find((d) => d.packetSize === 128)!.paramCount).toBe(266682);
  });

  it("accuracy rises with SNR for every packet size (within 2% noise)", () => {
    for (const det of detectors) {
      const acc = det.accuracyPerBin;
      for (let i = 1; i < acc.length; i++) {
        expect(acc[i]).toBeGreaterThan(acc[i - 1] - 0.02);
      }
      expect(acc.at(-1)!).toBeGreaterThan(0.9);
    }
  });

  it("larger packets detect at least as well at every bin (within 2% noise)", () => {
    for (let s = 1; s < detectors.length; s++) {
      const small = detectors[s - 1].accuracyPerBin;
      const large = detectors[s].accuracyPerBin;
      for (let b = 0; b < GRID.length; b++) {
        expect(large[b]).toBeGreaterThan(small[b] - 0.02);
      }
    }
  });

  it("exported table passes the analyzer's schema check", () => {
    const out = agejam("detector-table", "check", tablePath);
    expect(out).toMatch(/^ok:/);
  });

  it("plugged-in table preserves the jamming-power monotonicity (fig4)", () => {
    const csv = agejam("sweep", "fig4a", "--detector-table", tablePath);
    const pj = column(csv, "decoy", "p_j");
    for (let i = 1; i < pj.length; i++) {
      expect(pj[i]).toBeLessThan(pj[i - 1]);
    }
    const control = column(csv, "no_decoy", "p_j");
    expect(new Set(control).size).toBe(1);

    const csv4b = agejam("sweep", "fig4b", "--detector-table", tablePath);
    const pj4b = column(csv4b, "no_decoy", "p_j");
    for (let i = 1; i < pj4b.length; i++) {
      expect(pj4b[i]).toBeLessThan(pj4b[i - 1]);
    }
  });

  it("plugged-in table preserves the peak-age decoy advantage (fig5)", () => {
    for (const recipe of ["fig5a", "fig5b"]) {
      const csv = agejam("sweep", recipe, "--detector-table", tablePath);
      for (const model of ["m1", "m2"]) {
        const dec = column(csv, `${model}_decoy`, "paoi");
        const ctl = column(csv, `${model}_no_decoy`, "paoi");
        expect(dec.length).toBeGreaterThan(0);
        for (let i = 0; i < dec.length; i++) {
          expect(dec[i]).toBeLessThanOrEqual(ctl[i] + 1e-12);
        }
      }
    }
    const csv5b = agejam("sweep", "fig5b", "--detector-table", tablePath);
    const m1 = column(csv5b, "m1_decoy", "paoi");
    const kMin = m1.indexOf(Math.min(...m1));
    expect(kMin).toBeGreaterThan(0);
    expect(kMin).toBeLessThan(m1.length - 1);
  });
});
