import { describe, expect, it } from "vitest";

import {
  classPower,
  datasetHash,
  empiricalSnrDb,
  generateDataset,
  snrGrid,
} from "../src/dataset.js";

describe("snrGrid", () => {
  it("builds the standard calibration grid", () => {
    const g = snrGrid(-5, 10, 1);
    expect(g).toHaveLength(16);
    expect(g[0]).toBe(-5);
    expect(g.at(-1)).toBe(10);
  });

  it("rejects degenerate grids", () => {
    expect(() => snrGrid(5, -5, 1)).toThrow();
    expect(() => snrGrid(0, 10, 0)).toThrow();
  });
});

describe("generateDataset", () => {
  const grid = [-5, 0, 5, 10];

  it("labels SNR bins within 0.2 dB", () => {
    // 16k examples per class per bin keeps the 0.2 dB check above 3 sigma
    const ds = generateDataset(16, grid, 16000, 42);
    for (let b = 0; b < grid.length; b++) {
      expect(Math.abs(empiricalSnrDb(ds, b) - grid[b])).toBeLessThan(0.2);
    }
  });

  it("keeps the noise class at unit power within 2%", () => {
    const ds = generateDataset(16, grid, 1000, 43);
    expect(classPower(ds, 0)).toBeGreaterThan(0.98);
    expect(classPower(ds, 0)).toBeLessThan(1.02);
  });

  it("balances the classes in every bin", () => {
    const ds = generateDataset(16, grid, 1000, 44);
    for (let b = 0; b < grid.length; b++) {
      let sig = 0;
      let noise = 0;
      for (let ex = 0; ex < ds.labels.length; ex++) {
        if (ds.binIndex[ex] !== b) continue;
        ds.labels[ex] === 1 ? sig++ : noise++;
      }
      expect(sig).toBe(1000);
      expect(noise).toBe(1000);
    }
  });

  it("is deterministic per seed", () => {
    const a = datasetHash(generateDataset(16, grid, 1000, 7));
    const b = datasetHash(generateDataset(16, grid, 1000, 7));
    const c = datasetHash(generateDataset(16, grid, 1000, 8));
    expect(a).toBe(b);
    expect(a).not.toBe(c);
  });

  it("rejects unsupported packet sizes and thin bins", () => {
    expect(() => generateDataset(24, grid, 1000, 1)).toThrow(/packet size/);
    expect(() => generateDataset(16, grid, 500, 1)).toThrow(/1000/);
    expect(() => generateDataset(16, [0, 0], 1000, 1)).toThrow(/increasing/);
    expect(() => generateDataset(16, [], 1000, 1)).toThrow(/empty/);
  });
});
