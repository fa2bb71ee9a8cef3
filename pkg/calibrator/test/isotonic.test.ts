import { describe, expect, it } from "vitest";

import { isotonicNonDecreasing } from "../src/isotonic.js";

describe("isotonicNonDecreasing", () => {
  it("leaves monotone input untouched", () => {
    const y = [0.1, 0.2, 0.5, 0.9];
    expect(isotonicNonDecreasing(y)).toEqual(y);
  });

  it("pools adjacent violators to their mean", () => {
    const z = isotonicNonDecreasing([0.4, 0.2, 0.6]);
    expect(z[0]).toBeCloseTo(0.3, 12);
    expect(z[1]).toBeCloseTo(0.3, 12);
    expect(z[2]).toBe(0.6);
  });

  it("always outputs a non-decreasing sequence preserving the mean", () => {
    let state = 123456789;
    const rand = () => {
      state = (state * 1103515245 + 12345) % 2147483648;
      return state / 2147483648;
    };
    for (let trial = 0; trial < 200; trial++) {
      const y = Array.from({ length: 12 }, rand);
      const z = isotonicNonDecreasing(y);
      for (let i = 1; i < z.length; i++) {
        expect(z[i]).toBeGreaterThanOrEqual(z[i - 1] - 1e-12);
      }
      const mean = (v: number[]) => v.reduce((a, b) => a + b, 0) / v.length;
      expect(mean(z)).toBeCloseTo(mean(y), 10);
    }
  });

  it("handles the all-decreasing worst case", () => {
    expect(isotonicNonDecreasing([3, 2, 1])).toEqual([2, 2, 2]);
  });
});
