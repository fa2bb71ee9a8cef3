import { beforeAll, describe, expect, it } from "vitest";

import { initBackend } from "../src/backend.js";
import { buildDetector, expectedParamCount } from "../src/model.js";

beforeAll(async () => {
  await initBackend();
});

describe("detector architecture", () => {
  it("hits the published parameter count for packet size 16", () => {
    expect(buildDetector(16).countParams()).toBe(37306);
  });

  it("hits the published parameter count for packet size 128", () => {
    expect(buildDetector(128).countParams()).toBe(266682);
  });

  it("matches the closed-form count for every supported size", () => {
    for (const n of [16, 32, 64, 128]) {
      expect(buildDetector(n).countParams()).toBe(expectedParamCount(n));
    }
  });

  it("widens the packet by the full conv padding", () => {
    const model = buildDetector(16);
    // input [2,16,1] -> conv output [2,18,32] -> flatten 1152
    const flatten = model.layers.find((l) => l.getClassName() === "Flatten")!;
    expect(flatten.outputShape).toEqual([null, 2 * 18 * 32]);
  });

  it("initializes reproducibly for a fixed seed", () => {
    const a = buildDetector(16, 99).getWeights().map((w) => w.dataSync()[0]);
    const b = buildDetector(16, 99).getWeights().map((w) => w.dataSync()[0]);
    expect(a).toEqual(b);
  });
});
