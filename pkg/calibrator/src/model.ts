/**
 * The binary signal-presence classifier.
 *
 * Input is the raw packet as a 2 x N real image (row 0 = I, row 1 = Q).
 * One Conv2D with 32 filters and kernel (1,3) in full-padding mode (the
 * width grows to N+2), then Flatten, Dense 32, Dropout 0.1, Dense 8,
 * Dropout 0.1 and a 2-way softmax. The layout is pinned by the published
 * parameter counts: 37,306 weights at packet size 16 and 266,682 at 128.
 *
 * The convolution is expressed as shifted slices + one matmul (im2col for
 * a height-1 kernel). That is algebraically the same layer with the same
 * 128 weights, but it trains on the wasm backend, which lacks the conv
 * backprop kernels and is an order of magnitude faster than plain JS.
 */

import * as tf from "@tensorflow/tfjs";

export const CONV_FILTERS = 32;
const KERNEL_W = 3;

export class FullConv1x3 extends tf.layers.Layer {
  static className = "FullConv1x3";
  private readonly filters: number;
  private readonly seed: number;
  private kernel!: tf.LayerVariable;
  private bias!: tf.LayerVariable;
  private width = 0;

  constructor(filters: number, seed: number) {
    super({ name: `full_conv1x3_${seed}` });
    this.filters = filters;
    this.seed = seed;
  }

  override build(inputShape: tf.Shape | tf.Shape[]): void {
    const shape = (Array.isArray(inputShape[0]) ? inputShape[0] : inputShape) as number[];
    this.width = shape[2] as number;
    this.kernel = this.addWeight(
      "kernel",
      [KERNEL_W, this.filters],
      "float32",
      tf.initializers.glorotUniform({ seed: this.seed }),
    );
    this.bias = this.addWeight("bias", [this.filters], "float32", tf.initializers.zeros());
    super.build(inputShape);
  }

  override computeOutputShape(inputShape: tf.Shape): tf.Shape {
    return [inputShape[0], inputShape[1], (inputShape[2] as number) + KERNEL_W - 1, this.filters];
  }

  override call(inputs: tf.Tensor | tf.Tensor[]): tf.Tensor {
    return tf.tidy(() => {
      const x = Array.isArray(inputs) ? inputs[0] : inputs;
      const w = this.width + KERNEL_W - 1;
      // full padding: every alignment of the kernel with the row
      const p = tf.pad(x, [
        [0, 0],
        [0, 0],
        [KERNEL_W - 1, KERNEL_W - 1],
        [0, 0],
      ]);
      const windows = tf.concat(
        [
          tf.slice(p, [0, 0, 0, 0], [-1, -1, w, -1]),
          tf.slice(p, [0, 0, 1, 0], [-1, -1, w, -1]),
          tf.slice(p, [0, 0, 2, 0], [-1, -1, w, -1]),
        ],
        3,
      );
      const flat = tf.reshape(windows, [-1, KERNEL_W]);
      const y = tf.add(tf.matMul(flat, this.kernel.read()), this.bias.read());
      return tf.relu(tf.reshape(y, [-1, 2, w, this.filters]));
    });
  }

  override getConfig(): tf.serialization.ConfigDict {
    return { ...super.getConfig(), filters: this.filters, seed: this.seed };
  }
}

tf.serialization.registerClass(FullConv1x3);

export function buildDetector(packetSize: number, seed = 1): tf.Sequential {
  const model = tf.sequential();
  model.add(tf.layers.inputLayer({ inputShape: [2, packetSize, 1] }));
  model.add(new FullConv1x3(CONV_FILTERS, seed));
  model.add(tf.layers.flatten());
  model.add(
    tf.layers.dense({
      units: 32,
      activation: "relu",
      kernelInitializer: tf.initializers.glorotUniform({ seed: seed + 1 }),
    }),
  );
  model.add(tf.layers.dropout({ rate: 0.1, seed: seed + 2 }));
  model.add(
    tf.layers.dense({
      units: 8,
      activation: "relu",
      kernelInitializer: tf.initializers.glorotUniform({ seed: seed + 3 }),
    }),
  );
  model.add(tf.layers.dropout({ rate: 0.1, seed: seed + 4 }));
  model.add(
    tf.layers.dense({
      units: 2,
      activation: "softmax",
      kernelInitializer: tf.initializers.glorotUniform({ seed: seed + 5 }),
    }),
  );
  model.compile({
    optimizer: tf.train.adam(),
    loss: "categoricalCrossentropy",
    metrics: ["accuracy"],
  });
  return model;
}

/** closed-form weight count of the stack above */
export function expectedParamCount(packetSize: number): number {
  const conv = (1 * KERNEL_W * 1 + 1) * CONV_FILTERS;
  const flat = 2 * (packetSize + KERNEL_W - 1) * CONV_FILTERS;
  return conv + (flat + 1) * 32 + (32 + 1) * 8 + (8 + 1) * 2;
}
