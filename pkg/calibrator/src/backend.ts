/** Backend selection: SIMD wasm when available, plain CPU otherwise. */

import * as tf from "@tensorflow/tfjs";
import { createRequire } from "node:module";
import * as path from "node:path";

let ready: Promise<string> | null = null;

export function initBackend(): Promise<string> {
  if (ready === null) {
    ready = (async () => {
      if (process.env.CALIBRATOR_NO_WASM !== "1") {
        try {
          const { setWasmPaths } = await import("@tensorflow/tfjs-backend-wasm");
          const require = createRequire(import.meta.url);
          const wasmDir = path.dirname(
            require.resolve("@tensorflow/tfjs-backend-wasm/dist/tfjs-backend-wasm.wasm"),
          );
          setWasmPaths(wasmDir + path.sep);
          if (await tf.setBackend("wasm")) {
            await tf.ready();
            return tf.getBackend();
          }
        } catch {
          // fall through to the default JS backend
        }
      }
      await tf.setBackend("cpu");
      await tf.ready();
      return tf.getBackend();
    })();
  }
  return ready;
}
