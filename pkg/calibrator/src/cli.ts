#!/usr/bin/env node
/** calibrate CLI: train the detector and export a table file. */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { calibrate } from "./calibrate.js";

async function main(): Promise<number> {
  const argv = await yargs(hideBin(process.argv))
    .scriptName("calibrate")
    .usage(
      "$0 --packet-size N --snr-min -5 --snr-max 10 --step 1 --out table.json",
    )
    .option("packet-size", {
      type: "number",
      array: true,
      demandOption: true,
      describe: "packet size(s) in I/Q samples (16/32/64/128); repeatable",
    })
    .option("snr-min", { type: "number", default: -5, describe: "lowest SNR bin (dB)" })
    .option("snr-max", { type: "number", default: 10, describe: "highest SNR bin (dB)" })
    .option("step", { type: "number", default: 1, describe: "SNR grid step (dB)" })
    .option("out", { type: "string", demandOption: true, describe: "output table path" })
    .option("n-per-bin", { type: "number", default: 1000, describe: "examples per class per bin" })
    .option("epochs", { type: "number", default: 12 })
    .option("seed", { type: "number", default: 20260809 })
    .option("quiet", { type: "boolean", default: false })
    .strict()
    .parse();

  try {
    await calibrate({
      packetSizes: argv["packet-size"] as number[],
      snrMinDb: argv["snr-min"],
      snrMaxDb: argv["snr-max"],
      stepDb: argv.step,
      nPerBin: argv["n-per-bin"],
      epochs: argv.epochs,
      seed: argv.seed,
      out: argv.out,
      log: argv.quiet ? undefined : (msg) => console.error(msg),
    });
  } catch (err) {
    console.error(JSON.stringify({ error: "calibrate", message: String(err instanceof Error ? err.message : err) }));
    return 1;
  }
  return 0;
}

main().then((code) => {
  process.exitCode = code;
});
