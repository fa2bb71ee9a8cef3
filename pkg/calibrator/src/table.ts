/**
 * Detector table export: the wire schema consumed by the link analyzer
 * (`agejam detector-table check` validates the same rules).
 */

import * as fs from "node:fs";

import { isotonicNonDecreasing } from "./isotonic.js";
import { TrainedDetector } from "./train.js";

export interface DetectorTable {
  packet_sizes: number[];
  snr_db: number[];
  /** row-major by packet size: p_detect[i][j] = size packet_sizes[i], SNR snr_db[j] */
  p_detect: number[][];
  p_false_alarm: number[][];
  metadata: Record<string, unknown>;
}

export function validateTable(t: DetectorTable): void {
  if (!Array.isArray(t.snr_db) || t.snr_db.length < 2) {
    throw new Error("detector table needs at least 2 SNR grid points");
  }
  for (let i = 1; i < t.snr_db.length; i++) {
    if (!(t.snr_db[i] > t.snr_db[i - 1])) {
      throw new Error("snr_db grid must be strictly increasing");
    }
  }
  if (!Array.isArray(t.packet_sizes) || t.packet_sizes.length === 0) {
    throw new Error("detector table needs at least one packet size");
  }
  if (t.packet_sizes.some((n) => !Number.isInteger(n) || n < 1)) {
    throw new Error("packet sizes must be positive integers");
  }
  for (const [name, grid] of [
    ["p_detect", t.p_detect],
    ["p_false_alarm", t.p_false_alarm],
  ] as const) {
    if (!Array.isArray(grid) || grid.length !== t.packet_sizes.length) {
      throw new Error(`${name} must have one row per packet size`);
    }
    for (const row of grid) {
      if (row.length !== t.snr_db.length) {
        throw new Error(`${name} rows must match the snr_db grid length`);
      }
      for (const v of row) {
        if (!(v >= 0 && v <= 1)) {
          throw new Error(`${name} must hold probabilities, got ${v}`);
        }
      }
    }
  }
}

/**
 * Assemble the export from trained detectors (one per packet size).
 * p_detect is isotonically smoothed in SNR; the false alarm is the pooled
 * noise-class rate, constant across bins by construction.
 */
export function tableFromDetectors(
  detectors: TrainedDetector[],
  metadata: Record<string, unknown> = {},
): DetectorTable {
  if (detectors.length === 0) throw new Error("no detectors to export");
  const snr = detectors[0].snrDb;
  for (const d of detectors) {
    if (d.snrDb.length !== snr.length || d.snrDb.some((v, i) => v !== snr[i])) {
      throw new Error("all detectors must share one SNR grid");
    }
  }
  const ordered = [...detectors].sort((a, b) => a.packetSize - b.packetSize);
  const table: DetectorTable = {
    packet_sizes: ordered.map((d) => d.packetSize),
    snr_db: [...snr],
    p_detect: ordered.map((d) => isotonicNonDecreasing(d.pDetect)),
    p_false_alarm: ordered.map((d) => snr.map(() => d.pFalseAlarm)),
    metadata: {
      source: "detector-calibrator",
      class_balance: "1:1 per SNR bin",
      isotonic_smoothing: true,
      seeds: ordered.map((d) => d.seed),
      epochs: ordered.map((d) => d.epochs),
      param_counts: ordered.map((d) => d.paramCount),
      raw_p_detect: ordered.map((d) => d.pDetect),
      p_false_alarm_per_bin: ordered.map((d) => d.pFalseAlarmPerBin),
      ...metadata,
    },
  };
  validateTable(table);
  return table;
}

export function writeTable(table: DetectorTable, path: string): void {
  validateTable(table); // refuse to write anything malformed
  fs.writeFileSync(path, JSON.stringify(table, null, 2) + "\n");
}

export function readTable(path: string): DetectorTable {
  const doc = JSON.parse(fs.readFileSync(path, "utf-8")) as DetectorTable;
  validateTable(doc);
  return doc;
}
