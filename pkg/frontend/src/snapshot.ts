/**
 * Independent reader for the vortexlab binary snapshot format.
 *
 * Layout (little endian): 48-byte header then the payload.
 *   bytes  0..7   magic "VTXFLD01"
 *   bytes  8..11  nx (uint32)
 *   bytes 12..15  ny (uint32)
 *   bytes 16..23  lx (float64)
 *   bytes 24..31  ly (float64)
 *   bytes 32..39  time (float64)
 *   byte  40      field id: 0 = xi, 1 = eta
 *   bytes 41..47  reserved, must be zero
 *   payload       nx*(ny+1) float64 samples, row major, x fastest
 */

import * as fs from "fs";

export const MAGIC = "VTXFLD01";
export const HEADER_SIZE = 48;

export interface Snapshot {
  nx: number;
  ny: number;
  lx: number;
  ly: number;
  time: number;
  fieldId: "xi" | "eta";
  /** row-major samples, rows = ny + 1, columns = nx */
  values: Float64Array;
}

export class SnapshotFormatError extends Error {
  constructor(message: string, public readonly byteOffset: number) {
    super(`byte ${byteOffset}: ${message}`);
    this.name = "SnapshotFormatError";
  }
}

export function parseSnapshot(buf: Buffer): Snapshot {
  if (buf.length < HEADER_SIZE) {
    throw new SnapshotFormatError(
      `truncated header (${buf.length} of ${HEADER_SIZE} bytes)`, buf.length);
  }
  const magic = buf.toString("latin1", 0, 8);
  if (magic !== MAGIC) {
    throw new SnapshotFormatError(`bad magic ${JSON.stringify(magic)}`, 0);
  }
  const nx = buf.readUInt32LE(8);
  const ny = buf.readUInt32LE(12);
  if (nx > 1_000_000 || ny > 1_000_000 || nx === 0 || ny === 0) {
    throw new SnapshotFormatError(`implausible dimensions ${nx} x ${ny}`, 8);
  }
  const lx = buf.readDoubleLE(16);
  const ly = buf.readDoubleLE(24);
  const time = buf.readDoubleLE(32);
  const idByte = buf.readUInt8(40);
  if (idByte !== 0 && idByte !== 1) {
    throw new SnapshotFormatError(`unknown field id ${idByte}`, 40);
  }
  for (let k = 41; k < HEADER_SIZE; k++) {
    if (buf.readUInt8(k) !== 0) {
      throw new SnapshotFormatError("reserved header bytes must be zero", k);
    }
  }
  const count = nx * (ny + 1);
  const expected = HEADER_SIZE + count * 8;
  if (buf.length !== expected) {
    throw new SnapshotFormatError(
      `payload size mismatch: expected ${expected} bytes, found ${buf.length}`,
      Math.min(buf.length, expected));
  }
  const values = new Float64Array(count);
  for (let k = 0; k < count; k++) {
    values[k] = buf.readDoubleLE(HEADER_SIZE + 8 * k);
  }
  return { nx, ny, lx, ly, time, fieldId: idByte === 0 ? "xi" : "eta", values };
}

export function loadSnapshot(path: string): Snapshot {
  return parseSnapshot(fs.readFileSync(path));
}

export function sampleAt(snap: Snapshot, j: number, i: number): number {
  return snap.values[j * snap.nx + i];
}

export function xCoord(snap: Snapshot, i: number): number {
  return -snap.lx + (2 * snap.lx / snap.nx) * i;
}

export function yCoord(snap: Snapshot, j: number): number {
  return -snap.ly + (2 * snap.ly / snap.ny) * j;
}
