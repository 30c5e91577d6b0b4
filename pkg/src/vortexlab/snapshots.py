"""Binary field snapshots.

Layout (little endian), 48-byte header followed by the payload:

    bytes  0..7    magic "VTXFLD01"
    bytes  8..11   nx  (uint32)
    bytes 12..15   ny  (uint32)
    bytes 16..23   lx  (float64)
    bytes 24..31   ly  (float64)
    bytes 32..39   time (float64)
    byte  40       field id: 0 = xi, 1 = eta
    bytes 41..47   reserved, zero
    payload        nx*(ny+1) float64, row major, x fastest, interior only

Round trips are bit exact; the reader validates magic, dimensions and
payload length.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .grid import Field2D, make_grid

MAGIC = b"VTXFLD01"
HEADER_SIZE = 48
_HEADER = struct.Struct("<8sIIddd")  # magic, nx, ny, lx, ly, time
FIELD_IDS = {"xi": 0, "eta": 1}
FIELD_NAMES = {v: k for k, v in FIELD_IDS.items()}


class SnapshotFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SnapshotHeader:
    nx: int
    ny: int
    lx: float
    ly: float
    time: float
    field_id: str = "xi"

    def packed_size(self) -> int:
        return HEADER_SIZE + self.nx * (self.ny + 1) * 8


def write_snapshot(field: Field2D, time: float, field_id: str = "xi") -> bytes:
    """Serialize the interior samples (no ghosts) with the 48-byte header."""
    if field_id not in FIELD_IDS:
        raise SnapshotFormatError(f"field id must be one of {sorted(FIELD_IDS)}")
    g = field.grid
    head = _HEADER.pack(MAGIC, g.nx, g.ny, g.lx, g.ly, float(time))
    head += bytes([FIELD_IDS[field_id]]) + b"\x00" * 7
    payload = np.ascontiguousarray(field.interior, dtype="<f8").tobytes()
    return head + payload


def read_snapshot(blob: bytes) -> tuple[Field2D, SnapshotHeader]:
    """Parse a snapshot byte stream back into a field (boundary applied)."""
    if len(blob) < HEADER_SIZE:
        raise SnapshotFormatError(f"truncated header: {len(blob)} bytes")
    magic, nx, ny, lx, ly, time = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise SnapshotFormatError(f"bad magic {magic!r}")
    fid = blob[_HEADER.size]
    if fid not in FIELD_NAMES:
        raise SnapshotFormatError(f"unknown field id {fid}")
    if any(blob[_HEADER.size + 1:HEADER_SIZE]):
        raise SnapshotFormatError("reserved header bytes must be zero")
    if nx > 1_000_000 or ny > 1_000_000:
        raise SnapshotFormatError(f"implausible dimensions {nx} x {ny}")
    expected = HEADER_SIZE + nx * (ny + 1) * 8
    if len(blob) != expected:
        raise SnapshotFormatError(
            f"payload size mismatch: expected {expected} bytes, got {len(blob)}")
    header = SnapshotHeader(nx, ny, lx, ly, time, FIELD_NAMES[fid])
    grid = make_grid(nx, ny, lx, ly)
    data = np.frombuffer(blob, dtype="<f8", count=nx * (ny + 1),
                         offset=HEADER_SIZE).reshape(ny + 1, nx)
    return Field2D.from_interior(grid, data), header


def save_snapshot(path, field: Field2D, time: float, field_id: str = "xi") -> None:
    with open(path, "wb") as fh:
        fh.write(write_snapshot(field, time, field_id))


def load_snapshot(path) -> tuple[Field2D, SnapshotHeader]:
    with open(path, "rb") as fh:
        return read_snapshot(fh.read())
