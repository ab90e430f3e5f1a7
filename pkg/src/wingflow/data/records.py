"""Binary sample format.

Layout (all little-endian): magic ``ATDS`` (4 bytes), u32 version=1, u32 H,
u32 W, then f32 blocks mesh [3*H*W], flow [3*H*W], oc [2], coefficients [3],
and trailing u32 shape_id, u32 condition_index.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import FormatError

MAGIC = b"ATDS"
VERSION = 1
_HEAD = struct.Struct("<4sIII")
_TAIL = struct.Struct("<II")


@dataclass
class SampleRecord:
    """One (shape, operating condition) sample as stored on disk."""

    mesh: np.ndarray          # [3, H, W] f32 cell centers
    flow: np.ndarray          # [3, H, W] f32 (cp, cf_tau, cf_z)
    oc: np.ndarray            # [2] f32 (mach, aoa_deg)
    coefficients: np.ndarray  # [3] f32 (cl, cd, cmz)
    shape_id: int
    condition_index: int

    def __post_init__(self):
        self.mesh = np.ascontiguousarray(self.mesh, dtype=np.float32)
        self.flow = np.ascontiguousarray(self.flow, dtype=np.float32)
        self.oc = np.ascontiguousarray(self.oc, dtype=np.float32)
        self.coefficients = np.ascontiguousarray(self.coefficients, dtype=np.float32)
        if self.mesh.ndim != 3 or self.mesh.shape[0] != 3 or self.mesh.shape != self.flow.shape:
            raise FormatError(f"mesh/flow must share [3, H, W], got {self.mesh.shape} / {self.flow.shape}")
        if self.oc.shape != (2,) or self.coefficients.shape != (3,):
            raise FormatError("oc must be [2] and coefficients [3]")


def write_sample(path: str | Path, record: SampleRecord) -> None:
    h, w = record.mesh.shape[1:]
    with open(path, "wb") as fh:
        fh.write(_HEAD.pack(MAGIC, VERSION, h, w))
        fh.write(record.mesh.astype("<f4").tobytes())
        fh.write(record.flow.astype("<f4").tobytes())
        fh.write(record.oc.astype("<f4").tobytes())
        fh.write(record.coefficients.astype("<f4").tobytes())
        fh.write(_TAIL.pack(record.shape_id, record.condition_index))


def read_sample(path: str | Path) -> SampleRecord:
    data = Path(path).read_bytes()
    if len(data) < _HEAD.size:
        raise FormatError(f"{path}: truncated header ({len(data)} bytes)")
    magic, version, h, w = _HEAD.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r} at offset 0")
    if version != VERSION:
        raise FormatError(f"{path}: unsupported version {version} at offset 4")
    offset = _HEAD.size
    sections = [("mesh", 3 * h * w), ("flow", 3 * h * w), ("oc", 2), ("coefficients", 3)]
    arrays = {}
    for name, count in sections:
        nbytes = 4 * count
        if len(data) < offset + nbytes:
            raise FormatError(f"{path}: truncated in section {name!r} at offset {offset}")
        arrays[name] = np.frombuffer(data, dtype="<f4", count=count, offset=offset).copy()
        offset += nbytes
    if len(data) < offset + _TAIL.size:
        raise FormatError(f"{path}: truncated before shape_id/condition_index at offset {offset}")
    shape_id, condition_index = _TAIL.unpack_from(data, offset)
    return SampleRecord(
        mesh=arrays["mesh"].reshape(3, h, w),
        flow=arrays["flow"].reshape(3, h, w),
        oc=arrays["oc"],
        coefficients=arrays["coefficients"],
        shape_id=shape_id,
        condition_index=condition_index,
    )
