"""Checkpoint file format.

Layout: magic ``ATCK``, u32 version, u32 header length, header JSON, then a
single f32 little-endian tensor blob. The header carries the model config,
normalization stats, training provenance, and a tensor index (name, shape,
element offset). Tensors are always stored as f32; loading into a float64
model upcasts (train-in-f64 -> serve-in-f32 therefore round-trips through the
same stored values).
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch

from ..data.training_data import FlowStats
from ..errors import FormatError
from ..model.config import ModelConfig
from ..model.network import build_model

MAGIC = b"ATCK"
VERSION = 1
_HEAD = struct.Struct("<4sII")


@dataclass
class CheckpointMeta:
    config: ModelConfig
    stats: FlowStats
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "stats": self.stats.to_json(),
            "provenance": self.provenance,
        }


def save_checkpoint(
    path: str | Path,
    model: torch.nn.Module,
    stats: FlowStats,
    config: ModelConfig,
    provenance: dict | None = None,
) -> None:
    state = model.state_dict()
    index = []
    offset = 0
    blobs = []
    for name, tensor in state.items():
        arr = tensor.detach().to(torch.float32).numpy().astype("<f4")
        index.append({"name": name, "shape": list(tensor.shape), "offset": offset})
        blobs.append(arr.tobytes())
        offset += arr.size
    header = {
        "meta": CheckpointMeta(config, stats, provenance or {}).to_json(),
        "tensors": index,
    }
    payload = json.dumps(header).encode()
    with open(path, "wb") as fh:
        fh.write(_HEAD.pack(MAGIC, VERSION, len(payload)))
        fh.write(payload)
        for blob in blobs:
            fh.write(blob)


def load_checkpoint(
    path: str | Path, dtype=torch.float32
) -> tuple[torch.nn.Module, CheckpointMeta]:
    data = Path(path).read_bytes()
    if len(data) < _HEAD.size:
        raise FormatError(f"{path}: truncated checkpoint header")
    magic, version, hlen = _HEAD.unpack_from(data, 0)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"{path}: unsupported checkpoint version {version}")
    try:
        header = json.loads(data[_HEAD.size : _HEAD.size + hlen])
        meta_json = header["meta"]
        index = header["tensors"]
    except (json.JSONDecodeError, UnicodeDecodeError, KeyError) as exc:
        raise FormatError(f"{path}: corrupt header ({exc})") from exc

    meta = CheckpointMeta(
        config=ModelConfig.from_json(meta_json["config"]),
        stats=FlowStats.from_json(meta_json["stats"]),
        provenance=meta_json.get("provenance", {}),
    )
    model = build_model(meta.config, seed=0)
    model = model.to(dtype)
    state = model.state_dict()

    stored = {entry["name"]: entry for entry in index}
    for name in state:
        if name not in stored:
            raise FormatError(f"{path}: tensor {name!r} missing from checkpoint")
    for name in stored:
        if name not in state:
            raise FormatError(f"{path}: unexpected tensor {name!r} in checkpoint")

    base = _HEAD.size + hlen
    new_state = {}
    for entry in index:
        name, shape, offset = entry["name"], tuple(entry["shape"]), entry["offset"]
        want = tuple(state[name].shape)
        if shape != want:
            raise FormatError(f"{path}: tensor {name!r} shape {shape} != expected {want}")
        numel = int(np.prod(shape)) if shape else 1
        start = base + 4 * offset
        if len(data) < start + 4 * numel:
            raise FormatError(f"{path}: tensor {name!r} blob truncated")
        arr = np.frombuffer(data, dtype="<f4", count=numel, offset=start).reshape(shape)
        new_state[name] = torch.as_tensor(arr.copy()).to(dtype)
    model.load_state_dict(new_state)
    model.eval()
    return model, meta
