"""In-memory tensors for training and evaluation.

Loads a generated dataset directory, rebuilds each shape's mesh geometry
(deterministic from shapes.jsonl), and packs everything into torch tensors.
Per-channel normalization statistics are always computed from the samples
actually present, so fold subsets get stats from their own training split.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch

from ..aero.integrate import MeshBundle
from ..geometry.mesh import build_surface_mesh
from .generate import iter_records, load_manifest, load_shapes


@dataclass
class FlowStats:
    """Per-channel mean/std of mesh coordinates and flow fields."""

    mesh_mean: np.ndarray
    mesh_std: np.ndarray
    flow_mean: np.ndarray
    flow_std: np.ndarray

    def to_json(self) -> dict:
        return {k: getattr(self, k).tolist() for k in
                ("mesh_mean", "mesh_std", "flow_mean", "flow_std")}

    @classmethod
    def from_json(cls, obj: dict) -> "FlowStats":
        return cls(**{k: np.asarray(obj[k], dtype=float) for k in
                      ("mesh_mean", "mesh_std", "flow_mean", "flow_std")})

    def torch_views(self, dtype=torch.float32) -> dict:
        return {
            k: torch.as_tensor(getattr(self, k), dtype=dtype).view(1, 3, 1, 1)
            for k in ("mesh_mean", "mesh_std", "flow_mean", "flow_std")
        }


@dataclass
class TrainingData:
    """Stacked samples plus per-shape integration geometry."""

    mesh: torch.Tensor         # [N, 3, H, W] raw coordinates
    flow: torch.Tensor         # [N, 3, H, W] raw fields
    cond: torch.Tensor         # [N, 2] (mach, aoa_deg)
    coeffs: torch.Tensor       # [N, 3]
    shape_index: torch.Tensor  # [N] index into geom
    geom: MeshBundle           # stacked per shape
    shape_ids: np.ndarray      # [N] dataset-level shape ids

    def __len__(self) -> int:
        return self.mesh.shape[0]

    @classmethod
    def from_dir(cls, dataset_dir: str | Path, dtype=torch.float32) -> "TrainingData":
        manifest = load_manifest(dataset_dir)
        shapes = load_shapes(dataset_dir)
        bundles = []
        for shape in shapes:
            m = build_surface_mesh(shape, manifest.n_chord, manifest.n_span)
            bundles.append(MeshBundle.from_mesh(m, dtype=torch.float64).to(dtype))
        records = list(iter_records(dataset_dir))
        mesh = torch.stack([torch.as_tensor(r.mesh, dtype=dtype) for r in records])
        flow = torch.stack([torch.as_tensor(r.flow, dtype=dtype) for r in records])
        cond = torch.stack([torch.as_tensor(r.oc, dtype=dtype) for r in records])
        coeffs = torch.stack([torch.as_tensor(r.coefficients, dtype=dtype) for r in records])
        # bundles are built in shape order, so shape_id indexes them directly
        shape_ids = np.array([r.shape_id for r in records])
        return cls(
            mesh=mesh,
            flow=flow,
            cond=cond,
            coeffs=coeffs,
            shape_index=torch.as_tensor(shape_ids, dtype=torch.long),
            geom=MeshBundle.stack(bundles),
            shape_ids=shape_ids,
        )

    def subset(self, indices) -> "TrainingData":
        idx = torch.as_tensor(np.asarray(indices), dtype=torch.long)
        return TrainingData(
            mesh=self.mesh[idx],
            flow=self.flow[idx],
            cond=self.cond[idx],
            coeffs=self.coeffs[idx],
            shape_index=self.shape_index[idx],
            geom=self.geom,
            shape_ids=self.shape_ids[idx.numpy()],
        )

    def compute_stats(self) -> FlowStats:
        mesh = self.mesh.to(torch.float64)
        flow = self.flow.to(torch.float64)
        dims = (0, 2, 3)
        return FlowStats(
            mesh_mean=mesh.mean(dim=dims).numpy(),
            mesh_std=np.maximum(mesh.std(dim=dims).numpy(), 1e-8),
            flow_mean=flow.mean(dim=dims).numpy(),
            flow_std=np.maximum(flow.std(dim=dims).numpy(), 1e-8),
        )

    def to(self, dtype) -> "TrainingData":
        return TrainingData(
            mesh=self.mesh.to(dtype),
            flow=self.flow.to(dtype),
            cond=self.cond.to(dtype),
            coeffs=self.coeffs.to(dtype),
            shape_index=self.shape_index,
            geom=self.geom.to(dtype),
            shape_ids=self.shape_ids,
        )
