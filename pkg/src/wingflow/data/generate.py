"""Oracle-driven dataset generation and the on-disk dataset layout.

A dataset directory holds one ``.atds`` file per (shape, condition) sample, a
``shapes.jsonl`` with the exact wing parameters (one line per shape, so
geometry can be rebuilt deterministically), and a ``manifest.json``. Shape i
is drawn from an rng seeded by (seed, i), so regeneration is bit-identical
and independent of the worker count.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..aero.integrate import integrate_coefficients
from ..aero.oracle import oracle_flow
from ..aero.types import SurfaceFlow
from ..errors import FormatError
from ..geometry.mesh import DEFAULT_N_CHORD, DEFAULT_N_SPAN, build_surface_mesh
from ..geometry.wing import WingShape
from .design_space import DesignSpace, sample_conditions, sample_shape
from .records import SampleRecord, read_sample, write_sample

MANIFEST_VERSION = 1


@dataclass
class DatasetManifest:
    version: int
    kind: str
    count: int
    seed: int
    n_shapes: int
    n_conditions: int
    n_chord: int
    n_span: int
    stats: dict
    design_space: dict

    def to_json(self) -> dict:
        return self.__dict__.copy()

    @classmethod
    def from_json(cls, obj: dict) -> "DatasetManifest":
        return cls(**{k: obj[k] for k in cls.__dataclass_fields__})


def sample_filename(shape_id: int, condition_index: int) -> str:
    return f"sample_{shape_id:05d}_{condition_index:02d}.atds"


def generate_dataset(
    space: DesignSpace,
    n_shapes: int,
    out_dir: str | Path,
    seed: int = 0,
    workers: int = 1,
    n_conditions: int = 8,
    n_chord: int = DEFAULT_N_CHORD,
    n_span: int = DEFAULT_N_SPAN,
) -> DatasetManifest:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def build_one(i: int):
        rng = np.random.default_rng(np.random.SeedSequence([seed, i]))
        shape = sample_shape(space, rng)
        conditions = sample_conditions(space, rng, n_conditions)
        mesh = build_surface_mesh(shape, n_chord, n_span)
        records = []
        for ci, oc in enumerate(conditions):
            flow32 = oracle_flow(mesh, shape, oc).stack().astype(np.float32)
            # integrate from the stored f32 values so re-integration is exact
            coeff = integrate_coefficients(mesh, SurfaceFlow.from_array(flow32), oc)
            records.append(
                SampleRecord(
                    mesh=mesh.cell_centers.astype(np.float32),
                    flow=flow32,
                    oc=np.array([oc.mach, oc.aoa_deg], dtype=np.float32),
                    coefficients=coeff.as_array().astype(np.float32),
                    shape_id=i,
                    condition_index=ci,
                )
            )
        return shape, records

    results: list[tuple[WingShape, list[SampleRecord]]] = [None] * n_shapes
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for i, res in enumerate(pool.map(build_one, range(n_shapes))):
                results[i] = res
    else:
        for i in range(n_shapes):
            results[i] = build_one(i)

    mesh_sum = np.zeros(3)
    mesh_sq = np.zeros(3)
    flow_sum = np.zeros(3)
    flow_sq = np.zeros(3)
    count = 0
    n_cells = 0
    expected = n_shapes * n_conditions
    try:
        for i, (shape, records) in enumerate(results):
            for rec in records:
                write_sample(out / sample_filename(rec.shape_id, rec.condition_index), rec)
                m = rec.mesh.astype(np.float64).reshape(3, -1)
                f = rec.flow.astype(np.float64).reshape(3, -1)
                mesh_sum += m.sum(axis=1)
                mesh_sq += (m**2).sum(axis=1)
                flow_sum += f.sum(axis=1)
                flow_sq += (f**2).sum(axis=1)
                count += 1
                n_cells = m.shape[1]

        with open(out / "shapes.jsonl", "w") as fh:
            for shape, _ in results:
                fh.write(json.dumps(shape.to_json()) + "\n")
    except OSError as exc:
        raise FormatError(
            f"dataset generation aborted after writing {count}/{expected} samples: {exc}"
        ) from exc

    n = count * n_cells
    mesh_mean = mesh_sum / n
    flow_mean = flow_sum / n
    stats = {
        "mesh_mean": mesh_mean.tolist(),
        "mesh_std": np.sqrt(np.maximum(mesh_sq / n - mesh_mean**2, 1e-12)).tolist(),
        "flow_mean": flow_mean.tolist(),
        "flow_std": np.sqrt(np.maximum(flow_sq / n - flow_mean**2, 1e-12)).tolist(),
    }
    manifest = DatasetManifest(
        version=MANIFEST_VERSION,
        kind=space.kind,
        count=count,
        seed=seed,
        n_shapes=n_shapes,
        n_conditions=n_conditions,
        n_chord=n_chord,
        n_span=n_span,
        stats=stats,
        design_space=space.to_json(),
    )
    _atomic_write_json(out / "manifest.json", manifest.to_json())
    return manifest


def _atomic_write_json(path: Path, obj: dict) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(obj, fh, indent=1)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_manifest(dataset_dir: str | Path) -> DatasetManifest:
    path = Path(dataset_dir) / "manifest.json"
    if not path.exists():
        raise FormatError(f"no manifest.json in {dataset_dir}")
    manifest = DatasetManifest.from_json(json.loads(path.read_text()))
    census = len(list(Path(dataset_dir).glob("sample_*.atds")))
    if census != manifest.count:
        raise FormatError(f"manifest count {manifest.count} != file census {census}")
    return manifest


def load_shapes(dataset_dir: str | Path) -> list[WingShape]:
    path = Path(dataset_dir) / "shapes.jsonl"
    return [WingShape.from_json(json.loads(line)) for line in path.read_text().splitlines()]


def iter_records(dataset_dir: str | Path):
    """Records in (shape_id, condition_index) order."""
    for path in sorted(Path(dataset_dir).glob("sample_*.atds")):
        yield read_sample(path)
