"""Structured surface mesh: closed chordwise loops at evenly spaced span stations.

Node layout per section (H chordwise nodes, H even): node 0 is the lower TE,
cosine-clustered nodes run to the LE at node H/2, then cosine-clustered back
to the upper TE at node H-1. Cell k spans nodes (k, k+1 mod H), so cell H-1
is the single blunt-TE cell. The default resolution is 256 x 129 sections,
giving cell-centered arrays of shape [3, 256, 128].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import GeometryError
from . import cst
from .wing import WingShape

DEFAULT_N_CHORD = 256
DEFAULT_N_SPAN = 129

DEGENERATE_AREA = 1e-14


def chordwise_loop_xbar(n_chord: int) -> np.ndarray:
    """Unit chord fractions of the closed loop's nodes (lower TE -> LE -> upper TE)."""
    if n_chord % 2 or n_chord < 8:
        raise GeometryError(f"n_chord must be even and >= 8, got {n_chord}")
    half = n_chord // 2
    k_lo = np.arange(half + 1)
    lower = 0.5 * (1.0 + np.cos(np.pi * k_lo / half))
    m_up = np.arange(1, half)
    upper = 0.5 * (1.0 - np.cos(np.pi * m_up / (half - 1)))
    return np.concatenate([lower, upper])


def cell_geometry(corners: np.ndarray):
    """Normals and areas of quad cells from their corner nodes.

    ``corners`` has shape [..., 4, 3] ordered (A, B, C, D) = (k,j), (k+1,j),
    (k+1,j+1), (k,j+1). The area vector is half the cross product of the
    diagonals d1 = D - B and d2 = C - A, which points outward for the loop
    orientation above. Degenerate cells (area < 1e-14) get area 0, normal +y,
    and a raised flag.

    Returns (normals [..., 3], areas [...], degenerate mask [...]).
    """
    corners = np.asarray(corners, dtype=float)
    d1 = corners[..., 3, :] - corners[..., 1, :]
    d2 = corners[..., 2, :] - corners[..., 0, :]
    vec = 0.5 * np.cross(d1, d2)
    areas = np.linalg.norm(vec, axis=-1)
    degenerate = areas < DEGENERATE_AREA
    safe = np.where(degenerate, 1.0, areas)
    normals = vec / safe[..., None]
    normals[degenerate] = (0.0, 1.0, 0.0)
    areas = np.where(degenerate, 0.0, areas)
    return normals, areas, degenerate


@dataclass
class SurfaceMesh:
    """Cell-centered structured surface grid with per-cell frames.

    Arrays are [3, H, W] (vector fields), [H, W] (scalars) or per-axis
    metadata; H indexes the chordwise loop and W the spanwise cells.
    """

    nodes: np.ndarray          # [3, H, W+1]
    cell_centers: np.ndarray   # [3, H, W]
    normals: np.ndarray        # [3, H, W], unit outward
    areas: np.ndarray          # [H, W]
    stream_tangent: np.ndarray  # [3, H, W], unit, LE -> TE
    span_tangent: np.ndarray    # [3, H, W], unit, root -> tip
    degenerate: np.ndarray     # [H, W] bool
    xbar: np.ndarray           # [H], chord fraction per chordwise cell
    eta: np.ndarray            # [W], span fraction per spanwise cell
    chord: np.ndarray          # [W]
    twist_deg: np.ndarray      # [W]
    lower_mask: np.ndarray     # [H] bool (TE cell excluded)
    te_mask: np.ndarray        # [H] bool
    b_half: float
    c_mac: float
    root_le_y: float = 0.0     # moment reference point is (0, root_le_y, 0)
    s_ref: float = 1.0

    @property
    def shape(self) -> tuple[int, int]:
        return self.cell_centers.shape[1], self.cell_centers.shape[2]

    @property
    def n_cells(self) -> int:
        h, w = self.shape
        return h * w

    def total_area(self) -> float:
        return float(self.areas.sum())

    def closure_residual(self) -> float:
        """Norm of sum(n_i * A_i) over the wing joined with its spanwise mirror.

        The mirrored double closes the surface up to the two tip loops, which
        cancel by symmetry, so this residual is a roundoff-level quantity.
        """
        na = (self.normals * self.areas).reshape(3, -1).sum(axis=1)
        total = na + na * np.array([1.0, 1.0, -1.0])
        return float(np.linalg.norm(total))


def build_surface_mesh(
    shape: WingShape,
    n_chord: int = DEFAULT_N_CHORD,
    n_span: int = DEFAULT_N_SPAN,
) -> SurfaceMesh:
    """Deterministically mesh a wing at ``n_span`` evenly spaced sections."""
    shape.validate_sections()
    half = n_chord // 2
    xbar_nodes = chordwise_loop_xbar(n_chord)
    etas = np.linspace(0.0, 1.0, n_span)
    chord, x_le, y_le, twist, z = shape.section_frame(etas)

    nodes = np.empty((3, n_chord, n_span))
    for j, eta in enumerate(etas):
        airfoil = shape.airfoil_at(float(eta))
        y_unit = np.empty(n_chord)
        y_unit[: half + 1] = cst.evaluate(airfoil, xbar_nodes[: half + 1], "lower")
        y_unit[half + 1 :] = cst.evaluate(airfoil, xbar_nodes[half + 1 :], "upper")
        x = xbar_nodes * chord[j]
        y = y_unit * chord[j]
        th = np.radians(twist[j])  # positive twist pitches the nose up
        ct, st = np.cos(th), np.sin(th)
        nodes[0, :, j] = x * ct + y * st + x_le[j]
        nodes[1, :, j] = -x * st + y * ct + y_le[j]
        nodes[2, :, j] = z[j]

    # Quad corners; the chordwise loop wraps so cell H-1 closes the TE.
    nxt = np.roll(np.arange(n_chord), -1)
    a = nodes[:, :, :-1]
    b = nodes[:, nxt, :-1]
    c = nodes[:, nxt, 1:]
    d = nodes[:, :, 1:]
    corners = np.stack([a, b, c, d], axis=-1).transpose(1, 2, 3, 0)  # [H, W, 4, 3]

    normals, areas, degenerate = cell_geometry(corners)
    normals = normals.transpose(2, 0, 1)
    centers = corners.mean(axis=2).transpose(2, 0, 1)

    e_c = ((b + c) - (a + d)) / 2.0  # direction of increasing k
    e_s = ((c + d) - (a + b)) / 2.0  # direction of increasing j
    lower_mask = np.zeros(n_chord, dtype=bool)
    lower_mask[:half] = True
    e_c[:, lower_mask, :] *= -1.0  # lower surface runs TE -> LE; flip to LE -> TE
    stream_tangent = _normalize(e_c, fallback=(1.0, 0.0, 0.0))
    span_tangent = _normalize(e_s, fallback=(0.0, 0.0, 1.0))

    xbar_cells = 0.5 * (xbar_nodes + xbar_nodes[nxt])
    te_mask = np.zeros(n_chord, dtype=bool)
    te_mask[-1] = True
    eta_cells = 0.5 * (etas[:-1] + etas[1:])
    pf = shape.resolved_planform

    return SurfaceMesh(
        nodes=nodes,
        cell_centers=centers,
        normals=normals,
        areas=areas,
        stream_tangent=stream_tangent,
        span_tangent=span_tangent,
        degenerate=degenerate,
        xbar=xbar_cells,
        eta=eta_cells,
        chord=pf.chord(eta_cells),
        twist_deg=np.asarray(shape.twist_dist(eta_cells)),
        lower_mask=lower_mask,
        te_mask=te_mask,
        b_half=pf.b_half,
        c_mac=pf.mean_aerodynamic_chord(),
        root_le_y=float(y_le[0]),
    )


def _normalize(vec: np.ndarray, fallback: tuple[float, float, float]) -> np.ndarray:
    norm = np.linalg.norm(vec, axis=0)
    bad = norm < 1e-14
    out = vec / np.where(bad, 1.0, norm)
    out[:, bad] = np.asarray(fallback)[:, None]
    return out
