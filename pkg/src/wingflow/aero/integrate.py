"""Force and moment integration over the surface mesh.

Per cell the force is -Cp * n * A plus the tangential friction contribution
(Cf - (Cf . n) n) * A, with the friction vector reconstructed from its
streamwise and spanwise components along the mesh tangents. Lift and drag
follow by rotating the (x, y) force through the angle of attack; the pitching
moment is taken about the root leading edge and normalized by the mean
aerodynamic chord. The torch path is differentiable with respect to the flow,
which puts the integration inside the training loss.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from ..geometry.mesh import SurfaceMesh
from .types import AeroCoefficients, OperatingCondition, SurfaceFlow


@dataclass
class MeshBundle:
    """Mesh geometry packed as torch tensors for (batched) integration.

    All tensors carry a leading batch axis so stacked bundles of several
    shapes can be gathered per training sample.
    """

    normals: torch.Tensor        # [B, 3, H, W]
    areas: torch.Tensor          # [B, H, W]
    stream_tangent: torch.Tensor  # [B, 3, H, W]
    span_tangent: torch.Tensor    # [B, 3, H, W]
    centers_xy: torch.Tensor      # [B, 2, H, W]
    c_mac: torch.Tensor           # [B]
    s_ref: torch.Tensor           # [B]

    @classmethod
    def from_mesh(cls, mesh: SurfaceMesh, dtype=torch.float64) -> "MeshBundle":
        t = lambda a: torch.as_tensor(a, dtype=dtype)[None]
        # moment arms are taken about the root leading edge
        arm = mesh.cell_centers[:2] - np.array([0.0, mesh.root_le_y])[:, None, None]
        return cls(
            normals=t(mesh.normals),
            areas=t(mesh.areas),
            stream_tangent=t(mesh.stream_tangent),
            span_tangent=t(mesh.span_tangent),
            centers_xy=t(arm),
            c_mac=torch.tensor([mesh.c_mac], dtype=dtype),
            s_ref=torch.tensor([mesh.s_ref], dtype=dtype),
        )

    @classmethod
    def stack(cls, bundles: list["MeshBundle"]) -> "MeshBundle":
        return cls(**{
            name: torch.cat([getattr(b, name) for b in bundles])
            for name in ("normals", "areas", "stream_tangent", "span_tangent",
                         "centers_xy", "c_mac", "s_ref")
        })

    def gather(self, index: torch.Tensor) -> "MeshBundle":
        return MeshBundle(**{
            name: getattr(self, name)[index]
            for name in ("normals", "areas", "stream_tangent", "span_tangent",
                         "centers_xy", "c_mac", "s_ref")
        })

    def to(self, dtype) -> "MeshBundle":
        return MeshBundle(**{
            name: getattr(self, name).to(dtype)
            for name in ("normals", "areas", "stream_tangent", "span_tangent",
                         "centers_xy", "c_mac", "s_ref")
        })


def integrate_torch(
    geom: MeshBundle, flow: torch.Tensor, aoa_deg: torch.Tensor
) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """(cl, cd, cmz), each [B], from flow channels [B, 3, H, W]."""
    cp = flow[:, 0]
    cf_vec = (
        flow[:, 1].unsqueeze(1) * geom.stream_tangent
        + flow[:, 2].unsqueeze(1) * geom.span_tangent
    )
    cf_normal = (cf_vec * geom.normals).sum(dim=1, keepdim=True)
    cf_tangential = cf_vec - cf_normal * geom.normals
    force = (-cp.unsqueeze(1) * geom.normals + cf_tangential) * geom.areas.unsqueeze(1)

    total = force.sum(dim=(2, 3)) / geom.s_ref.unsqueeze(1)
    alpha = torch.deg2rad(aoa_deg.to(flow.dtype))
    ca, sa = torch.cos(alpha), torch.sin(alpha)
    cd = total[:, 0] * ca + total[:, 1] * sa
    cl = total[:, 1] * ca - total[:, 0] * sa

    moment = geom.centers_xy[:, 0] * force[:, 1] - geom.centers_xy[:, 1] * force[:, 0]
    cmz = moment.sum(dim=(1, 2)) / (geom.s_ref * geom.c_mac)
    return cl, cd, cmz


def integrate_coefficients(
    mesh: SurfaceMesh, flow: SurfaceFlow, oc: OperatingCondition
) -> AeroCoefficients:
    """Integrate a single flow field in float64."""
    geom = MeshBundle.from_mesh(mesh)
    flow_t = torch.as_tensor(np.ascontiguousarray(flow.stack()), dtype=torch.float64)[None]
    cl, cd, cmz = integrate_torch(geom, flow_t, torch.tensor([oc.aoa_deg], dtype=torch.float64))
    return AeroCoefficients(cl=float(cl[0]), cd=float(cd[0]), cmz=float(cmz[0]))


def integration_sensitivity(
    mesh: SurfaceMesh, oc: OperatingCondition
) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell (dCL/dCp, dCD/dCp), each [H, W].

    The coefficients are linear in Cp, so these are exact:
    dCF/dCp_i = -n_i * A_i / S_ref rotated through the angle of attack.
    """
    alpha = np.radians(oc.aoa_deg)
    nx, ny = mesh.normals[0], mesh.normals[1]
    base = mesh.areas / mesh.s_ref
    d_cl = (-ny * np.cos(alpha) + nx * np.sin(alpha)) * base
    d_cd = (-nx * np.cos(alpha) - ny * np.sin(alpha)) * base
    return d_cl, d_cd
