"""Right-hand side of the evolution equations.

Two members of one family share the code path:

* ``kind="wyf"`` evolves xi under

      d(xi)/dT = 2 xi D_x(xi) + P(y) D_x(lap xi) - 2 Q(y) D_x(xi)
                 - 2 J[lap xi, xi],

  with P(y) = 1 + 2 u0(y) and Q(y) = y + f0 y + f1 y^2 / 2 for the linear
  zonal current u0(y) = f0 + f1 y.

* ``kind="zk_limit"`` evolves the cyclonic field phi = -xi under the plain
  ZK pattern d(phi)/dt = -2 phi D_x(phi) - D_x(lap phi); it is what the
  shear equation becomes at (f0, f1) = (-1, 0) with the Jacobian dropped,
  rewritten for the positive-soliton variable.

The x-derivative of the Laplacian is always D_xxx + D_xyy (two fused
stencils); the composition dx(laplacian(.)) serves as a test oracle only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import kernels
from .grid import Field2D, Grid2D, apply_boundary

MODEL_KINDS = ("wyf", "zk_limit")


@dataclass(frozen=True)
class ShearFlow:
    """Linear zonal current u0(y) = f0 + f1*y."""

    f0: float = 0.0
    f1: float = 0.0

    def u0(self, y):
        return self.f0 + self.f1 * y


@dataclass(frozen=True)
class Model:
    """Which member of the equation family to evolve."""

    kind: str = "wyf"
    include_jacobian: bool = True
    jacobian_order: int = 4

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"model kind must be one of {MODEL_KINDS}, got {self.kind!r}")
        if self.jacobian_order not in (2, 4):
            raise ValueError(f"jacobian_order must be 2 or 4, got {self.jacobian_order}")


@dataclass(frozen=True)
class ScaleParams:
    """O(1) scale constants removable by rescaling field and coordinates."""

    E: float
    S: float

    def __post_init__(self):
        if self.E <= 0 or self.S <= 0:
            raise ValueError("scale parameters must be positive")


def coeff_P(shear: ShearFlow, y):
    """P(y) = 1 + 2*u0(y)."""
    return 1.0 + 2.0 * shear.u0(y)


def coeff_Q(shear: ShearFlow, y):
    """Q(y) = y + d2(u0)/dy2 + integral_0^y u0 = y + f0*y + f1*y^2/2."""
    return y + shear.f0 * y + 0.5 * shear.f1 * y * y


def row_coefficients(grid: Grid2D, shear: ShearFlow, model: Model):
    """Per-row (P, qterm) vectors plus the scalar prefactors (a2, jc) that the
    fused kernel consumes; qterm already carries its -2 factor."""
    y = grid.y_coords
    if model.kind == "wyf":
        pcoef = coeff_P(shear, y)
        qterm = -2.0 * coeff_Q(shear, y)
        a2 = 2.0
        jc = -2.0 if model.include_jacobian else 0.0
    else:  # zk_limit: the (f0, f1) = (-1, 0) pattern in the phi variable
        pcoef = np.full(grid.ny + 1, -1.0)
        qterm = np.zeros(grid.ny + 1)
        a2 = -2.0
        jc = 2.0 if model.include_jacobian else 0.0
    return np.ascontiguousarray(pcoef), np.ascontiguousarray(qterm), a2, jc


def rhs(xi: Field2D, shear: ShearFlow, model: Model,
        zeta_scratch: np.ndarray | None = None) -> Field2D:
    """Evaluate d(xi)/dT.  Ghosts of ``xi`` must be current."""
    g = xi.grid
    if zeta_scratch is None:
        zeta_scratch = kernels().alloc(g.nx, g.ny)
    pcoef, qterm, a2, jc = row_coefficients(g, shear, model)
    out = Field2D.zeros(g)
    kernels().rhs(xi.values, out.values, zeta_scratch,
                  pcoef, qterm, a2, jc, model.jacobian_order,
                  g.nx, g.ny, g.hx, g.hy, g.periodic_y)
    return out


def normalize(eta_raw: Field2D, params: ScaleParams) -> Field2D:
    """Rescale amplitude by (1/2) S^(-2/3) E and shrink the coordinates by
    S^(-1/3); returns the rescaled field on the implied new grid."""
    g = eta_raw.grid
    s13 = params.S ** (-1.0 / 3.0)
    new_grid = Grid2D(g.nx, g.ny, g.lx * s13, g.ly * s13, g.bc_y)
    out = Field2D.zeros(new_grid)
    out.interior[:] = 0.5 * params.S ** (-2.0 / 3.0) * params.E * eta_raw.interior
    return apply_boundary(out)
