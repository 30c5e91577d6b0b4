"""Scalar run monitors.

Quadrature convention: midpoint rule along the periodic x direction,
trapezoid in y with half-weight wall rows.  Peaks are reported at grid
resolution with first-in-scan-order tie-breaking (row-major, y then x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .grid import Field2D, apply_boundary
from .stencil import dx, dxx, dy, dyy
from .wyf import ShearFlow


@dataclass(frozen=True)
class PlanetParams:
    """Planetary constants for converting slow time to physical time."""

    omega: float        # planet angular velocity [1/s]
    radius: float       # planet radius [m]
    latitude: float     # latitude of the vortex [rad]
    length_scale_L: float  # typical vortex size [m]
    gravity_g: float    # gravitational acceleration [m/s^2]
    depth_H: float      # equivalent depth of the active layer [m]

    def __post_init__(self):
        vals = [self.omega, self.radius, self.length_scale_L, self.gravity_g, self.depth_H]
        if any(v <= 0 for v in vals):
            raise ValueError("planet parameters must be positive")
        if not 0.0 < self.latitude < math.pi / 2:
            raise ValueError("latitude must lie in (0, pi/2)")


@dataclass
class DiagnosticsRecord:
    step: int
    time: float
    peak_value: float
    peak_x: float
    peak_y: float
    peak_value_at_y1: float
    mass: float
    p_tilde: float
    energy_zk: float
    momentum_ix: float
    momentum_iy: float
    boundary_flux_m: float
    p_tilde_drift_term: float
    ce_periodic: float

    @classmethod
    def column_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def row(self) -> list:
        return [getattr(self, f.name) for f in fields(self)]


def _weights_y(field: Field2D) -> np.ndarray:
    ny1 = field.grid.ny + 1
    w = np.ones(ny1)
    if not field.grid.periodic_y:
        w[0] = 0.5
        w[-1] = 0.5
    else:
        w[-1] = 0.0  # duplicated seam row
    return w


def integrate(field_values: np.ndarray, field: Field2D) -> float:
    """Quadrature of a sample array defined on the field's grid."""
    w = _weights_y(field)
    g = field.grid
    return float(g.hx * g.hy * np.sum(w @ field_values))


def peak(xi: Field2D) -> tuple[float, float, float, float]:
    """Global interior maximum (value, x, y) plus the maximum on the row
    nearest y = 1 (the fallback when the peak migrates to a wall)."""
    g = xi.grid
    interior = xi.interior
    flat = int(np.argmax(interior))
    j, i = divmod(flat, g.nx)
    j1 = int(round((1.0 + g.ly) / g.hy))
    j1 = min(max(j1, 0), g.ny)
    return (float(interior[j, i]), g.x(i), g.y(j), float(interior[j1].max()))


def mass(xi: Field2D) -> float:
    return integrate(xi.interior, xi)


def p_tilde(xi: Field2D) -> float:
    return integrate(0.5 * xi.interior ** 2, xi)


def energy_zk(xi: Field2D) -> float:
    gx = dx(xi).interior
    gy = dy(xi).interior
    u = xi.interior
    return integrate(0.5 * (gx * gx + gy * gy) - u ** 3 / 6.0, xi)


def momentum_i(xi: Field2D, time: float) -> tuple[float, float]:
    g = xi.grid
    u = xi.interior
    ix = integrate(g.x_coords[None, :] * u, xi) - time * p_tilde(xi)
    iy = integrate(g.y_coords[:, None] * u, xi)
    return ix, iy


def reconstruct_eta(xi: Field2D, shear: ShearFlow) -> Field2D:
    """eta = xi - (f0 y + f1 y^2 / 2); inverse of absorbing the zonal ramp."""
    g = xi.grid
    ramp = shear.f0 * g.y_coords + 0.5 * shear.f1 * g.y_coords ** 2
    out = Field2D.zeros(g)
    out.interior[:] = xi.interior - ramp[:, None]
    return apply_boundary(out)


def velocity(xi: Field2D, shear: ShearFlow) -> tuple[Field2D, Field2D]:
    """vx = -d(xi)/dy + u0(y) - u0(0), vy = d(xi)/dx (verbatim definition)."""
    g = xi.grid
    vx = dy(xi)
    vx.interior[:] = -vx.interior + (shear.u0(g.y_coords) - shear.u0(0.0))[:, None]
    apply_boundary(vx)
    return vx, dx(xi)


def boundary_flux_m(xi: Field2D, shear: ShearFlow) -> float:
    """Predicted d(mass)/dT: the y-wall surface term
    2 * int dx [(d2(eta)/dx2 + d2(eta)/dy2 + f1) * d(eta)/dx] (top - bottom)."""
    eta = reconstruct_eta(xi, shear)
    gx = dx(eta).interior
    lap = dxx(eta).interior + dyy(eta).interior + shear.f1
    g = xi.grid
    wall = lap * gx
    return float(2.0 * g.hx * (wall[-1].sum() - wall[0].sum()))


def p_tilde_surface_flux(xi: Field2D, shear: ShearFlow) -> float:
    """Surface (y-wall) contribution to d(P~)/dT."""
    g = xi.grid
    u = xi.interior
    gx = dx(xi).interior
    gy = dy(xi).interior
    gxy = dx(apply_boundary(dy(xi))).interior
    lap = dxx(xi).interior + dyy(xi).interior
    p_row = 1.0 + 2.0 * shear.u0(g.y_coords)
    term = -0.5 * p_row[:, None] * gx * gy + 0.5 * p_row[:, None] * u * gxy \
        + 2.0 * u * lap * gx
    return float(g.hx * (term[-1].sum() - term[0].sum()))


def p_tilde_drift_term(xi: Field2D, shear: ShearFlow) -> float:
    """Volume (non-surface) contribution to d(P~)/dT:
    f1 * int (d(xi)/dx d(xi)/dy - xi d2(xi)/dxdy)."""
    if shear.f1 == 0.0:
        return 0.0
    gx = dx(xi).interior
    gy = dy(xi).interior
    gxy = dx(apply_boundary(dy(xi))).interior
    return shear.f1 * integrate(gx * gy - xi.interior * gxy, xi)


def physical_time(T: float, params: PlanetParams) -> float:
    """Convert slow time to seconds via T~ = T / (f * s_hat * beta_hat^2)."""
    f = 2.0 * params.omega * math.sin(params.latitude)
    beta = 2.0 * params.omega * math.cos(params.latitude) / params.radius
    beta_hat = beta * params.length_scale_L / f
    lambda_r = math.sqrt(params.gravity_g * params.depth_H) / f
    s_hat = (lambda_r / params.length_scale_L) ** 2
    return T / (f * s_hat * beta_hat ** 2)


def collect_record(state, shear: ShearFlow, ce_value: float) -> DiagnosticsRecord:
    """Assemble one series row from a simulation state."""
    xi = state.xi
    pv, px, py, pv1 = peak(xi)
    ix, iy = momentum_i(xi, state.time)
    return DiagnosticsRecord(
        step=state.step,
        time=state.time,
        peak_value=pv,
        peak_x=px,
        peak_y=py,
        peak_value_at_y1=pv1,
        mass=mass(xi),
        p_tilde=p_tilde(xi),
        energy_zk=energy_zk(xi),
        momentum_ix=ix,
        momentum_iy=iy,
        boundary_flux_m=boundary_flux_m(xi, shear),
        p_tilde_drift_term=p_tilde_drift_term(xi, shear),
        ce_periodic=ce_value,
    )
