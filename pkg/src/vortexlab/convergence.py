"""Refinement harnesses: measured convergence orders of the difference
operators and of the time steppers.

The third x-derivative uses the 4-point form whose leading truncation error
is second order; the harness reports that honestly instead of patching the
stencil.
"""

from __future__ import annotations

import numpy as np

from .grid import Field2D, make_grid
from . import stencil
from .wyf import Model, ShearFlow, rhs
from .zk import PlaneSoliton, plane_soliton_field


def _order_fit(hs, errs) -> float:
    """Least-squares slope of log(err) against log(h)."""
    hs = np.log(np.asarray(hs, dtype=float))
    errs = np.log(np.asarray(errs, dtype=float))
    return float(np.polyfit(hs, errs, 1)[0])


def _max_err(field: Field2D, exact: np.ndarray) -> float:
    return float(np.abs(field.interior - exact).max())


def stencil_orders(sizes=(100, 200, 400), lx: float = 20.0, ly: float = 10.0) -> dict[str, float]:
    """Fitted orders of dx, dxx, dxxx, dy, dyy and the Laplacian on
    trigonometric test fields."""
    kx = 2.0 * np.pi / lx
    ky = np.pi / ly
    errs = {name: [] for name in ("dx", "dxx", "dxxx", "dy", "dyy", "laplacian")}
    hs = []
    for n in sizes:
        g = make_grid(n, n // 2, lx, ly)
        hs.append(g.hx)
        X = g.x_coords[None, :]
        Y = g.y_coords[:, None]

        u = Field2D.from_function(g, lambda x, y: np.sin(kx * x) + 0.0 * y)
        errs["dx"].append(_max_err(stencil.dx(u), kx * np.cos(kx * X) + 0.0 * Y))
        errs["dxx"].append(_max_err(stencil.dxx(u), -kx**2 * np.sin(kx * X) + 0.0 * Y))
        errs["dxxx"].append(_max_err(stencil.dxxx(u), -kx**3 * np.cos(kx * X) + 0.0 * Y))

        v = Field2D.from_function(g, lambda x, y: np.cos(ky * y) + 0.0 * x)
        errs["dy"].append(_max_err(stencil.dy(v), -ky * np.sin(ky * Y) + 0.0 * X))
        errs["dyy"].append(_max_err(stencil.dyy(v), -ky**2 * np.cos(ky * Y) + 0.0 * X))

        w = Field2D.from_function(g, lambda x, y: np.sin(kx * x) * np.cos(ky * y))
        lap_exact = -(kx**2 + ky**2) * np.sin(kx * X) * np.cos(ky * Y)
        errs["laplacian"].append(_max_err(stencil.laplacian(w), lap_exact))

    return {name: _order_fit(hs, e) for name, e in errs.items()}


def soliton_rhs_orders(sizes=(100, 200, 400), c: float = 1.0) -> dict[str, float]:
    """Order of the semi-discrete residual rhs + c*dx on the exact traveling
    wave (limited by the second-order third-derivative stencil)."""
    hs, errs = [], []
    model = Model("zk_limit", include_jacobian=False)
    for n in sizes:
        g = make_grid(n, n // 2, 20.0, 10.0)
        hs.append(g.hx)
        f = plane_soliton_field(g, PlaneSoliton(c), 0.0)
        resid = rhs(f, ShearFlow(), model).interior + c * stencil.dx(f).interior
        errs.append(float(np.abs(resid).max()))
    return {"zk_rhs_residual": _order_fit(hs, errs)}


def timestep_orders(dts=(2.0e-2, 1.0e-2, 5.0e-3), t_end: float = 0.2,
                    scheme: str = "rk4") -> float:
    """Self-convergence order of the time stepper on a short run: the
    difference between consecutive dt levels shrinks by ~2^order.

    The coarse grid keeps the dispersive stiffness low enough that the
    largest step is stable while its truncation error still clears the
    round-off floor.
    """
    from .timestep import IntegratorConfig, SimulationState, run

    g = make_grid(64, 32, 20.0, 10.0)
    f0 = plane_soliton_field(g, PlaneSoliton(1.0), 0.0)
    model = Model("zk_limit", include_jacobian=False)
    finals = []
    for dt in dts:
        cfg = IntegratorConfig(scheme, dt, t_end, snapshot_every=10**9,
                               series_every=10**9)
        res = run(SimulationState(f0.copy()), cfg, ShearFlow(), model)
        finals.append(res.state.xi.interior.copy())
    d1 = np.abs(finals[0] - finals[1]).max()
    d2 = np.abs(finals[1] - finals[2]).max()
    return float(np.log2(d1 / d2) / np.log2(dts[0] / dts[1]))
