"""Benchmark the numba kernels against the pure-numpy fallback."""

from __future__ import annotations

import time

import numpy as np

from . import backend
from .grid import Field2D, apply_boundary, make_grid
from .timestep import _StepperWorkspace, _advance_rk4
from .wyf import Model, ShearFlow


def _steps_per_second(nsteps: int, nx: int, ny: int, model: Model) -> float:
    g = make_grid(nx, ny, 20.0, 10.0)
    rng = np.random.default_rng(12)
    f = Field2D(g)
    f.interior[:] = 0.01 * rng.normal(size=g.shape)
    apply_boundary(f)
    ws = _StepperWorkspace(g)
    shear = ShearFlow(0.0, 1.2)
    _advance_rk4(f, 3, 1.0e-5, shear, model, ws)  # warm-up / JIT
    t0 = time.perf_counter()
    _advance_rk4(f, nsteps, 1.0e-5, shear, model, ws)
    return nsteps / (time.perf_counter() - t0)


def compare_backends(nsteps: int = 200, nx: int = 200, ny: int = 100) -> dict:
    """Steps/second for both backends on the production-size grid."""
    results = {}
    previous = backend.backend_name()
    try:
        for name in ("numpy", "numba") if backend.numba_available() else ("numpy",):
            backend.set_backend(name)
            results[name] = {
                "wyf": _steps_per_second(nsteps, nx, ny, Model("wyf", True, 4)),
                "zk": _steps_per_second(nsteps, nx, ny, Model("zk_limit", False)),
            }
    finally:
        backend.set_backend(previous)
    return results


def format_report(results: dict) -> str:
    lines = [f"{'backend':<8} {'wyf steps/s':>12} {'zk steps/s':>12}"]
    for name, r in results.items():
        lines.append(f"{name:<8} {r['wyf']:>12.1f} {r['zk']:>12.1f}")
    if "numba" in results and "numpy" in results:
        s = results["numba"]["wyf"] / results["numpy"]["wyf"]
        lines.append(f"numba speedup on the full model: {s:.1f}x")
    return "\n".join(lines)
