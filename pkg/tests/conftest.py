"""Shared fixtures: grids, smooth random fields, and cached long simulations.

Long runs used by several acceptance criteria execute once per session.  Set
``VORTEXLAB_TEST_CACHE=<dir>`` to persist them across sessions while
iterating locally; the cache key is the full serialized configuration.
"""

from __future__ import annotations

import hashlib
import os
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

warnings.filterwarnings("ignore", message=".*TBB.*")

from vortexlab.config import RunConfig, serialize_config
from vortexlab.driver import execute
from vortexlab.grid import Field2D, apply_boundary, make_grid


@pytest.fixture(scope="session")
def paper_grid():
    return make_grid(200, 100, 20.0, 10.0)


@pytest.fixture()
def small_grid():
    return make_grid(64, 32, 20.0, 10.0)


@pytest.fixture()
def torus_grid():
    return make_grid(64, 64, np.pi, np.pi, bc_y="periodic")


def smooth_random_field(grid, seed=0, modes=3, amplitude=1.0, periodic_y=False):
    """Band-limited random field compatible with the grid's boundary kind."""
    rng = np.random.default_rng(seed)
    X = grid.x_coords[None, :]
    Y = grid.y_coords[:, None]
    v = np.zeros(grid.shape)
    for kx in range(1, modes + 1):
        for my in range(0, modes + 1):
            a, b = rng.normal(size=2)
            if periodic_y or grid.periodic_y:
                yfactor = np.cos(np.pi * my * (Y + grid.ly) / grid.ly + b)
            else:
                # cosine in y keeps even reflection exact at both walls
                yfactor = np.cos(np.pi * my * (Y + grid.ly) / (2.0 * grid.ly))
            v += a * np.cos(np.pi * kx * X / grid.lx + b * (my + 1)) * yfactor
    v *= amplitude / max(np.abs(v).max(), 1e-30)
    f = Field2D(grid)
    f.interior[:] = v
    return apply_boundary(f)


@pytest.fixture()
def random_field_factory():
    return smooth_random_field


# ---------------------------------------------------------------------------
# session-level simulation store for the acceptance gate
# ---------------------------------------------------------------------------

@dataclass
class SimData:
    """Arrays a finished simulation leaves behind for the detectors."""

    config: RunConfig
    series: dict[str, np.ndarray]
    snaps: list[tuple[float, np.ndarray]]
    failure_time: float | None


def _cache_dir() -> Path | None:
    path = os.environ.get("VORTEXLAB_TEST_CACHE")
    return Path(path) if path else None


def _cache_key(cfg: RunConfig, keep_snapshots: bool = False) -> str:
    tag = "S" if keep_snapshots else ""
    return hashlib.sha256(serialize_config(cfg).encode()).hexdigest()[:24] + tag


def _load_cached(cfg: RunConfig, keep_snapshots: bool = False) -> SimData | None:
    root = _cache_dir()
    if root is None:
        return None
    path = root / f"{_cache_key(cfg, keep_snapshots)}.npz"
    if not path.exists():
        return None
    with np.load(path, allow_pickle=False) as z:
        series = {k[7:]: z[k] for k in z.files if k.startswith("series_")}
        snap_times = z["snap_times"]
        snaps = [(float(t), z[f"snap_{i:04d}"]) for i, t in enumerate(snap_times)]
        failure = float(z["failure_time"][0]) if z["failure_time"].size else None
    return SimData(cfg, series, snaps, failure)


def _store_cached(cfg: RunConfig, data: SimData, keep_snapshots: bool = False) -> None:
    root = _cache_dir()
    if root is None:
        return
    root.mkdir(parents=True, exist_ok=True)
    payload = {f"series_{k}": v for k, v in data.series.items()}
    payload["snap_times"] = np.asarray([t for t, _ in data.snaps])
    for i, (_, arr) in enumerate(data.snaps):
        payload[f"snap_{i:04d}"] = arr
    payload["failure_time"] = (np.asarray([data.failure_time])
                               if data.failure_time is not None else np.asarray([]))
    np.savez_compressed(root / f"{_cache_key(cfg, keep_snapshots)}.npz", **payload)


def run_sim(cfg: RunConfig, keep_snapshots: bool = False, label: str = "") -> SimData:
    cached = _load_cached(cfg, keep_snapshots)
    if cached is not None:
        return cached
    out = execute(cfg, write_files=False, keep_snapshots=keep_snapshots)
    from vortexlab.diagnostics import DiagnosticsRecord

    names = DiagnosticsRecord.column_names()
    series = {n: np.asarray([getattr(r, n) for r in out.records]) for n in names}
    snaps = [(t, f.interior.copy()) for t, f in out.snapshots]
    data = SimData(cfg, series, snaps,
                   out.failure.time if out.failure is not None else None)
    _store_cached(cfg, data, keep_snapshots)
    return data


@pytest.fixture(scope="session")
def sim_store():
    """Memoizing runner shared by every acceptance criterion."""
    memo: dict[str, SimData] = {}

    def get(cfg: RunConfig, keep_snapshots: bool = False) -> SimData:
        key = _cache_key(cfg, keep_snapshots)
        if key not in memo:
            memo[key] = run_sim(cfg, keep_snapshots=keep_snapshots)
        return memo[key]

    return get


def extended_enabled() -> bool:
    return os.environ.get("VORTEXLAB_EXTENDED", "") == "1"
