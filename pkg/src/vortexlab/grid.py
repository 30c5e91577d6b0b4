"""Computational domain and field storage.

The channel is periodic in x and bounded by free-slip walls in y.  Sample
columns cover x = -lx .. lx - hx (nx columns, no duplicated seam) and sample
rows cover y = -ly .. ly (ny + 1 rows, both walls included).  Fields carry
two ghost layers on every side; the free-slip condition is realized as an
even reflection of the field across the wall rows, which makes the centered
first y-derivative vanish there exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import kernels

GHOST = 2

MIN_POINTS = 8  # widest stencil spans 5 points and needs 2 ghost layers


@dataclass(frozen=True)
class Grid2D:
    """Rectangular domain geometry: counts, half-extents, y-boundary kind."""

    nx: int
    ny: int
    lx: float
    ly: float
    bc_y: str = "freeslip"  # "freeslip" | "periodic" (periodic y is a test torus)

    @property
    def hx(self) -> float:
        return 2.0 * self.lx / self.nx

    @property
    def hy(self) -> float:
        return 2.0 * self.ly / self.ny

    @property
    def periodic_y(self) -> bool:
        return self.bc_y == "periodic"

    @property
    def shape(self) -> tuple[int, int]:
        """Interior sample shape (rows, cols)."""
        return (self.ny + 1, self.nx)

    def x(self, i: int) -> float:
        return -self.lx + i * self.hx

    def y(self, j: int) -> float:
        return -self.ly + j * self.hy

    @property
    def x_coords(self) -> np.ndarray:
        return -self.lx + np.arange(self.nx) * self.hx

    @property
    def y_coords(self) -> np.ndarray:
        return -self.ly + np.arange(self.ny + 1) * self.hy


def make_grid(nx: int, ny: int, lx: float, ly: float, bc_y: str = "freeslip") -> Grid2D:
    """Build a validated grid; spacings follow hx = 2*lx/nx, hy = 2*ly/ny."""
    if nx < MIN_POINTS or ny < MIN_POINTS:
        raise ValueError(f"grid needs nx, ny >= {MIN_POINTS}, got ({nx}, {ny})")
    if lx <= 0 or ly <= 0:
        raise ValueError(f"domain half-extents must be positive, got ({lx}, {ly})")
    if bc_y not in ("freeslip", "periodic"):
        raise ValueError(f"unknown y boundary kind {bc_y!r}")
    return Grid2D(int(nx), int(ny), float(lx), float(ly), bc_y)


class Field2D:
    """Scalar samples on a Grid2D, padded with two ghost layers per side."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid2D, values: np.ndarray | None = None):
        self.grid = grid
        ny1, nx = grid.shape
        if values is None:
            values = np.zeros((ny1 + 4, nx + 4), dtype=np.float64)
        if values.shape != (ny1 + 4, nx + 4):
            raise ValueError(
                f"padded array must have shape {(ny1 + 4, nx + 4)}, got {values.shape}"
            )
        self.values = values

    @property
    def interior(self) -> np.ndarray:
        """(ny+1, nx) view of the sample points (no ghosts)."""
        ny1, nx = self.grid.shape
        return self.values[GHOST:GHOST + ny1, GHOST:GHOST + nx]

    @classmethod
    def zeros(cls, grid: Grid2D) -> "Field2D":
        return cls(grid)

    @classmethod
    def from_interior(cls, grid: Grid2D, interior: np.ndarray) -> "Field2D":
        f = cls(grid)
        f.interior[:] = np.asarray(interior, dtype=np.float64)
        return apply_boundary(f)

    @classmethod
    def from_function(cls, grid: Grid2D, fn) -> "Field2D":
        """Sample fn(x, y) on the grid (broadcast over coordinate arrays)."""
        X = grid.x_coords[None, :]
        Y = grid.y_coords[:, None]
        return cls.from_interior(grid, np.broadcast_to(fn(X, Y), grid.shape))

    def copy(self) -> "Field2D":
        return Field2D(self.grid, self.values.copy())

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.interior).all())


def apply_boundary(f: Field2D) -> Field2D:
    """Refresh ghost cells in place: periodic wrap in x; even reflection
    about the wall rows in y (or periodic wrap on a test torus)."""
    g = f.grid
    kernels().fill_ghosts(f.values, g.nx, g.ny, g.periodic_y)
    return f


def sample_gaussian(grid: Grid2D, amplitude: float, x0: float, y0: float) -> Field2D:
    """amplitude * exp(-(x - x0)^2 - (y - y0)^2), boundary applied."""
    if not np.isfinite(amplitude):
        raise ValueError("amplitude must be finite")
    return Field2D.from_function(
        grid, lambda x, y: amplitude * np.exp(-((x - x0) ** 2) - ((y - y0) ** 2))
    )
