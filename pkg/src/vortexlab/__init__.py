"""Finite-difference laboratory for shear-stabilized vortices.

The package integrates a fourth-order finite-difference discretization of a
geostrophic vorticity equation with background zonal shear, together with its
Zakharov-Kuznetsov limit, on a channel that is periodic in x and free-slip in
y.  Hot kernels are numba-compiled with a pure-numpy fallback selected by the
``VORTEXLAB_BACKEND`` environment variable.
"""

from .grid import Grid2D, Field2D, make_grid, apply_boundary, sample_gaussian
from .wyf import ShearFlow, Model, ScaleParams, coeff_P, coeff_Q, rhs, normalize
from .timestep import IntegratorConfig, SimulationState, rk4_step, leapfrog_step, run
from .zk import RadialProfile, PlaneSoliton, solve_radial, plane_soliton_field, deposit_radial

__all__ = [
    "Grid2D",
    "Field2D",
    "make_grid",
    "apply_boundary",
    "sample_gaussian",
    "ShearFlow",
    "Model",
    "ScaleParams",
    "coeff_P",
    "coeff_Q",
    "rhs",
    "normalize",
    "IntegratorConfig",
    "SimulationState",
    "rk4_step",
    "leapfrog_step",
    "run",
    "RadialProfile",
    "PlaneSoliton",
    "solve_radial",
    "plane_soliton_field",
    "deposit_radial",
]

__version__ = "0.1.0"
