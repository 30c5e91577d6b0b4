"""Cross-backend parity: the numba kernels and the numpy fallback must agree
to round-off on every operation and on short trajectories."""

import numpy as np
import pytest

from vortexlab import backend, stencil
from vortexlab.arakawa import jacobian
from vortexlab.grid import Field2D, apply_boundary, make_grid
from vortexlab.timestep import (_StepperWorkspace, _advance_leapfrog,
                                _advance_rk4)
from vortexlab.wyf import Model, ShearFlow, rhs

from conftest import smooth_random_field

pytestmark = pytest.mark.skipif(not backend.numba_available(),
                                reason="numba not importable")


@pytest.fixture()
def both_backends():
    previous = backend.backend_name()
    yield
    backend.set_backend(previous)


def _with(back, fn):
    backend.set_backend(back)
    try:
        return fn()
    finally:
        pass


def test_stencil_parity(both_backends):
    g = make_grid(48, 24, 5.0, 3.0)
    f = smooth_random_field(g, seed=61)
    for op in (stencil.dx, stencil.dy, stencil.dxx, stencil.dyy,
               stencil.dxxx, stencil.mixed_x_yy, stencil.laplacian):
        a = _with("numpy", lambda: op(f).interior.copy())
        b = _with("numba", lambda: op(f).interior.copy())
        scale = max(np.abs(a).max(), 1.0)
        assert np.abs(a - b).max() < 5e-13 * scale, op.__name__


def test_jacobian_parity(both_backends):
    g = make_grid(48, 48, np.pi, np.pi, bc_y="periodic")
    z = smooth_random_field(g, seed=62, periodic_y=True)
    x = smooth_random_field(g, seed=63, periodic_y=True)
    for order in (2, 4):
        a = _with("numpy", lambda: jacobian(z, x, order).interior.copy())
        b = _with("numba", lambda: jacobian(z, x, order).interior.copy())
        scale = max(np.abs(a).max(), 1.0)
        assert np.abs(a - b).max() < 5e-13 * scale


@pytest.mark.parametrize("kind,inc,order", [
    ("wyf", True, 4), ("wyf", True, 2), ("wyf", False, 4),
    ("zk_limit", False, 4), ("zk_limit", True, 4),
])
def test_rhs_parity(both_backends, kind, inc, order):
    g = make_grid(48, 24, 20.0, 10.0)
    f = smooth_random_field(g, seed=64)
    shear = ShearFlow(0.3, 1.1)
    model = Model(kind, inc, order)
    a = _with("numpy", lambda: rhs(f, shear, model).interior.copy())
    b = _with("numba", lambda: rhs(f, shear, model).interior.copy())
    scale = max(np.abs(a).max(), 1.0)
    assert np.abs(a - b).max() < 5e-13 * scale


@pytest.mark.parametrize("scheme", ["rk4", "leapfrog"])
def test_trajectory_parity(both_backends, scheme):
    g = make_grid(48, 24, 20.0, 10.0)
    base = smooth_random_field(g, seed=65, amplitude=0.05)
    shear = ShearFlow(0.0, 0.6)
    model = Model("wyf", True, 4)

    def march(back):
        backend.set_backend(back)
        f = base.copy()
        ws = _StepperWorkspace(g)
        if scheme == "rk4":
            _advance_rk4(f, 40, 5e-5, shear, model, ws)
        else:
            prev = base.copy()
            _advance_leapfrog(prev, f, 40, 5e-5, shear, model, ws)
        return f.interior.copy()

    a, b = march("numpy"), march("numba")
    scale = max(np.abs(a).max(), 1.0)
    assert np.abs(a - b).max() < 1e-12 * scale


def test_radial_march_parity(both_backends):
    import vortexlab._kernels_numba as knb
    import vortexlab._kernels_numpy as knp

    out_a = np.zeros(2001)
    out_b = np.zeros(2001)
    la = knp.radial_march(2.4, 1.0, 1e-2, 2000, out_a)
    lb = knb.radial_march(2.4, 1.0, 1e-2, 2000, out_b)
    assert la == lb
    np.testing.assert_allclose(out_a[:la + 1], out_b[:la + 1], rtol=1e-9, atol=1e-12)
    assert knp.radial_classify(2.0, 1.0, 1e-3, 20.0) == \
        knb.radial_classify(2.0, 1.0, 1e-3, 20.0)
    assert knp.radial_classify(3.0, 1.0, 1e-3, 20.0) == \
        knb.radial_classify(3.0, 1.0, 1e-3, 20.0)


def test_backend_selection_roundtrip(both_backends):
    assert backend.set_backend("numpy") == "numpy"
    assert backend.backend_name() == "numpy"
    assert backend.set_backend("auto") == "numba"
    with pytest.raises(ValueError):
        backend.set_backend("cuda")
