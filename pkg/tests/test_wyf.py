import numpy as np
import pytest

from vortexlab import stencil
from vortexlab.grid import Field2D, apply_boundary, make_grid
from vortexlab.wyf import (Model, ScaleParams, ShearFlow, coeff_P, coeff_Q,
                           normalize, rhs)
from vortexlab.zk import PlaneSoliton, plane_soliton_field

from conftest import smooth_random_field


def test_coeff_p_examples():
    assert coeff_P(ShearFlow(0, 0), 3.7) == 1.0
    assert coeff_P(ShearFlow(-1, 0), -2.0) == -1.0
    assert coeff_P(ShearFlow(0, 1.2), 10.0) == pytest.approx(25.0)


def test_coeff_q_examples():
    assert coeff_Q(ShearFlow(-1, 0), 5.0) == 0.0
    assert coeff_Q(ShearFlow(0, 0), 5.0) == 5.0
    assert coeff_Q(ShearFlow(0, 1.2), 2.0) == pytest.approx(4.4)


def test_model_validation():
    with pytest.raises(ValueError):
        Model("weird")
    with pytest.raises(ValueError):
        Model("wyf", True, 3)


def test_rhs_constant_field_is_fixed_point():
    g = make_grid(64, 32, 20, 10)
    f = Field2D(g)
    f.interior[:] = 2.5
    apply_boundary(f)
    out = rhs(f, ShearFlow(0, 0), Model("wyf", True, 4))
    assert np.abs(out.interior).max() < 1e-12


def test_zk_limit_sign_mapping():
    """The substitution xi = -phi maps the (f0, f1) = (-1, 0) member without
    the Jacobian onto the plain ZK right-hand side."""
    g = make_grid(64, 32, 20, 10)
    phi = smooth_random_field(g, seed=41)
    minus = Field2D(g)
    minus.interior[:] = -phi.interior
    apply_boundary(minus)

    wyf_side = rhs(minus, ShearFlow(-1.0, 0.0), Model("wyf", include_jacobian=False))
    zk_side = rhs(phi, ShearFlow(), Model("zk_limit", include_jacobian=False))
    scale = np.abs(zk_side.interior).max()
    assert np.abs(wyf_side.interior + zk_side.interior).max() < 1e-12 * scale


def test_zk_limit_mapping_with_jacobian():
    g = make_grid(64, 32, 20, 10)
    phi = smooth_random_field(g, seed=42)
    minus = Field2D(g)
    minus.interior[:] = -phi.interior
    apply_boundary(minus)
    wyf_side = rhs(minus, ShearFlow(-1.0, 0.0), Model("wyf", include_jacobian=True))
    zk_side = rhs(phi, ShearFlow(), Model("zk_limit", include_jacobian=True))
    scale = np.abs(zk_side.interior).max()
    assert np.abs(wyf_side.interior + zk_side.interior).max() < 1e-12 * scale


def test_traveling_wave_relation_and_refinement():
    """rhs(soliton) ~ -c dx(soliton); the residual shrinks at the second
    order set by the printed third-derivative stencil."""
    c = 1.0
    resids = []
    for n in (100, 200, 400):
        g = make_grid(n, n // 2, 20, 10)
        f = plane_soliton_field(g, PlaneSoliton(c), 0.0)
        r = rhs(f, ShearFlow(), Model("zk_limit", include_jacobian=False))
        resid = r.interior + c * stencil.dx(f).interior
        resids.append(np.abs(resid).max())
        if n == 200:
            assert resids[-1] < 0.05 * np.abs(r.interior).max()
    assert 3.0 < resids[0] / resids[1] < 6.0
    assert 3.0 < resids[1] / resids[2] < 6.0


def test_dxlap_fused_vs_composition_oracle_refinement():
    """dxxx + mixed against the dx(laplacian) composition: they differ only
    through the second-order third-derivative stencil, so the gap shrinks
    ~4x per refinement while the mixed parts agree to round-off."""
    gaps = []
    for n in (64, 128, 256):
        g = make_grid(n, n // 2, 20, 10)
        f = Field2D.from_function(
            g, lambda x, y: np.sin(2 * np.pi * x / 20) * np.cos(np.pi * y / 10))
        direct = stencil.dxxx(f).interior + stencil.mixed_x_yy(f).interior
        composed = stencil.dx(apply_boundary(stencil.laplacian(f))).interior
        gaps.append(np.abs(direct - composed).max())
    assert 3.0 < gaps[0] / gaps[1] < 5.0
    assert 3.0 < gaps[1] / gaps[2] < 5.0


def test_rhs_quadratic_structure():
    """rhs(a xi) = a L(xi) + a^2 N(xi): recover L, N from two evaluations and
    predict a third."""
    g = make_grid(64, 32, 20, 10)
    f = smooth_random_field(g, seed=44, amplitude=0.5)
    shear = ShearFlow(0.3, 0.8)
    model = Model("wyf", True, 4)

    def rhs_scaled(a):
        fa = Field2D(g)
        fa.interior[:] = a * f.interior
        apply_boundary(fa)
        return rhs(fa, shear, model).interior

    r1, r2 = rhs_scaled(1.0), rhs_scaled(2.0)
    quad = 0.5 * (r2 - 2.0 * r1)
    lin = r1 - quad
    predicted = 3.0 * lin + 9.0 * quad
    measured = rhs_scaled(3.0)
    scale = np.abs(measured).max()
    assert np.abs(predicted - measured).max() < 1e-10 * scale


def test_single_step_error_scaling_against_translation():
    """One RK4 step vs the exactly translated soliton: halving dt halves the
    error (spatial truncation dominates); halving h cuts it ~4x (the
    second-order third-derivative stencil sets the spatial order)."""
    from vortexlab.timestep import SimulationState, rk4_step

    c, model, shear = 1.0, Model("zk_limit", include_jacobian=False), ShearFlow()

    def step_error(n, dt):
        g = make_grid(n, n // 2, 20, 10)
        f0 = plane_soliton_field(g, PlaneSoliton(c), 0.0)
        s1 = rk4_step(SimulationState(f0), dt, shear, model)
        exact = plane_soliton_field(g, PlaneSoliton(c), dt)
        return np.abs(s1.xi.interior - exact.interior).max()

    e = step_error(200, 1e-4)
    e_dt_half = step_error(200, 5e-5)
    e_h_half = step_error(400, 1e-4)
    assert 1.7 < e / e_dt_half < 2.3
    assert 3.0 < e / e_h_half < 6.0


def test_normalize_examples():
    g = make_grid(64, 32, 20, 10)
    f = smooth_random_field(g, seed=45)

    same = normalize(f, ScaleParams(E=2.0, S=1.0))
    np.testing.assert_allclose(same.interior, f.interior)
    assert same.grid.lx == g.lx

    halved = normalize(f, ScaleParams(E=1.0, S=1.0))
    np.testing.assert_allclose(halved.interior, 0.5 * f.interior)

    shrunk = normalize(f, ScaleParams(E=1.0, S=8.0))
    np.testing.assert_allclose(shrunk.interior, 0.125 * f.interior)
    assert shrunk.grid.hx == pytest.approx(0.5 * g.hx)
    assert shrunk.grid.hy == pytest.approx(0.5 * g.hy)


def test_scale_params_validation():
    with pytest.raises(ValueError):
        ScaleParams(E=0.0, S=1.0)
    with pytest.raises(ValueError):
        ScaleParams(E=1.0, S=-2.0)
