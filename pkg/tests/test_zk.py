import numpy as np
import pytest
from scipy.interpolate import PchipInterpolator

from vortexlab.grid import make_grid
from vortexlab.zk import (PlaneSoliton, ShootingError, deposit_radial,
                          plane_soliton_field, profile_to_table,
                          radial_ode_residual, scan_ground_state_amplitude,
                          solve_radial)


@pytest.fixture(scope="module")
def profile_c1():
    return solve_radial(1.0)


@pytest.fixture(scope="module")
def profile_c4():
    return solve_radial(4.0)


def test_plane_soliton_amplitude():
    g = make_grid(200, 100, 20, 10)
    f = plane_soliton_field(g, PlaneSoliton(1.0), 0.0)
    assert f.interior.max() == pytest.approx(1.5)


def test_plane_soliton_theta_zero_is_y_independent():
    g = make_grid(64, 32, 20, 10)
    f = plane_soliton_field(g, PlaneSoliton(1.0, 0.0), 0.0)
    assert np.abs(f.interior - f.interior[0][None, :]).max() == 0.0


def test_plane_soliton_requires_positive_speed():
    with pytest.raises(ValueError):
        PlaneSoliton(-1.0)


def test_ground_state_profile_shape(profile_c1):
    phi = profile_c1.values
    assert phi[0] > 0
    assert np.all(np.diff(phi) < 0)            # nodeless, strictly decreasing
    assert phi[-1] < 1e-8 * phi[0]             # decayed at the truncation radius
    # regularity at the origin: quadratic start, so the first slope is O(dr)
    assert abs(phi[1] - phi[0]) / profile_c1.dr < 2.0 * profile_c1.dr * abs(
        profile_c1.c * phi[0] - phi[0] ** 2)


def test_ground_state_ode_residual(profile_c1):
    resid = radial_ode_residual(profile_c1)
    assert np.abs(resid).max() < 1e-6 * profile_c1.c ** 2


def test_scaling_family(profile_c1, profile_c4):
    # Phi_4(r) = 4 Phi_1(2 r)
    p1 = PchipInterpolator(profile_c1.r, profile_c1.values)
    r = np.arange(0.0, 7.0, 0.01)
    scaled = 4.0 * p1(2.0 * r)
    p4 = PchipInterpolator(profile_c4.r, profile_c4.values)
    err = np.abs(p4(r) - scaled).max()
    assert err <= 1e-4 * profile_c4.amplitude


def test_scaling_covariance_generic(profile_c1):
    c2 = 1.5
    prof2 = solve_radial(c2)
    p1 = PchipInterpolator(profile_c1.r, profile_c1.values)
    r = np.arange(0.0, 8.0, 0.01)
    expected = c2 * p1(np.sqrt(c2) * r)
    p2 = PchipInterpolator(prof2.r, prof2.values)
    assert np.abs(p2(r) - expected).max() <= 1e-4 * prof2.amplitude


@pytest.mark.slow
def test_solver_matches_brute_force_oracle(profile_c1):
    oracle = scan_ground_state_amplitude(1.0)
    assert profile_c1.amplitude == pytest.approx(oracle, rel=1e-5)


def test_solver_validation():
    with pytest.raises(ShootingError):
        solve_radial(-1.0)
    with pytest.raises(ShootingError):
        solve_radial(1.0, r_max=3.0)   # decay region unresolved
    with pytest.raises(ShootingError):
        solve_radial(1.0, dr=-1e-3)


def test_profile_table_columns(profile_c1):
    table = profile_to_table(profile_c1)
    assert table.shape == (len(profile_c1.values), 2)
    np.testing.assert_allclose(table[:, 0], profile_c1.r)


def test_deposit_center_and_symmetry(profile_c1):
    g = make_grid(200, 100, 20, 10)
    f = deposit_radial(g, profile_c1, 0.0, 1.0)
    j = round((1.0 + g.ly) / g.hy)
    i = round(g.lx / g.hx)
    assert f.interior[j, i] == pytest.approx(profile_c1.amplitude, abs=1e-6)
    # four grid points at distance 1.0 from the center agree
    k = round(1.0 / g.hx)
    ring = [f.interior[j, i + k], f.interior[j, i - k],
            f.interior[j + k, i], f.interior[j - k, i]]
    assert np.ptp(ring) < 1e-9


def test_deposit_tail_extends_past_table(profile_c1):
    g = make_grid(200, 100, 20, 10)
    f = deposit_radial(g, profile_c1, 15.0, 9.0)  # corner distance > r_max
    assert f.is_finite()
    assert f.interior.min() >= 0.0


def test_two_profile_superposition(profile_c1):
    prof15 = solve_radial(1.5)
    g = make_grid(200, 100, 20, 10)
    a = deposit_radial(g, prof15, -5.0, 1.0)
    b = deposit_radial(g, profile_c1, 5.0, 1.0)
    combined = a.interior + b.interior
    j = round((1.0 + g.ly) / g.hy)
    i_left = round((-5.0 + g.lx) / g.hx)
    i_right = round((5.0 + g.lx) / g.hx)
    assert combined[j, i_left] == pytest.approx(prof15.amplitude, rel=1e-3)
    assert combined[j, i_right] == pytest.approx(profile_c1.amplitude, rel=1e-3)
