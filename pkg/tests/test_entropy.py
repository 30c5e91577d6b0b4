import numpy as np
import pytest

from vortexlab.entropy import (CESpec, DegenerateSpectrumError, ModalSpectrum,
                               ce_nonperiodic, ce_of_state, ce_periodic,
                               slice_of_state, spectrum_1d)
from vortexlab.grid import Field2D, apply_boundary, make_grid
from vortexlab.zk import deposit_radial, solve_radial


def test_single_cosine_gives_log2():
    n = 128
    u = np.cos(2 * np.pi * 5 * np.arange(n) / n)
    spec = spectrum_1d(u)
    nz = spec.fractions[spec.fractions > 1e-12]  # mean-removal leaves ~1e-33 dust
    assert len(nz) == 2
    np.testing.assert_allclose(nz, 0.5, atol=1e-12)
    assert ce_periodic(spec) == pytest.approx(np.log(2.0), abs=1e-10)


def test_constant_slice_is_degenerate():
    with pytest.raises(DegenerateSpectrumError):
        spectrum_1d(np.full(64, 3.3), exclude_mean=True)


def test_fraction_normalization_random():
    rng = np.random.default_rng(11)
    u = rng.normal(size=257)
    spec = spectrum_1d(u)
    assert spec.fractions.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(spec.fractions >= 0)


def test_conjugate_symmetry_real_input():
    rng = np.random.default_rng(12)
    u = rng.normal(size=64)
    spec = spectrum_1d(u, exclude_mean=False)
    mags = np.abs(spec.coefficients)
    np.testing.assert_allclose(mags[1:], mags[1:][::-1], rtol=1e-10)


def test_parseval_pins_normalization():
    rng = np.random.default_rng(13)
    u = rng.normal(size=100)
    spec = spectrum_1d(u, exclude_mean=False)
    lhs = np.sum(np.abs(spec.coefficients) ** 2)
    rhs = len(u) * np.mean(u ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_uniform_fractions_give_logN():
    n = 32  # exact binary fractions keep the sum exact
    spec = ModalSpectrum(coefficients=np.zeros(n, dtype=complex),
                         fractions=np.full(n, 1.0 / n))
    assert ce_periodic(spec) == pytest.approx(np.log(n), abs=5e-15)


def test_ce_bounds():
    rng = np.random.default_rng(14)
    u = rng.normal(size=128)
    spec = spectrum_1d(u)
    retained = np.count_nonzero(spec.fractions)
    assert 0.0 <= ce_periodic(spec) <= np.log(retained) + 1e-12


def test_translation_and_scale_invariance():
    n = 200
    x = np.linspace(-10, 10, n, endpoint=False)
    u = np.exp(-x ** 2) * (1 + 0.3 * np.cos(3 * x))
    s0 = ce_periodic(spectrum_1d(u))
    s_shift = ce_periodic(spectrum_1d(np.roll(u, 17)))
    s_scale = ce_periodic(spectrum_1d(2.5 * u))
    assert s_shift == pytest.approx(s0, abs=1e-12)
    assert s_scale == pytest.approx(s0, abs=1e-13)


def test_nonperiodic_gaussian_monotone_in_width():
    x = np.arange(-20.0, 20.0, 0.1)
    values = [ce_nonperiodic(np.exp(-a * x ** 2), 0.1) for a in (0.25, 1.0, 4.0)]
    assert values[0] < values[1] < values[2]


def test_nonperiodic_translation_invariance():
    x = np.arange(-20.0, 20.0, 0.1)
    a = ce_nonperiodic(np.exp(-x ** 2), 0.1)
    b = ce_nonperiodic(np.exp(-(x - 3.0) ** 2), 0.1)
    assert a == pytest.approx(b, abs=1e-10)


def test_nonperiodic_amplitude_invariance():
    x = np.arange(-20.0, 20.0, 0.1)
    a = ce_nonperiodic(np.exp(-x ** 2), 0.1)
    b = ce_nonperiodic(2.0 * np.exp(-x ** 2), 0.1)
    assert a == b


def test_nonperiodic_rejects_nondecaying():
    x = np.arange(-20.0, 20.0, 0.1)
    with pytest.raises(ValueError):
        ce_nonperiodic(np.cos(x), 0.1)


@pytest.fixture(scope="module")
def vortex_state():
    grid = make_grid(200, 100, 20, 10)
    profile = solve_radial(1.0)
    return deposit_radial(grid, profile, 0.0, 1.0)


def test_slice_through_peak_row(vortex_state):
    grid = vortex_state.grid
    sl = slice_of_state(vortex_state, CESpec("through_peak"))
    j = round((1.0 + grid.ly) / grid.hy)
    np.testing.assert_array_equal(sl, vortex_state.interior[j])


def test_fixed_y_slice(vortex_state):
    grid = vortex_state.grid
    sl = slice_of_state(vortex_state, CESpec("fixed_y", fixed_y=-2.0))
    j = round((-2.0 + grid.ly) / grid.hy)
    np.testing.assert_array_equal(sl, vortex_state.interior[j])
    with pytest.raises(ValueError):
        slice_of_state(vortex_state, CESpec("fixed_y", fixed_y=55.0))


def test_state_entropy_shift_invariance(vortex_state):
    grid = vortex_state.grid
    s0 = ce_of_state(vortex_state, CESpec())
    shifted = Field2D(grid)
    shifted.interior[:] = np.roll(vortex_state.interior, 10, axis=1)
    apply_boundary(shifted)
    s1 = ce_of_state(shifted, CESpec())
    assert s1 == pytest.approx(s0, abs=1e-12)


def test_ce_spec_validation():
    with pytest.raises(ValueError):
        CESpec("weird")
