import numpy as np
import pytest

from vortexlab.convergence import timestep_orders
from vortexlab.grid import Field2D, apply_boundary, make_grid
from vortexlab.timestep import (BlowUpError, IntegratorConfig, SimulationState,
                                leapfrog_step, rk4_step, run)
from vortexlab.wyf import Model, ShearFlow
from vortexlab.zk import PlaneSoliton, plane_soliton_field


def test_integrator_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(scheme="euler")
    with pytest.raises(ValueError):
        IntegratorConfig(dt=0.0)
    with pytest.raises(ValueError):
        IntegratorConfig(series_every=0)


def test_constant_field_is_fixed_point():
    g = make_grid(32, 16, 20, 10)
    f = Field2D(g)
    f.interior[:] = 1.75
    apply_boundary(f)
    s0 = SimulationState(f)
    s1 = rk4_step(s0, 1e-3, ShearFlow(0, 0), Model("wyf", True, 4))
    np.testing.assert_array_equal(s1.xi.interior, f.interior)
    assert s1.step == 1
    assert s1.time == 1e-3


def test_rk4_reproduces_degree4_taylor():
    g = make_grid(16, 8, 2, 1)
    f = Field2D(g)
    f.interior[:] = 1.0
    apply_boundary(f)
    lam, dt = -2.3, 0.05

    def stub(field):
        out = Field2D(g)
        out.interior[:] = lam * field.interior
        return apply_boundary(out)

    s1 = rk4_step(SimulationState(f), dt, ShearFlow(), Model(), rhs_fn=stub)
    z = lam * dt
    taylor = 1 + z + z**2 / 2 + z**3 / 6 + z**4 / 24
    np.testing.assert_allclose(s1.xi.interior, taylor, rtol=1e-14)


def test_leapfrog_zero_rhs_swaps_levels():
    g = make_grid(16, 8, 2, 1)
    rng = np.random.default_rng(2)
    prev = Field2D(g)
    prev.interior[:] = rng.normal(size=g.shape)
    apply_boundary(prev)
    cur = Field2D(g)
    cur.interior[:] = rng.normal(size=g.shape)
    apply_boundary(cur)
    kept = prev.interior.copy()

    def zero(field):
        return Field2D.zeros(g)

    s2 = leapfrog_step(SimulationState(cur, 1, 0.1), SimulationState(prev, 0, 0.0),
                       0.1, ShearFlow(), Model(), rhs_fn=zero)
    np.testing.assert_array_equal(s2.xi.interior, kept)


def test_leapfrog_oscillator_amplitude():
    """Linear oscillator embedded in two rows; symplectic-style amplitude
    retention over a few periods, up to the weak Asselin damping."""
    g = make_grid(16, 8, 2, 1)
    omega = 1.0

    def osc(field):
        out = Field2D.zeros(g)
        u = field.interior[0].copy()
        v = field.interior[1].copy()
        out.interior[0] = v
        out.interior[1] = -omega**2 * u
        return out

    f = Field2D.zeros(g)
    f.interior[0] = 1.0
    prev = SimulationState(f, 0, 0.0)
    dt = 0.01
    cur = rk4_step(prev, dt, ShearFlow(), Model(), rhs_fn=osc)
    for _ in range(int(4 * np.pi / dt)):  # two periods
        nxt = leapfrog_step(cur, prev, dt, ShearFlow(), Model(), rhs_fn=osc)
        prev, cur = cur, nxt
    energy = cur.xi.interior[0, 0] ** 2 + cur.xi.interior[1, 0] ** 2 / omega**2
    assert energy == pytest.approx(1.0, abs=0.02)


@pytest.mark.slow
def test_plane_soliton_transport_short():
    g = make_grid(200, 100, 20, 10)
    f = plane_soliton_field(g, PlaneSoliton(1.0), 0.0)
    cfg = IntegratorConfig("rk4", 1e-4, 1.0, snapshot_every=10**9, series_every=10**9)
    res = run(SimulationState(f), cfg, ShearFlow(), Model("zk_limit", False))
    assert res.ok
    peak = res.state.xi.interior.max()
    i = int(np.argmax(res.state.xi.interior)) % g.nx
    assert g.x(i) == pytest.approx(1.0, abs=0.01 + g.hx / 2)
    assert peak == pytest.approx(1.5, rel=0.005)


@pytest.mark.slow
def test_plane_soliton_transport_leapfrog():
    g = make_grid(200, 100, 20, 10)
    f = plane_soliton_field(g, PlaneSoliton(1.0), 0.0)
    cfg = IntegratorConfig("leapfrog", 1e-4, 1.0, snapshot_every=10**9, series_every=10**9)
    res = run(SimulationState(f), cfg, ShearFlow(), Model("zk_limit", False))
    assert res.ok
    peak = res.state.xi.interior.max()
    i = int(np.argmax(res.state.xi.interior)) % g.nx
    assert g.x(i) == pytest.approx(1.0, abs=0.02 + g.hx / 2)
    assert peak == pytest.approx(1.5, rel=0.02)


def test_time_step_self_convergence_orders():
    assert timestep_orders(scheme="rk4") == pytest.approx(4.0, abs=0.6)
    assert timestep_orders(scheme="leapfrog") == pytest.approx(2.0, abs=0.5)


def test_blowup_halts_with_report():
    g = make_grid(200, 100, 20, 10)
    rng = np.random.default_rng(4)
    f = Field2D(g)
    f.interior[:] = 0.1 * rng.normal(size=g.shape)
    apply_boundary(f)
    cfg = IntegratorConfig("rk4", 1e-2, 0.5, snapshot_every=10**9, series_every=10**9)
    snaps = []
    res = run(SimulationState(f), cfg, ShearFlow(0, 1.2), Model("wyf", True, 4),
              on_snapshot=lambda s: snaps.append(s.xi.copy()))
    assert res.failure is not None
    assert res.failure.step >= 1
    assert np.isfinite(res.state.xi.interior).all()   # last healthy state kept
    assert snaps and np.isfinite(snaps[-1].interior).all()


def test_rk4_step_raises_on_blowup():
    g = make_grid(64, 32, 20, 10)
    rng = np.random.default_rng(5)
    f = Field2D(g)
    f.interior[:] = 10.0 * rng.normal(size=g.shape)
    apply_boundary(f)
    state = SimulationState(f)
    with pytest.raises(BlowUpError):
        s = state
        for _ in range(400):
            s = rk4_step(s, 5e-2, ShearFlow(0, 1.2), Model("wyf", True, 4))


def test_run_zero_horizon_no_sinks():
    g = make_grid(32, 16, 20, 10)
    f = Field2D.zeros(g)
    cfg = IntegratorConfig("rk4", 1e-4, 0.0)
    calls = []
    res = run(SimulationState(f), cfg, ShearFlow(), Model(),
              on_series=lambda s: calls.append(s.step),
              on_snapshot=lambda s: calls.append(s.step))
    assert res.ok
    assert res.state.step == 0
    assert calls == []


def test_run_series_cadence_counting():
    g = make_grid(32, 16, 20, 10)
    f = Field2D.zeros(g)
    dt = 1e-4
    cfg = IntegratorConfig("rk4", dt, 10 * dt, snapshot_every=10**9, series_every=1)
    steps = []
    run(SimulationState(f), cfg, ShearFlow(), Model(),
        on_series=lambda s: steps.append(s.step))
    assert steps == list(range(11))  # initial record plus ten


def test_run_determinism_same_process():
    g = make_grid(64, 32, 20, 10)
    rng = np.random.default_rng(6)
    base = rng.normal(size=g.shape) * 0.2

    def go():
        f = Field2D(g)
        f.interior[:] = base
        apply_boundary(f)
        cfg = IntegratorConfig("rk4", 1e-4, 0.02, snapshot_every=10**9,
                               series_every=10**9)
        return run(SimulationState(f), cfg, ShearFlow(0, 0.5),
                   Model("wyf", True, 4)).state.xi.interior.copy()

    np.testing.assert_array_equal(go(), go())


def test_leapfrog_run_bootstraps_with_rk4():
    g = make_grid(64, 32, 20, 10)
    f = plane_soliton_field(g, PlaneSoliton(1.0), 0.0)
    cfg = IntegratorConfig("leapfrog", 1e-4, 20e-4, snapshot_every=10**9,
                           series_every=1)
    steps = []
    res = run(SimulationState(f), cfg, ShearFlow(), Model("zk_limit", False),
              on_series=lambda s: steps.append(s.step))
    assert res.ok
    assert steps == list(range(21))
