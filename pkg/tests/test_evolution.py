import numpy as np
import pytest

from rindlersim.coords import Acceleration
from rindlersim.embedding import EnlargedSpinorField, Grid, extract_inertial
from rindlersim.errors import ConfigError, InstabilityError
from rindlersim.evolution import (
    GridWindow,
    SolverConfig,
    TransportStepper,
    WavepacketSpec,
    build_generator,
    cfl_dt,
    evolve,
    step,
)

A1 = Acceleration(1.0)
WINDOW = GridWindow(x_min=4.5, x_max=12.0, n=512, a=A1)
# 10+ sigma clear of both boundaries, so boundary closures stay silent
PACKET = WavepacketSpec(x0=7.5, sigma=0.3, k0=0.0)


def test_build_generator_standard_window():
    gen = build_generator(WINDOW)
    assert gen.x.shape == (512,)
    # f + g = 1 characteristic: the inertial speed is unity everywhere
    assert np.max(np.abs(gen.c_plus - 1.0)) <= 1e-10
    assert np.all(np.isfinite(gen.f)) and np.all(np.isfinite(gen.g))


def test_build_generator_rejects_singular_window():
    with pytest.raises(ConfigError):
        build_generator(GridWindow(x_min=3.0, x_max=4.0, n=128, a=A1))


def test_build_generator_rejects_sub_unit_positions():
    with pytest.raises(ConfigError):
        build_generator(GridWindow(x_min=0.5, x_max=2.0, n=128, a=A1))


def test_build_generator_rejects_margin_contact():
    # entirely on one side but touching the excluded band
    with pytest.raises(ConfigError):
        build_generator(GridWindow(x_min=3.63, x_max=4.5, n=128, a=A1))


def test_build_generator_respects_acceleration_scaling():
    # same u-range as the standard window, realized at a = 2
    gen = build_generator(GridWindow(x_min=2.25, x_max=6.0, n=128, a=Acceleration(2.0)))
    ref = build_generator(GridWindow(x_min=4.5, x_max=12.0, n=128, a=A1))
    assert np.allclose(gen.f, ref.f, rtol=1e-13)
    assert np.allclose(gen.g, ref.g, rtol=1e-13)


def test_small_grid_rejected():
    with pytest.raises(ConfigError):
        build_generator(GridWindow(x_min=4.5, x_max=12.0, n=32, a=A1))


def test_galileo_mode_window_bounds():
    # v <= 0.2 limits the window to u <= 1.0206
    window = GridWindow(x_min=1.001, x_max=1.005, n=128, a=A1)
    gen = build_generator(window, mode="galileo")
    assert np.max(np.abs(gen.c_plus - 1.0)) <= 1e-14
    with pytest.warns(UserWarning):
        build_generator(GridWindow(x_min=1.001, x_max=1.02, n=128, a=A1), mode="galileo")
    with pytest.raises(ConfigError):
        build_generator(GridWindow(x_min=1.05, x_max=2.0, n=128, a=A1), mode="galileo")


def test_ultra_mode_constant_coefficients():
    gen = build_generator(WINDOW, mode="ultra", delta=0.01)
    assert np.ptp(gen.f) == 0.0
    assert np.ptp(gen.g) == 0.0
    assert gen.f[0] == pytest.approx(1.0 - 0.020404554013766268, rel=1e-13)
    with pytest.raises(ConfigError):
        build_generator(WINDOW, mode="ultra")  # delta missing


def test_cfl_dt_standard_window():
    gen = build_generator(WINDOW)
    # on this window max speed is the unit inertial speed, so dt = cfl*dx
    assert cfl_dt(WINDOW, gen, 0.5) == pytest.approx(0.5 * WINDOW.dx, rel=1e-13)
    assert cfl_dt(WINDOW, gen, 0.25) == pytest.approx(0.5 * cfl_dt(WINDOW, gen, 0.5))


def test_cfl_dt_halves_with_dx():
    fine = GridWindow(x_min=4.5, x_max=12.0, n=1023, a=A1)
    finer = GridWindow(x_min=4.5, x_max=12.0, n=2045, a=A1)
    g1, g2 = build_generator(fine), build_generator(finer)
    assert cfl_dt(finer, g2, 0.5) == pytest.approx(0.5 * cfl_dt(fine, g1, 0.5), rel=1e-3)


def test_cfl_dt_uses_fast_component_on_left_branch():
    # left of the singularity the accelerated-frame speed exceeds 1
    window = GridWindow(x_min=1.5, x_max=3.0, n=128, a=A1)
    gen = build_generator(window)
    assert gen.max_speed > 1.0
    assert cfl_dt(window, gen, 0.5) == pytest.approx(
        0.5 * window.dx / gen.max_speed, rel=1e-13
    )


def test_single_step_translates_packet():
    gen = build_generator(WINDOW)
    solver = SolverConfig(t_final=1.0)
    grid = WINDOW.grid()
    x = grid.points()
    state = EnlargedSpinorField(
        grid=grid, even=PACKET.evaluate(x), odd=np.zeros(grid.n, dtype=complex)
    )
    dt = cfl_dt(WINDOW, gen, 0.5)
    advanced = step(state, gen, solver, dt)
    shifted = PACKET.evaluate(x - dt)
    err = np.max(np.abs(extract_inertial(advanced).values - shifted))
    # single-step truncation ~ dt * dx^4/30 * max|psi^(5)| ~ 3e-8 here
    assert err <= 1e-7
    # and refinement shrinks it at 4th order in space (x2 in dt, x2 in dx)
    fine = GridWindow(x_min=4.5, x_max=12.0, n=1023, a=A1)
    gen_f = build_generator(fine)
    xf = fine.grid().points()
    state_f = EnlargedSpinorField(
        grid=fine.grid(), even=PACKET.evaluate(xf), odd=np.zeros(fine.n, dtype=complex)
    )
    dt_f = cfl_dt(fine, gen_f, 0.5)
    advanced_f = step(state_f, gen_f, solver, dt_f)
    err_f = np.max(np.abs(extract_inertial(advanced_f).values - PACKET.evaluate(xf - dt_f)))
    assert err_f <= err / 8.0


def test_step_preserves_zero_field():
    gen = build_generator(WINDOW)
    solver = SolverConfig()
    grid = WINDOW.grid()
    zero = EnlargedSpinorField(
        grid=grid,
        even=np.zeros(grid.n, dtype=complex),
        odd=np.zeros(grid.n, dtype=complex),
    )
    out = step(zero, gen, solver, cfl_dt(WINDOW, gen, 0.5))
    assert np.all(out.even == 0.0)
    assert np.all(out.odd == 0.0)


def test_uniform_speed_advects_both_components_identically():
    # with position-independent coefficients both components move together
    gen = build_generator(WINDOW, mode="ultra", delta=1e-10)
    solver = SolverConfig()
    grid = WINDOW.grid()
    x = grid.points()
    values = PACKET.evaluate(x)
    state = EnlargedSpinorField(grid=grid, even=values, odd=np.zeros_like(values))
    dt = cfl_dt(WINDOW, gen, 0.5)
    out = state
    for _ in range(10):
        out = step(out, gen, solver, dt)
    # odd stays zero iff psi and psi' evolved identically
    assert np.max(np.abs(out.odd)) <= 1e-9 * np.max(np.abs(out.even))


def test_decoupled_and_coupled_paths_agree():
    gen = build_generator(WINDOW)
    solver = SolverConfig()
    stepper = TransportStepper(gen, solver)
    rng = np.random.default_rng(41)
    grid = WINDOW.grid()
    x = grid.points()
    even = PACKET.evaluate(x) * (1.0 + 0.1 * rng.standard_normal(grid.n))
    odd = 0.5 * PACKET.evaluate(x - 0.3)
    dt = cfl_dt(WINDOW, gen, 0.5)
    pe, po = even.copy(), odd.copy()
    plus, minus = even + odd, even - odd
    for _ in range(50):
        pe, po = stepper.step_coupled(pe, po, dt)
        plus, minus = stepper.step_eigen(plus, minus, dt)
    again_even = 0.5 * (plus + minus)
    again_odd = 0.5 * (plus - minus)
    scale = np.max(np.abs(pe))
    assert np.max(np.abs(pe - again_even)) <= 1e-12 * scale
    assert np.max(np.abs(po - again_odd)) <= 1e-12 * scale


def test_evolve_report_structure_and_t0():
    solver = SolverConfig(t_final=0.5, cfl=0.5, snapshot_stride=64)
    result = evolve(PACKET, WINDOW, solver)
    assert result.times[0] == 0.0
    assert result.times[-1] == pytest.approx(0.5, abs=1e-12)
    assert all(t2 > t1 for t1, t2 in zip(result.times, result.times[1:]))
    assert len(result.times) == len(result.snapshots) == len(result.report)
    row0 = result.report[0]
    assert row0.x_inertial == pytest.approx(PACKET.x0, abs=1e-6)
    assert row0.x_rindler == pytest.approx(PACKET.x0, abs=1e-6)
    assert row0.norm_odd == 0.0
    assert row0.norm_even == pytest.approx(row0.norm_inertial, rel=1e-12)


def test_evolve_t_zero_returns_initial_state_only():
    solver = SolverConfig(t_final=0.0)
    result = evolve(PACKET, WINDOW, solver)
    assert len(result.times) == 1
    assert result.report[0].t == 0.0
    assert result.report[0].x_inertial == pytest.approx(PACKET.x0, abs=1e-6)


def test_evolve_norm_conservation_and_amplitude_transport():
    solver = SolverConfig(t_final=1.0, cfl=0.5, snapshot_stride=100)
    result = evolve(PACKET, WINDOW, solver)
    norms = [row.norm_inertial for row in result.report]
    assert max(abs(n / norms[0] - 1.0) for n in norms) <= 1e-6
    # value transport keeps the accelerated-frame peak within 2%
    peak0 = np.max(np.abs(result.snapshots[0].even - result.snapshots[0].odd))
    for snap in result.snapshots:
        peak = np.max(np.abs(snap.even - snap.odd))
        assert abs(peak / peak0 - 1.0) <= 0.02


def test_wide_packet_run_centers():
    # a sigma=0.5 packet only 3 sigma from the left edge: boundary noise
    # rules out tight error bounds, but the frame centers stay good
    window = GridWindow(x_min=4.5, x_max=12.0, n=2048, a=A1)
    solver = SolverConfig(t_final=1.0, cfl=0.5, snapshot_stride=2000)
    with pytest.warns(UserWarning):
        result = evolve(WavepacketSpec(x0=6.0, sigma=0.5), window, solver)
    final = result.report[-1]
    assert final.x_inertial == pytest.approx(7.00, abs=0.01)
    assert final.x_rindler == pytest.approx(6.93, abs=0.02)


def test_packet_outside_window_is_rejected():
    solver = SolverConfig(t_final=0.1)
    with pytest.raises(ConfigError):
        evolve(WavepacketSpec(x0=20.0, sigma=0.3), WINDOW, solver)


def test_marginal_packet_warns():
    solver = SolverConfig(t_final=0.0)
    with pytest.warns(UserWarning):
        evolve(WavepacketSpec(x0=6.0, sigma=0.5), WINDOW, solver)


def test_instability_detected_for_oversized_steps():
    gen = build_generator(WINDOW)
    solver = SolverConfig()
    grid = WINDOW.grid()
    x = grid.points()
    state = EnlargedSpinorField(
        grid=grid, even=PACKET.evaluate(x), odd=np.zeros(grid.n, dtype=complex)
    )
    huge_dt = 50.0 * cfl_dt(WINDOW, gen, 1.0)
    with pytest.raises(InstabilityError), np.errstate(over="ignore", invalid="ignore"):
        for _ in range(400):
            state = step(state, gen, solver, huge_dt)


def test_periodic_boundary_warns_and_preserves_norm():
    window = GridWindow(x_min=4.5, x_max=12.0, n=256, a=A1)
    gen = build_generator(window)
    with pytest.warns(UserWarning):
        stepper = TransportStepper(gen, SolverConfig(boundary="periodic"))
    grid = window.grid()
    x = grid.points()
    packet = WavepacketSpec(x0=8.0, sigma=0.4)
    plus = packet.evaluate(x)
    minus = plus.copy()
    dt = cfl_dt(window, gen, 0.5)
    norm0 = np.sqrt(np.sum(np.abs(plus) ** 2))
    for _ in range(200):
        plus, minus = stepper.step_eigen(plus, minus, dt)
    assert np.sqrt(np.sum(np.abs(plus) ** 2)) == pytest.approx(norm0, rel=1e-8)


def test_sponge_absorbs_outgoing_packet():
    # run long enough for the packet to hit the right edge; the layer
    # must swallow it without reflecting or blowing up
    solver = SolverConfig(t_final=6.0, cfl=0.5, snapshot_stride=2000)
    result = evolve(WavepacketSpec(x0=8.0, sigma=0.3), WINDOW, solver)
    final = result.report[-1]
    assert final.norm_inertial <= 0.05 * result.report[0].norm_inertial
    interior = np.abs(result.snapshots[-1].even + result.snapshots[-1].odd)[:400]
    assert np.max(interior) <= 1e-3


def test_upwind_scheme_is_stable_and_dissipative():
    solver = SolverConfig(scheme="upwind1", t_final=1.0, cfl=0.5, snapshot_stride=200)
    result = evolve(PACKET, WINDOW, solver)
    norms = [row.norm_inertial for row in result.report]
    assert all(n2 <= n1 + 1e-12 for n1, n2 in zip(norms, norms[1:]))
    # still transports: the packet moved right by roughly t
    assert result.report[-1].x_inertial == pytest.approx(PACKET.x0 + 1.0, abs=0.05)


def test_solver_config_validation():
    with pytest.raises(ConfigError):
        SolverConfig(cfl=0.0)
    with pytest.raises(ConfigError):
        SolverConfig(cfl=1.5)
    with pytest.raises(ConfigError):
        SolverConfig(scheme="spectral")
    with pytest.raises(ConfigError):
        SolverConfig(boundary="dirichlet")
    with pytest.raises(ConfigError):
        SolverConfig(t_final=-1.0)
    with pytest.raises(ConfigError):
        SolverConfig(snapshot_stride=0)
    with pytest.raises(ConfigError):
        WavepacketSpec(x0=6.0, sigma=0.0)
