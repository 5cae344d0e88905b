import numpy as np
import pytest
from hypothesis import given, strategies as st

from tqm_disp.freeprop import evolve_gtf
from tqm_disp.numgrid import (DEFAULT_MATRIX, ConvergenceReport, GridSpec, GridState,
                              TruncationError, convergence_study, fit_moments, grid_for,
                              propagate, propagation_case, real_space_step, sample_packet,
                              spectrum, step_once, suppression_factor, suppression_phase,
                              suppression_scale)
from tqm_disp.sweep import sweep
from tqm_disp.wavepacket import GaussianPacket


def gtf(t0=0.0, E0=1.0, sigma=1.0):
    return GaussianPacket(center=t0, carrier=E0, sigma=sigma, domain="time")


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(0.0, 0.0, 64)
    with pytest.raises(ValueError):
        GridSpec(0.0, 0.1, 100)
    with pytest.raises(ValueError):
        GridSpec(0.0, 0.1, 8)
    g = GridSpec.centered(1.0, 4.0, 32)
    assert g.t_min == -3.0 and len(g.times) == 32
    assert g.t_max == pytest.approx(5.0 - g.dt)


def test_grid_state_is_read_only():
    s = GridState(np.ones(16), 0.0, 0.1)
    with pytest.raises(ValueError):
        s.samples[0] = 2.0


def test_unit_gaussian_norm():
    p = gtf(0.0, 0.0, 1.0)
    g = GridSpec.centered(0.0, 12.0, 4096)
    assert sample_packet(p, g).norm == pytest.approx(1.0, abs=1e-8)


def test_truncated_grid_rejected():
    with pytest.raises(TruncationError):
        sample_packet(gtf(sigma=1.0), GridSpec.centered(0.0, 4.0, 64))


@given(st.floats(-3, 3), st.floats(-2, 2), st.floats(0.3, 2))
def test_moment_fit_recovers_parameters(t0, E0, sigma):
    p = gtf(t0, E0, sigma)
    s = sample_packet(p, grid_for(p, 1.0, 0.0))
    c, w = fit_moments(s)
    assert c == pytest.approx(t0, abs=1e-6)
    assert w == pytest.approx(sigma, rel=1e-6)


def test_spectrum_parseval():
    s = sample_packet(gtf(0.3, 2.0, 0.7), GridSpec.centered(0.0, 12.0, 1024))
    E, amp = spectrum(s)
    dE = E[1] - E[0]
    assert np.sum(np.abs(amp) ** 2) * dE == pytest.approx(s.norm**2, rel=1e-12)


@pytest.mark.parametrize("n_steps", [1, 4, 16])
def test_one_dispersion_time(n_steps):
    m, sigma = 1.0, 1.0
    tau = m * sigma**2
    p = gtf(0.0, 1.0, sigma)
    g = grid_for(p, m, tau)
    s, drifts = propagate(sample_packet(p, g), m, tau, n_steps)
    assert np.max(np.abs(s.density - evolve_gtf(p, m, tau).density(g.times))) < 1e-6
    assert max(drifts) < 1e-9
    assert not s.aliased


def test_step_count_independence():
    p = gtf(0.0, 1.0, 0.8)
    m, tau = 1.0, 2.0
    g = grid_for(p, m, tau)
    s0 = sample_packet(p, g)
    a, _ = propagate(s0, m, tau, 1)
    b, _ = propagate(s0, m, tau, 64)
    assert np.max(np.abs(a.samples - b.samples)) < 1e-10


def test_error_non_increasing_in_steps():
    p = gtf(0.0, 1.0, 1.0)
    rep = convergence_study(p, 1.0, 1.0, [1, 2, 4, 8, 16])
    errs = [e for _, e in rep.steps]
    # each free slice is exact, so beyond round-off the error cannot grow
    assert all(b <= a + 1e-12 for a, b in zip(errs, errs[1:]))
    assert max(errs) < 1e-10


def test_grid_refinement_reduces_aliasing_error():
    p = gtf(0.0, 3.0, 0.5)
    base = grid_for(p, 1.0, 0.5)
    rep = convergence_study(p, 1.0, 0.5, [64, 128, 256, 512], vary="grid", grid=base)
    errs = [e for _, e in rep.steps]
    assert errs[0] > 1e-2
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-6
    assert rep.order_estimate > 0
    assert rep.vary == "grid"


def test_convergence_study_argument_checks():
    p = gtf()
    with pytest.raises(ValueError):
        convergence_study(p, 1.0, 1.0, [])
    with pytest.raises(ValueError):
        convergence_study(p, 1.0, 1.0, [4, 2])
    with pytest.raises(ValueError):
        convergence_study(p, 1.0, 1.0, [2], vary="tau")


def test_convergence_report_csv():
    rep = ConvergenceReport([(1, 1e-3), (2, 2.5e-4)], 2.0)
    lines = rep.to_csv().splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "N,max_error"
    assert lines[2] == "1,1.00000000000e-03"
    with pytest.raises(ValueError):
        ConvergenceReport([(1, -1.0)], 1.0)


def test_zero_energy_bin_unchanged():
    n = 64
    s = GridState(np.full(n, 0.25 + 0j), -3.2, 0.1)
    out = step_once(s, 1.0, 5.0)
    assert np.allclose(out.samples, s.samples, atol=1e-14)


def test_phase_only_on_nonzero_bins():
    s = sample_packet(gtf(0.0, 0.0, 1.0), GridSpec.centered(0.0, 12.0, 256))
    out = step_once(s, 1.0, 0.3)
    c0, c1 = np.fft.ifft(s.samples), np.fft.ifft(out.samples)
    assert c1[0] == pytest.approx(c0[0], abs=1e-15)
    assert np.allclose(np.abs(c1), np.abs(c0), atol=1e-15)


def test_aliasing_flagged():
    dt = 0.1
    n = 64
    t = dt * np.arange(n)
    nyq = np.pi / dt
    s = GridState(np.exp(-1j * 0.97 * nyq * t) * np.exp(-((t - 3.2) ** 2) / 2), 0.0, dt)
    out = step_once(s, 1.0, 0.1)
    assert out.aliased and out.notes


def test_edge_density_flagged():
    s = sample_packet(gtf(0.0, 0.0, 1.0), GridSpec.centered(0.0, 12.0, 256))
    out = step_once(s, 1.0, 40.0)
    assert out.aliased


def test_step_argument_checks():
    s = GridState(np.ones(16), 0.0, 0.1)
    with pytest.raises(ValueError):
        step_once(s, 1.0, 0.0)
    with pytest.raises(ValueError):
        step_once(s, 0.0, 1.0)
    with pytest.raises(ValueError):
        propagate(s, 1.0, 1.0, 0)


@pytest.mark.parametrize("n_steps", [1, 2, 3, 4])
def test_real_space_kernel_oracle(n_steps):
    # a direct sum with the Fresnel-normalised kernel must agree with the FFT step
    m, sigma = 1.0, 1.0
    p = gtf(0.0, 0.0, sigma)
    g = GridSpec.centered(0.0, 40.0, 2048)
    tau = 6.0
    eps = tau / n_steps
    s_fft = s_real = sample_packet(p, g)
    for _ in range(n_steps):
        s_fft = step_once(s_fft, m, eps)
        s_real = real_space_step(s_real, m, eps)
    exact = evolve_gtf(p, m, tau)(g.times)
    assert np.max(np.abs(s_fft.samples - exact)) < 1e-6
    assert np.max(np.abs(s_real.samples - exact)) < 1e-6


def test_real_space_oracle_refuses_coarse_lattice():
    s = sample_packet(gtf(0.0, 0.0, 1.0), GridSpec.centered(0.0, 12.0, 128))
    with pytest.raises(ValueError):
        real_space_step(s, 1.0, 0.01)


def test_default_matrix_shape():
    assert len(DEFAULT_MATRIX) == 9
    assert {c["sigma_t"] for c in DEFAULT_MATRIX} == {0.5, 1.0, 2.0}
    assert {c["tau_factor"] for c in DEFAULT_MATRIX} == {0.1, 1.0, 5.0}


def test_default_matrix_passes():
    for c in DEFAULT_MATRIX:
        r = propagation_case(**c)
        assert r["passed"], r
        assert r["max_error"] < 1e-6 and r["norm_drift"] < 1e-9


def test_parallel_sweep_bitwise_identical(monkeypatch):
    serial = [propagation_case(**c) for c in DEFAULT_MATRIX]
    monkeypatch.setenv("TQM_DISP_THREADS", "4")
    par = sweep(lambda c: propagation_case(**c), DEFAULT_MATRIX)
    assert par == serial


def test_suppression_scale():
    # quoted as 3872 eV, rounded; accept a 5% band
    assert suppression_scale(0.177) == pytest.approx(3872, rel=0.05)
    assert suppression_scale(0.177) == pytest.approx(658.2119569509067 / 0.177, rel=1e-12)
    assert suppression_scale(0.354) == pytest.approx(suppression_scale(0.177) / 2)
    assert suppression_scale(658.2119569509067) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        suppression_scale(0.0)


def test_suppression_phase():
    assert suppression_factor(0.0, 1000.0, 0.177) == 1
    dw, kappa, tau = 1.0, 1000.0, 0.177
    approx = dw * tau / 658.2119569509067
    assert suppression_phase(dw, kappa, tau) == pytest.approx(approx, rel=1e-2)
    assert abs(suppression_factor(300.0, 1000.0, 2.0)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        suppression_phase(1.0, 0.0, 1.0)
