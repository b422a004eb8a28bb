import warnings

import numpy as np
import pytest

from phasekit import (
    AccuracyWarning,
    Grid1D,
    PhaseGrid,
    anti_wick,
    gaussian_wigner,
    hermite1,
    sample_phase_function,
    standard_gaussian,
    toeplitz_density,
    toeplitz_operator_direct,
    toeplitz_operator_weyl,
    toeplitz_weyl_symbol,
    trace_via_symbol,
    verify_density_operator,
    wigner,
)

HBAR = 1.0
GRID = Grid1D.centered(128, 8.0)


def _gaussian_symbol(sx, sp):
    return lambda x, p: np.exp(-0.5 * (x * x / sx + p * p / sp))


def _wigner_symbol(sigma):
    def f(x, p):
        z = np.stack([x.ravel(), p.ravel()], axis=1)
        return gaussian_wigner(sigma, z).reshape(x.shape)

    return f


def test_routes_agree_gaussian_window():
    phi = standard_gaussian(GRID, HBAR)
    a = sample_phase_function(_gaussian_symbol(1.4, 0.9), GRID, HBAR)
    M1 = toeplitz_operator_direct(a, phi, HBAR).entries
    M2 = toeplitz_operator_weyl(a, phi, HBAR).entries
    scale = np.abs(M1).max()
    assert np.abs(M1 - M2).max() < 1e-8 * scale


def test_routes_agree_excited_window():
    phi = hermite1(GRID, HBAR)
    a = sample_phase_function(
        lambda x, p: np.exp(-0.4 * (x * x + p * p)) * (1 + 0.2 * np.cos(x)), GRID, HBAR
    )
    M1 = toeplitz_operator_direct(a, phi, HBAR).entries
    M2 = toeplitz_operator_weyl(a, phi, HBAR).entries
    assert np.abs(M1 - M2).max() < 1e-6 * np.abs(M1).max()


def test_toeplitz_positivity_for_nonnegative_symbol():
    phi = standard_gaussian(GRID, HBAR)
    a = sample_phase_function(_gaussian_symbol(2.0, 2.0), GRID, HBAR)
    M = toeplitz_operator_direct(a, phi, HBAR)
    H = M.entries
    assert np.abs(H - H.conj().T).max() < 1e-10
    assert np.linalg.eigvalsh(H)[0] >= -1e-12


def test_toeplitz_symbol_is_smoothed_input():
    # the covariant symbol equals 2 pi hbar times the convolution with the
    # window's Wigner function; for Gaussians that is again a Gaussian
    phi = standard_gaussian(GRID, HBAR)
    sx, sp = 1.6, 1.1
    a = sample_phase_function(_wigner_symbol(np.diag([sx, sp])), GRID, HBAR)
    b = toeplitz_weyl_symbol(a, phi, HBAR)
    ref = sample_phase_function(
        _wigner_symbol(np.diag([sx + 0.5 * HBAR, sp + 0.5 * HBAR])), GRID, HBAR
    )
    assert np.abs(b.values - 2.0 * np.pi * HBAR * ref.values).max() < 1e-7


def test_toeplitz_density_routes_and_report():
    mu = sample_phase_function(_wigner_symbol(1.2 * np.eye(2)), GRID, HBAR)
    phi = standard_gaussian(GRID, HBAR)
    for route in ("direct", "weyl"):
        rho = toeplitz_density(mu, phi, HBAR, route=route)
        rep = verify_density_operator(rho)
        assert rep.is_density
        assert rep.trace == pytest.approx(1.0, abs=1e-8)
        assert rep.min_eig >= -1e-10
        assert rep.hermitian


def test_toeplitz_density_matches_gaussian_covariance():
    # mu with covariance sigma'' and standard window give the Gaussian state
    # with covariance sigma'' + (hbar/2) I
    mu = sample_phase_function(_wigner_symbol(np.eye(2)), GRID, HBAR)
    phi = standard_gaussian(GRID, HBAR)
    rho = toeplitz_density(mu, phi, HBAR)
    W = sample_phase_function(_wigner_symbol((1.0 + 0.5 * HBAR) * np.eye(2)), GRID, HBAR)
    from phasekit import weyl_symbol_to_kernel, PhaseFunction

    ref = weyl_symbol_to_kernel(
        PhaseFunction(grid=W.grid, values=2.0 * np.pi * HBAR * W.values), HBAR
    )
    assert np.abs(rho.entries - ref.entries).max() < 1e-8


def test_anti_wick_matches_toeplitz_with_standard_window():
    a = sample_phase_function(_gaussian_symbol(1.2, 1.5), GRID, HBAR)
    M1 = anti_wick(a, HBAR).entries
    phi = standard_gaussian(GRID, HBAR)
    M2 = toeplitz_operator_direct(a, phi, HBAR).entries
    assert np.abs(M1 - M2).max() < 1e-8 * np.abs(M1).max()


def test_trace_via_symbol():
    a = sample_phase_function(_gaussian_symbol(1.0, 1.0), GRID, HBAR)
    tr = trace_via_symbol(a, HBAR)
    # integral of the Gaussian symbol over phase space / (2 pi hbar)
    ref = 2.0 * np.pi * np.sqrt(1.0 * 1.0) / (2.0 * np.pi * HBAR)
    assert tr.real == pytest.approx(ref, abs=1e-9)
    assert abs(tr.imag) < 1e-12


def test_trace_via_symbol_warns_on_boundary_mass():
    wide = sample_phase_function(_gaussian_symbol(40.0, 40.0), GRID, HBAR)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        trace_via_symbol(wide, HBAR)
    assert any(issubclass(w.category, AccuracyWarning) for w in caught)


def test_trace_consistency_kernel_vs_symbol():
    phi = standard_gaussian(GRID, HBAR)
    a = sample_phase_function(_gaussian_symbol(1.3, 0.8), GRID, HBAR)
    M = toeplitz_operator_direct(a, phi, HBAR)
    b = toeplitz_weyl_symbol(a, phi, HBAR)
    tr_kernel = np.trace(M.entries) * GRID.dx
    tr_symbol = trace_via_symbol(b, HBAR)
    assert abs(tr_kernel - tr_symbol) < 1e-8
    # and both equal the phase-space integral of the original symbol, since
    # the operator is a weighted sum of rank-one projectors on unit vectors
    direct = a.values.sum() * PhaseGrid(GRID, HBAR).weight
    assert abs(tr_kernel - direct) < 1e-6
