"""End-to-end acceptance battery.

Each test wraps one check from phasekit.selfcheck, which implements the
numbered verification battery with its stated tolerances; the final test runs
the installed command-line entry point as a subprocess and enforces the
wall-clock budget.
"""

import subprocess
import sys
import time

import pytest

from phasekit.selfcheck import (
    check_disentangler,
    check_marginal_identity,
    check_positivity_equivalence,
    check_ppt_squeezed,
    check_toeplitz_decomposition,
    check_toeplitz_density,
    check_toeplitz_routes,
    check_trace_coherence,
    check_wigner_closed_form,
    check_williamson,
    check_window_transpose,
)

HBAR = 1.0
SEED = 42


def test_01_wigner_closed_form():
    # ground-state Wigner function vs (pi hbar)^-1 exp(-|z|^2/hbar),
    # max-abs error < 1e-7 on a 256-point grid of half-span 8
    r = check_wigner_closed_form(hbar=HBAR)
    assert r.passed, r.detail
    assert r.seconds < 1.0


def test_02_marginal_identity():
    # 20 random smooth pairs: |sum(W) dx dp - <psi, phi>| < 1e-8 each
    r = check_marginal_identity(hbar=HBAR, seed=SEED)
    assert r.passed, r.detail
    assert r.seconds < 5.0


def test_03_toeplitz_route_agreement():
    # projector-sum route vs Weyl-symbol route within 1e-6 max-abs for five
    # symbol/window pairs including a non-Gaussian (first Hermite) window
    r = check_toeplitz_routes(hbar=HBAR, seed=SEED)
    assert r.passed, r.detail
    assert r.seconds < 60.0


def test_04_toeplitz_density_operator():
    # Gaussian weight with unit covariance and standard window: trace within
    # 1e-6 of 1, min eigenvalue >= -1e-8, hermiticity residual < 1e-9, and
    # the kernel matches the Gaussian state with covariance I + (hbar/2) I
    # within 1e-6
    r = check_toeplitz_density(hbar=HBAR)
    assert r.passed, r.detail


def test_05_positivity_equivalence():
    # 1000 seeded random covariances (1-3 modes): operator positivity verdict
    # agrees with the symplectic-spectrum threshold in every case
    r = check_positivity_equivalence(hbar=HBAR, seed=SEED)
    assert r.passed, r.detail
    assert r.seconds < 10.0


def test_06_williamson_normal_form():
    # 200 seeded random covariances: symplecticity and reconstruction
    # residuals below 1e-8 relative
    r = check_williamson(hbar=HBAR, seed=SEED)
    assert r.passed, r.detail
    assert r.seconds < 5.0


def test_07_gaussian_decomposition():
    # 50 random admissible covariances split as sigma'' + (hbar/2) S S^T with
    # sigma'' > 0; for five single-mode cases the grid convolution
    # rho_sigma'' * W_phi reproduces rho_sigma within 1e-6 pointwise
    r = check_toeplitz_decomposition(hbar=HBAR, seed=SEED)
    assert r.passed, r.detail


def test_08_ppt_two_mode_squeezed():
    # r in {0.1, 0.3, 0.5, 1.0}: verdict entangled, and the smallest
    # symplectic eigenvalue after partial transpose equals
    # (hbar/2) e^{-2r} within 1e-8
    r = check_ppt_squeezed(hbar=HBAR)
    assert r.passed, r.detail


def test_09_disentangling_rotation():
    # squeezed family plus 50 random quantum-valid two-mode covariances:
    # certificate residual >= -1e-9, U symplectic-orthogonal within 1e-9,
    # and the product-state certificate verifies in every case
    r = check_disentangler(hbar=HBAR, seed=SEED)
    assert r.passed, r.detail


def test_10_window_partial_transpose():
    # 20 random product Gaussian windows: the transposed window's Gramian
    # equals the momentum-flip conjugation of the original Gramian to 1e-10
    r = check_window_transpose(seed=SEED)
    assert r.passed, r.detail


def test_11_trace_coherence():
    # matrix trace vs phase-space symbol integral within 1e-6 for every
    # operator built in the route-agreement and density checks
    r = check_trace_coherence(hbar=HBAR, seed=SEED)
    assert r.passed, r.detail


def test_12_selftest_cli():
    # the installed CLI runs the whole battery, exits 0, and stays well
    # under the 3-minute budget
    start = time.monotonic()
    proc = subprocess.run(
        [sys.executable, "-m", "phasekit.cli", "selftest"],
        capture_output=True,
        text=True,
        timeout=180,
    )
    elapsed = time.monotonic() - start
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert elapsed < 180.0
    assert '"all_passed": true' in proc.stdout
