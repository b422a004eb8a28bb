import numpy as np
import pytest

from phasekit import (
    DomainError,
    GaussianWindow,
    certificate_ww_factors,
    direct_sum_cov,
    disentangle_by_rotation,
    gaussian_window_partial_transpose,
    partial_transpose_cov,
    ppt_check,
    random_symplectic,
    two_mode_squeezed,
    verify_ww_certificate,
    window_gramian,
)

HBAR = 1.0


def test_two_mode_squeezed_structure():
    r = 0.8
    sigma = two_mode_squeezed(r, HBAR)
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    assert sigma[0, 0] == pytest.approx(0.5 * HBAR * c)
    assert sigma[0, 1] == pytest.approx(0.5 * HBAR * s)
    assert sigma[2, 3] == pytest.approx(-0.5 * HBAR * s)
    # pure Gaussian state: both symplectic eigenvalues hbar/2
    from phasekit import is_pure

    assert is_pure(sigma, HBAR)


def test_ppt_detects_two_mode_squeezing():
    for r in (0.2, 0.5, 1.0):
        rep = ppt_check(two_mode_squeezed(r, HBAR), 1, 1, HBAR)
        assert not rep.ppt
        # partial transpose has smallest symplectic eigenvalue e^{-2r} hbar/2
        assert rep.min_symplectic_eig == pytest.approx(
            0.5 * HBAR * np.exp(-2 * r), abs=1e-10
        )
    rep0 = ppt_check(two_mode_squeezed(0.0, HBAR), 1, 1, HBAR)
    assert rep0.ppt


def test_ppt_passes_product_states():
    rng = np.random.default_rng(20)
    for _ in range(20):
        a_ = rng.uniform(0.5, 2.0, size=2) * HBAR
        b_ = rng.uniform(0.5, 2.0, size=2) * HBAR
        sigma = direct_sum_cov(np.diag(a_), np.diag(b_))
        assert ppt_check(sigma, 1, 1, HBAR).ppt


def test_partial_transpose_cov_is_involution():
    rng = np.random.default_rng(21)
    A = rng.standard_normal((6, 6))
    sigma = A @ A.T + np.eye(6)
    tt = partial_transpose_cov(partial_transpose_cov(sigma, 1, 2), 1, 2)
    assert np.array_equal(tt, sigma)


def test_disentangle_by_rotation_two_mode_squeezed():
    for r in (0.3, 0.9):
        sigma = two_mode_squeezed(r, HBAR) + 1.5 * HBAR * np.cosh(2 * r) * np.eye(4)
        cert = disentangle_by_rotation(sigma, 1, 1, HBAR)
        assert cert.residual_min_eig >= -1e-9
        sigma_a, sigma_b = certificate_ww_factors(cert)
        assert verify_ww_certificate(sigma, sigma_a, sigma_b, HBAR)


def test_disentangle_random_separable():
    rng = np.random.default_rng(22)
    found = 0
    for _ in range(50):
        A = rng.standard_normal((4, 4))
        sigma = 0.5 * A @ A.T + 1.2 * HBAR * np.eye(4)
        cert = disentangle_by_rotation(sigma, 1, 1, HBAR)
        if cert.residual_min_eig >= -1e-9:
            sigma_a, sigma_b = certificate_ww_factors(cert)
            assert verify_ww_certificate(sigma, sigma_a, sigma_b, HBAR)
            found += 1
    assert found > 0


def test_verify_ww_certificate_rejects_bad_factors():
    sigma = two_mode_squeezed(0.5, HBAR) + 2.0 * HBAR * np.eye(4)
    too_big = 10.0 * HBAR * np.eye(2)
    assert not verify_ww_certificate(sigma, too_big, too_big, HBAR)


def test_window_partial_transpose_product_window():
    rng = np.random.default_rng(23)
    for _ in range(20):
        X = np.diag(rng.uniform(0.3, 3.0, size=2))
        Y = np.diag(rng.uniform(-1.0, 1.0, size=2))
        w = GaussianWindow(X=X, Y=Y)
        wt = gaussian_window_partial_transpose(w, 1, 1)
        assert np.array_equal(wt.X, X)
        assert wt.Y[0, 0] == Y[0, 0]
        assert wt.Y[1, 1] == -Y[1, 1]
        # conjugating the Gramian by the momentum flip on B reproduces
        # the Gramian of the transposed window
        G = window_gramian(w)
        R = np.diag([1.0, 1.0, 1.0, -1.0])  # xp-block, n_a = n_b = 1
        assert np.abs(window_gramian(wt) - R @ G @ R).max() < 1e-12


def test_window_partial_transpose_refuses_coupled():
    X = np.array([[1.0, 0.2], [0.2, 1.0]])
    Y = np.zeros((2, 2))
    with pytest.raises(DomainError):
        gaussian_window_partial_transpose(GaussianWindow(X=X, Y=Y), 1, 1)
    X2 = np.eye(2)
    Y2 = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(DomainError):
        gaussian_window_partial_transpose(GaussianWindow(X=X2, Y=Y2), 1, 1)


def test_window_gramian_symplectic_invariant_spectrum():
    rng = np.random.default_rng(24)
    A = rng.standard_normal((2, 2))
    X = A @ A.T + 0.4 * np.eye(2)
    Y = rng.standard_normal((2, 2))
    Y = 0.5 * (Y + Y.T)
    G = window_gramian(GaussianWindow(X=X, Y=Y))
    from phasekit import symplectic_eigenvalues

    # Gramians of Gaussian windows are symplectic and positive definite,
    # so all symplectic eigenvalues are 1
    assert symplectic_eigenvalues(G) == pytest.approx([1.0, 1.0], abs=1e-9)
