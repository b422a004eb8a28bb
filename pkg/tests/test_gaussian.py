import numpy as np
import pytest

from phasekit import (
    DomainError,
    Grid1D,
    gaussian_convolve,
    gaussian_toeplitz_decompose,
    gaussian_wigner,
    hermite1,
    heisenberg_translate,
    is_pure,
    quantum_positivity,
    random_symplectic,
    sample_gaussian_window,
    standard_gaussian,
    standard_symplectic_form,
    symplectic_spectrum_admissible,
    wigner,
    window_from_gramian,
    window_gramian,
    window_wigner,
    GaussianWindow,
    PhaseGrid,
)

HBAR = 1.0


def test_quantum_positivity_threshold():
    # diag(s, s) is admissible iff s >= hbar/2
    assert quantum_positivity(0.5 * np.eye(2), HBAR).valid
    assert quantum_positivity(0.6 * np.eye(2), HBAR).valid
    assert not quantum_positivity(0.4 * np.eye(2), HBAR).valid


def test_positivity_matches_symplectic_spectrum():
    rng = np.random.default_rng(7)
    agree = 0
    for _ in range(300):
        n = int(rng.integers(1, 3))
        A = rng.standard_normal((2 * n, 2 * n))
        sigma = 0.3 * (A @ A.T) + 0.2 * np.eye(2 * n)
        a = quantum_positivity(sigma, HBAR, tol=1e-10).valid
        b = symplectic_spectrum_admissible(sigma, HBAR, tol=1e-10)
        agree += a == b
    assert agree == 300


def test_is_pure():
    assert is_pure(0.5 * HBAR * np.eye(4), HBAR)
    rng = np.random.default_rng(8)
    S = random_symplectic(2, rng)
    assert is_pure(0.5 * HBAR * S @ S.T, HBAR)
    assert not is_pure(0.6 * HBAR * np.eye(4), HBAR)


def test_gaussian_convolve_adds_covariances():
    s1 = np.diag([1.0, 2.0])
    s2 = np.diag([0.5, 0.25])
    assert np.array_equal(gaussian_convolve(s1, s2), s1 + s2)
    with pytest.raises(DomainError):
        gaussian_convolve(s1, np.eye(4))


def test_toeplitz_decompose_structure():
    rng = np.random.default_rng(9)
    for _ in range(40):
        n = int(rng.integers(1, 4))
        A = rng.standard_normal((2 * n, 2 * n))
        sigma = A @ A.T + 0.55 * HBAR * np.eye(2 * n)
        sigma_pp, S = gaussian_toeplitz_decompose(sigma, HBAR)
        resid = sigma_pp + 0.5 * HBAR * S @ S.T - sigma
        assert np.abs(resid).max() < 1e-9 * np.abs(sigma).max()
        assert np.linalg.eigvalsh(sigma_pp)[0] > 0
        J = standard_symplectic_form(n)
        assert np.abs(S.T @ J @ S - J).max() < 1e-9


def test_toeplitz_decompose_refuses_inadmissible():
    with pytest.raises(DomainError):
        gaussian_toeplitz_decompose(0.4 * HBAR * np.eye(2), HBAR)


def test_gaussian_wigner_normalization():
    # direct quadrature of the phase-space Gaussian over a grid
    grid = Grid1D.centered(128, 8.0)
    pg = PhaseGrid(grid, HBAR)
    xs, ps = np.meshgrid(pg.x, pg.p, indexing="ij")
    z = np.stack([xs.ravel(), ps.ravel()], axis=1)
    vals = gaussian_wigner(np.diag([0.7, 0.6]), z).reshape(xs.shape)
    mass = vals.sum() * pg.weight
    assert mass == pytest.approx(1.0, abs=1e-9)


def test_window_gramian_roundtrip():
    rng = np.random.default_rng(10)
    for _ in range(20):
        n = int(rng.integers(1, 3))
        A = rng.standard_normal((n, n))
        X = A @ A.T + 0.3 * np.eye(n)
        Y = rng.standard_normal((n, n))
        Y = 0.5 * (Y + Y.T)
        w = GaussianWindow(X=X, Y=Y)
        G = window_gramian(w)
        assert np.abs(G - G.T).max() < 1e-12
        J = standard_symplectic_form(n)
        assert np.abs(G @ J @ G.T - J).max() < 1e-9  # symplectic, hence det 1
        w2 = window_from_gramian(G)
        assert np.abs(w2.X - X).max() < 1e-9
        assert np.abs(w2.Y - Y).max() < 1e-9


def test_sampled_window_matches_gaussian_wigner():
    grid = Grid1D.centered(256, 8.0)
    X, Y = 1.3, 0.4
    phi = sample_gaussian_window(X, Y, grid, HBAR)
    assert np.abs(np.vdot(phi.samples, phi.samples) * grid.dx - 1.0) < 1e-10
    W = wigner(phi, HBAR)
    w = GaussianWindow(X=np.array([[X]]), Y=np.array([[Y]]))
    xs, ps = np.meshgrid(W.grid.x, W.grid.p, indexing="ij")
    z = np.stack([xs.ravel(), ps.ravel()], axis=1)
    ref = window_wigner(w, z, HBAR).reshape(xs.shape)
    assert np.abs(W.values.real - ref).max() < 1e-8


def test_standard_gaussian_and_hermite_orthonormal():
    grid = Grid1D.centered(256, 8.0)
    g = standard_gaussian(grid, HBAR)
    h = hermite1(grid, HBAR)
    assert np.vdot(g.samples, g.samples).real * grid.dx == pytest.approx(1.0, abs=1e-12)
    assert np.vdot(h.samples, h.samples).real * grid.dx == pytest.approx(1.0, abs=1e-12)
    assert abs(np.vdot(g.samples, h.samples)) * grid.dx < 1e-12


def test_heisenberg_translate_shifts_wigner():
    grid = Grid1D.centered(256, 10.0)
    g = standard_gaussian(grid, HBAR)
    z0 = np.array([16 * grid.dx, 0.0])  # whole grid steps so comparison is exact
    shifted = heisenberg_translate(g, z0, HBAR)
    W0 = wigner(g, HBAR).values.real
    W1 = wigner(shifted, HBAR).values.real
    k = int(round(z0[0] / grid.dx))
    assert np.abs(W1[k:, :] - W0[:-k, :]).max() < 1e-9
