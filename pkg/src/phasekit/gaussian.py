"""Gaussian phase-space distributions and their operator-level properties.

A centered Gaussian state is described by its covariance matrix Sigma
(xp-block ordering) together with the value of hbar.  The distribution is

    rho(z) = (2 pi)^{-n} det(Sigma)^{-1/2} exp(-Sigma^{-1} z . z / 2)

which integrates to one.  The state is a valid quantum state iff
Sigma + (i hbar / 2) J >= 0, equivalently iff every symplectic eigenvalue
is >= hbar / 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .symplectic import (
    check_covariance,
    is_symplectic,
    standard_symplectic_form,
    symplectic_eigenvalues,
    williamson,
)


def gaussian_wigner(sigma, z, *, _normalized=True) -> np.ndarray:
    """Evaluate the Gaussian distribution with covariance sigma at z.

    z has shape (..., 2n); returns an array of shape (...).
    """
    sigma = check_covariance(sigma)
    n = sigma.shape[0] // 2
    z = np.asarray(z, dtype=float)
    if z.shape[-1] != 2 * n:
        raise DomainError(f"z must have last dimension {2 * n}, got {z.shape[-1]}")
    inv = np.linalg.inv(sigma)
    quad = np.einsum("...i,ij,...j->...", z, inv, z)
    norm = (2.0 * np.pi) ** (-n) / np.sqrt(np.linalg.det(sigma))
    return norm * np.exp(-0.5 * quad)


class PositivityReport(NamedTuple):
    valid: bool
    min_eig: float


def quantum_positivity(sigma, hbar: float, tol: float = 1e-10) -> PositivityReport:
    """Minimum eigenvalue of the Hermitian matrix Sigma + (i hbar / 2) J.

    valid iff min_eig >= -tol.
    """
    sigma = np.asarray(sigma, dtype=float)
    sigma = 0.5 * (sigma + sigma.T)
    n = sigma.shape[0] // 2
    J = standard_symplectic_form(n)
    H = sigma.astype(complex) + 0.5j * hbar * J
    min_eig = float(np.linalg.eigvalsh(H)[0])
    return PositivityReport(valid=min_eig >= -tol, min_eig=min_eig)


def symplectic_spectrum_admissible(sigma, hbar: float, tol: float = 1e-10) -> bool:
    """True iff every symplectic eigenvalue of sigma is >= hbar/2 - tol."""
    lams = symplectic_eigenvalues(sigma)
    return bool(lams[-1] >= 0.5 * hbar - tol)


def is_pure(sigma, hbar: float, tol: float = 1e-8) -> bool:
    """True iff all symplectic eigenvalues equal hbar/2 within tol."""
    lams = symplectic_eigenvalues(sigma)
    return bool(np.max(np.abs(lams - 0.5 * hbar)) <= tol)


def gaussian_convolve(sigma1, sigma2) -> np.ndarray:
    """Covariance of the convolution of two centered Gaussians: sigma1 + sigma2."""
    sigma1 = check_covariance(sigma1, "sigma1")
    sigma2 = check_covariance(sigma2, "sigma2")
    if sigma1.shape != sigma2.shape:
        raise DomainError("covariance matrices must share the same dimension")
    return sigma1 + sigma2


def gaussian_toeplitz_decompose(sigma, hbar: float, margin: float = 1e-10):
    """Split sigma = sigma'' + (hbar/2) S S^T with sigma'' > 0.

    S comes from the Williamson diagonalization of sigma; the decomposition
    exists iff every symplectic eigenvalue exceeds hbar/2.  Returns
    (sigma'', S).  The induced convolution identity
    rho_sigma = rho_sigma'' * W(phi) holds for the Gaussian window with
    Gramian (S S^T)^{-1}.
    """
    sigma = check_covariance(sigma)
    S, lams = williamson(sigma)
    if lams[-1] <= 0.5 * hbar + margin:
        raise DomainError(
            "not strictly Toeplitz: min symplectic eigenvalue "
            f"{lams[-1]:.6g} <= hbar/2 + margin = {0.5 * hbar + margin:.6g}"
        )
    sigma0 = 0.5 * hbar * (S @ S.T)
    sigma2 = sigma - sigma0
    sigma2 = 0.5 * (sigma2 + sigma2.T)
    return sigma2, S


@dataclass(frozen=True)
class GaussianWindow:
    """Generalized Gaussian window defined by an (X, Y) matrix pair.

    phi(x) = (pi hbar)^{-n/4} det(X)^{1/4} exp(-(X + iY) x . x / (2 hbar))
    with X symmetric positive definite and Y symmetric.
    """

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X, dtype=float))
        Y = np.atleast_2d(np.asarray(self.Y, dtype=float))
        if X.shape != Y.shape or X.shape[0] != X.shape[1]:
            raise DomainError(f"X and Y must be square of equal shape, got {X.shape}, {Y.shape}")
        if np.max(np.abs(X - X.T)) > 1e-10 * max(1.0, np.max(np.abs(X))):
            raise DomainError("X must be symmetric")
        if np.max(np.abs(Y - Y.T)) > 1e-10 * max(1.0, np.max(np.abs(Y)) or 1.0):
            raise DomainError("Y must be symmetric")
        if np.linalg.eigvalsh(X)[0] <= 0:
            raise DomainError("X must be positive definite")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def n(self) -> int:
        return self.X.shape[0]


def window_gramian(window: GaussianWindow) -> np.ndarray:
    """Phase-space Gramian G of a Gaussian window (xp-block ordering).

    G = [[X + Y X^{-1} Y, Y X^{-1}], [X^{-1} Y, X^{-1}]]; it is symmetric,
    positive definite and symplectic, and the window's Wigner transform is
    (pi hbar)^{-n} exp(-G z . z / hbar).
    """
    X, Y = window.X, window.Y
    Xinv = np.linalg.inv(X)
    G = np.block([[X + Y @ Xinv @ Y, Y @ Xinv], [Xinv @ Y, Xinv]])
    return 0.5 * (G + G.T)


def window_from_gramian(G) -> GaussianWindow:
    """Invert :func:`window_gramian`.

    Requires G symmetric positive definite and symplectic (only such
    Gramians arise from a Gaussian window).
    """
    G = check_covariance(G, "G")
    if not is_symplectic(G, tol=1e-8 * max(1.0, np.max(np.abs(G)))):
        raise DomainError("G is not symplectic: it is not the Gramian of a Gaussian window")
    n = G.shape[0] // 2
    Gpp = G[n:, n:]
    Gxp = G[:n, n:]
    X = np.linalg.inv(Gpp)
    Y = Gxp @ X
    return GaussianWindow(X=X, Y=0.5 * (Y + Y.T))


def window_wigner(window: GaussianWindow, z, hbar: float) -> np.ndarray:
    """Closed-form Wigner transform of the window, evaluated at z (..., 2n)."""
    G = window_gramian(window)
    z = np.asarray(z, dtype=float)
    quad = np.einsum("...i,ij,...j->...", z, G, z)
    return (np.pi * hbar) ** (-window.n) * np.exp(-quad / hbar)
