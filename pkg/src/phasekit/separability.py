"""Partial transposition, PPT test, Werner-Wolf certificates and the
symplectic-rotation disentangler for Gaussian covariance matrices.

All covariance matrices use the internal xp-block ordering; the bipartition
assigns modes 1..n_A to subsystem A and the remaining n_B modes to B.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, DomainError
from .gaussian import GaussianWindow, quantum_positivity
from .grids import WaveFunction
from .symplectic import (
    XP_BLOCK,
    check_covariance,
    diagonalize_pds,
    partial_reflection_matrix,
    symplectic_eigenvalues,
    williamson,
)


def _check_split(sigma, n_a: int, n_b: int):
    sigma = check_covariance(sigma)
    if n_a < 1 or n_b < 1:
        raise DomainError("both parts of the split must have at least one mode")
    if 2 * (n_a + n_b) != sigma.shape[0]:
        raise DimensionError(
            f"split ({n_a}, {n_b}) does not match matrix dimension {sigma.shape[0]}"
        )
    return sigma


def partial_transpose_cov(sigma, n_a: int, n_b: int) -> np.ndarray:
    """Conjugate sigma by the partial reflection (x_B, p_B) -> (x_B, -p_B)."""
    sigma = _check_split(sigma, n_a, n_b)
    M = partial_reflection_matrix(n_a, n_b, XP_BLOCK)
    return M @ sigma @ M


class PPTReport(NamedTuple):
    ppt: bool
    min_eig: float              # min eig of sigma~ + (i hbar/2) J
    min_symplectic_eig: float   # min symplectic eigenvalue of sigma~


def ppt_check(sigma, n_a: int, n_b: int, hbar: float, tol: float = 1e-10) -> PPTReport:
    """Positive-partial-transpose test.

    ppt = False certifies entanglement; ppt = True is necessary for
    separability (and sufficient only for n_A * n_B <= 6).
    """
    sigma = _check_split(sigma, n_a, n_b)
    base = quantum_positivity(sigma, hbar, tol)
    if not base.valid:
        raise DomainError(
            f"input is not a quantum covariance matrix (min eig {base.min_eig:.3e})"
        )
    tilde = partial_transpose_cov(sigma, n_a, n_b)
    rep = quantum_positivity(tilde, hbar, tol)
    lam_min = float(symplectic_eigenvalues(tilde)[-1])
    return PPTReport(ppt=rep.valid, min_eig=rep.min_eig, min_symplectic_eig=lam_min)


def direct_sum_cov(sigma_a, sigma_b) -> np.ndarray:
    """Direct sum of two xp-block covariances, returned in xp-block ordering."""
    sigma_a = np.asarray(sigma_a, dtype=float)
    sigma_b = np.asarray(sigma_b, dtype=float)
    n_a = sigma_a.shape[0] // 2
    n_b = sigma_b.shape[0] // 2
    n = n_a + n_b
    out = np.zeros((2 * n, 2 * n))
    ia = np.concatenate([np.arange(n_a), n + np.arange(n_a)])
    ib = np.concatenate([n_a + np.arange(n_b), n + n_a + np.arange(n_b)])
    out[np.ix_(ia, ia)] = sigma_a
    out[np.ix_(ib, ib)] = sigma_b
    return out


def verify_ww_certificate(sigma, sigma_a, sigma_b, hbar: float, tol: float = 1e-9) -> bool:
    """Werner-Wolf separability certificate check.

    True iff sigma_A + (i hbar/2) J_A >= 0, sigma_B + (i hbar/2) J_B >= 0 and
    sigma >= sigma_A (+) sigma_B, all within tol.  A True result certifies
    separability of the Gaussian state with covariance sigma.
    """
    sigma = check_covariance(sigma)
    sigma_a = np.asarray(sigma_a, dtype=float)
    sigma_b = np.asarray(sigma_b, dtype=float)
    if sigma_a.shape[0] + sigma_b.shape[0] != sigma.shape[0]:
        raise DimensionError("sigma_A and sigma_B dimensions must add up to sigma's")
    if not quantum_positivity(sigma_a, hbar, tol).valid:
        return False
    if not quantum_positivity(sigma_b, hbar, tol).valid:
        return False
    gap = sigma - direct_sum_cov(sigma_a, sigma_b)
    gap = 0.5 * (gap + gap.T)
    return bool(np.linalg.eigvalsh(gap)[0] >= -tol)


@dataclass(frozen=True)
class SeparabilityCertificate:
    """Constructive certificate: the rotated state U Sigma U^T dominates the
    separable pure covariance (hbar/2)(Delta_A (+) Delta_B)."""

    U: np.ndarray                 # symplectic rotation, xp-block ordering
    delta_a: np.ndarray           # (2 n_A,) interleaved per-mode pairs (lam, 1/lam)
    delta_b: np.ndarray           # (2 n_B,)
    residual_min_eig: float
    hbar: float
    split: tuple[int, int]

    def delta_a_matrix(self) -> np.ndarray:
        """Delta_A as an xp-block matrix on the A modes."""
        return np.diag(np.concatenate([self.delta_a[0::2], self.delta_a[1::2]]))

    def delta_b_matrix(self) -> np.ndarray:
        return np.diag(np.concatenate([self.delta_b[0::2], self.delta_b[1::2]]))


def disentangle_by_rotation(sigma, n_a: int, n_b: int, hbar: float) -> SeparabilityCertificate:
    """Find a symplectic rotation U making the rotated Gaussian separable.

    With S from the Williamson diagonalization of sigma, S S^T is positive
    definite symplectic and diagonalizes as U^T Delta U with U a symplectic
    rotation and Delta carrying per-mode eigenvalue pairs (lam, 1/lam).
    Then U sigma U^T >= (hbar/2) Delta, and (hbar/2) Delta splits as a
    direct sum of valid single-party covariances: a Werner-Wolf certificate
    for the rotated state.
    """
    sigma = _check_split(sigma, n_a, n_b)
    rep = quantum_positivity(sigma, hbar)
    if not rep.valid:
        raise DomainError(
            f"input is not a quantum covariance matrix (min eig {rep.min_eig:.3e})"
        )
    S, _ = williamson(sigma)
    U, delta = diagonalize_pds(S @ S.T)
    n = n_a + n_b
    rotated = U @ sigma @ U.T
    residual = rotated - 0.5 * hbar * np.diag(delta)
    residual = 0.5 * (residual + residual.T)
    res_min = float(np.linalg.eigvalsh(residual)[0])
    # per-mode pairs in AB order: mode k carries (delta[k], delta[n+k])
    pairs = np.empty(2 * n)
    pairs[0::2] = delta[:n]
    pairs[1::2] = delta[n:]
    return SeparabilityCertificate(
        U=U,
        delta_a=pairs[: 2 * n_a].copy(),
        delta_b=pairs[2 * n_a:].copy(),
        residual_min_eig=res_min,
        hbar=hbar,
        split=(n_a, n_b),
    )


def certificate_ww_factors(cert: SeparabilityCertificate):
    """The (sigma_A, sigma_B) pair certified by a rotation certificate."""
    return (
        0.5 * cert.hbar * cert.delta_a_matrix(),
        0.5 * cert.hbar * cert.delta_b_matrix(),
    )


def gaussian_window_partial_transpose(window: GaussianWindow, n_a: int, n_b: int) -> GaussianWindow:
    """Partial transpose of a block-diagonal (product) Gaussian window:
    X unchanged, and the sign of the B block of Y flipped (the B factor is
    complex-conjugated).  The window Wigner transform then satisfies
    W phi'(z) = W phi(Ibar_B z), equivalently the Gramian is conjugated by
    the partial reflection diag(I, I_A (+) -I_B).

    A Gaussian window whose X or Y couples the A and B variables has no
    partial transpose within the Gaussian window class (its reflected Wigner
    Gramian is no longer symplectic); such inputs are refused."""
    if window.n != n_a + n_b:
        raise DimensionError(f"window has {window.n} modes, split needs {n_a + n_b}")
    for M, name in ((window.X, "X"), (window.Y, "Y")):
        if np.abs(M[:n_a, n_a:]).max(initial=0.0) > 1e-12 * max(1.0, np.abs(M).max()):
            raise DomainError(
                f"window matrix {name} couples the A and B variables; "
                "only product (block-diagonal) Gaussian windows have a "
                "Gaussian partial transpose"
            )
    Yp = window.Y.copy()
    Yp[n_a:, n_a:] *= -1.0
    return GaussianWindow(X=window.X, Y=Yp)


def product_window_partial_transpose(phi_a: WaveFunction, phi_b: WaveFunction):
    """Partial transpose of a product window phi_A (x) phi_B: conjugate the
    B factor.  Returns the new (phi_A, phi_B) sample pair."""
    if phi_a.grid != phi_b.grid:
        raise DimensionError("product window factors must share the same grid")
    return phi_a, WaveFunction(grid=phi_b.grid, samples=np.conj(phi_b.samples))


def two_mode_squeezed(r: float, hbar: float) -> np.ndarray:
    """Two-mode squeezed vacuum covariance (xp-block ordering, n = 2).

    In ab-interleaved blocks the matrix is
    (hbar/2) [[cI, sZ], [sZ, cI]] with c = cosh 2r, s = sinh 2r,
    Z = diag(1, -1).
    """
    c = np.cosh(2.0 * r)
    s = np.sinh(2.0 * r)
    h = 0.5 * hbar
    return h * np.array(
        [
            [c, s, 0.0, 0.0],
            [s, c, 0.0, 0.0],
            [0.0, 0.0, c, -s],
            [0.0, 0.0, -s, c],
        ]
    )
