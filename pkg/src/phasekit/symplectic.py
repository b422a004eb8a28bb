"""Symplectic linear algebra on 2n x 2n real matrices.

The canonical internal index ordering is "xp-block": a phase-space vector is
z = (x_1, ..., x_n, p_1, ..., p_n).  The alternative "ab-interleaved" ordering
z = (x_1, p_1, ..., x_n, p_n) is reached only through :func:`reorder`.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DimensionError, DomainError

XP_BLOCK = "xp-block"
AB_INTERLEAVED = "ab-interleaved"

TOL_SYM = 1e-9      # absolute symplecticity tolerance
TOL_RECON = 1e-8    # relative reconstruction tolerance


def _check_even_square(M, name="matrix"):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {M.shape}")
    if M.shape[0] % 2 != 0 or M.shape[0] == 0:
        raise DimensionError(f"{name} must have even positive dimension, got {M.shape[0]}")
    return M


def standard_symplectic_form(n: int) -> np.ndarray:
    """Return J = [[0, I], [-I, 0]] for n modes (xp-block ordering)."""
    if n < 1:
        raise DimensionError(f"number of modes must be >= 1, got {n}")
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def symplecticity_residual(S) -> float:
    """max |S^T J S - J|."""
    S = _check_even_square(S, "S")
    n = S.shape[0] // 2
    J = standard_symplectic_form(n)
    return float(np.max(np.abs(S.T @ J @ S - J)))


def is_symplectic(S, tol: float = TOL_SYM) -> bool:
    """True iff S^T J S = J within the absolute tolerance."""
    return symplecticity_residual(S) <= tol


def check_covariance(sigma, name="covariance") -> np.ndarray:
    """Validate and return a symmetric positive definite matrix.

    Positive definiteness uses the scale-aware threshold
    min eig > 1e-12 * trace / (2n).
    """
    sigma = _check_even_square(sigma, name)
    sym_res = np.max(np.abs(sigma - sigma.T))
    scale = max(np.max(np.abs(sigma)), 1.0)
    if sym_res > 1e-9 * scale:
        raise DomainError(f"{name} is not symmetric (residual {sym_res:.3e})")
    sigma = 0.5 * (sigma + sigma.T)
    eigs = np.linalg.eigvalsh(sigma)
    pd_tol = 1e-12 * np.trace(sigma) / sigma.shape[0]
    if eigs[0] <= pd_tol:
        raise DomainError(f"{name} is not positive definite (min eig {eigs[0]:.3e})")
    return sigma


def symplectic_eigenvalues(sigma) -> np.ndarray:
    """Symplectic spectrum of an SPD matrix, sorted decreasing.

    The values are the moduli of the (purely imaginary) eigenvalues of
    J @ sigma, computed as the positive imaginary parts of the spectrum of
    the skew-symmetric sigma^{1/2} J sigma^{1/2}.
    """
    sigma = check_covariance(sigma)
    n = sigma.shape[0] // 2
    J = standard_symplectic_form(n)
    w, V = np.linalg.eigh(sigma)
    root = (V * np.sqrt(w)) @ V.T
    K = root @ J @ root
    K = 0.5 * (K - K.T)
    # eigenvalues of a real skew-symmetric matrix are +/- i lambda
    ev = np.linalg.eigvals(K)
    lams = np.sort(np.abs(ev.imag))[::-1]
    # each modulus appears twice (+i lam, -i lam); keep one of each pair
    return lams[::2].copy()


def _skew_block_form(K):
    """Orthogonal O and positive lams with O^T K O = [[0, L], [-L, 0]],
    lams sorted decreasing (xp-block layout)."""
    N = K.shape[0]
    n = N // 2
    T, Z = scipy.linalg.schur(K, output="real")
    lams = np.empty(n)
    cols_x = []
    cols_p = []
    for i in range(n):
        b = T[2 * i, 2 * i + 1]
        cx, cp = 2 * i, 2 * i + 1
        if b < 0:
            b = -b
            cx, cp = cp, cx
        lams[i] = b
        cols_x.append(cx)
        cols_p.append(cp)
    order = np.argsort(lams)[::-1]
    lams = lams[order]
    perm = [cols_x[i] for i in order] + [cols_p[i] for i in order]
    O = Z[:, perm]
    return O, lams


def williamson(sigma):
    """Williamson diagonalization sigma = S diag(lam, lam) S^T.

    Returns (S, lam) with S symplectic and lam the symplectic spectrum in
    decreasing order.
    """
    sigma = check_covariance(sigma)
    n = sigma.shape[0] // 2
    J = standard_symplectic_form(n)
    w, V = np.linalg.eigh(sigma)
    root = (V * np.sqrt(w)) @ V.T
    K = root @ J @ root
    K = 0.5 * (K - K.T)
    O, lams = _skew_block_form(K)
    d = np.concatenate([lams, lams])
    S = root @ O / np.sqrt(d)
    return S, lams


def diagonalize_pds(P, tol: float = TOL_SYM):
    """Diagonalize a symmetric positive definite symplectic matrix.

    Returns (U, delta) with U in Sp(n) /\\ O(2n) and P = U^T diag(delta) U.
    delta is ordered xp-block so that mode k carries the pair
    (delta[k], delta[n+k]) with delta[k] * delta[n+k] = 1 and delta[k] >= 1.
    """
    P = check_covariance(P, "P")
    if not is_symplectic(P, tol=max(tol, 1e-7 * np.max(np.abs(P)))):
        raise DomainError("P is not symplectic within tolerance")
    N = P.shape[0]
    n = N // 2
    J = standard_symplectic_form(n)
    w, V = np.linalg.eigh(P)
    logw = np.log(w)
    unit_tol = 1e-7
    a_vecs = []
    a_lams = []
    # eigenvectors with eigenvalue > 1: partner -J v has eigenvalue 1/lam
    big = logw > unit_tol
    for lam, v in zip(w[big], V[:, big].T):
        a_vecs.append(v)
        a_lams.append(lam)
    # unit eigenspace is J-invariant and even-dimensional: pick a symplectic
    # orthonormal basis e_k, -J e_k by iterated projection
    unit = np.abs(logw) <= unit_tol
    basis = V[:, unit]
    while basis.shape[1] > 0:
        e = basis[:, 0]
        e = e / np.linalg.norm(e)
        f = -J @ e
        a_vecs.append(e)
        a_lams.append(1.0)
        span = np.column_stack([e, f])
        rest = basis - span @ (span.T @ basis)
        q, r = np.linalg.qr(rest)
        keep = np.abs(np.diag(r)) > 1e-10
        basis = q[:, keep]
    if len(a_lams) != n:
        raise DomainError(
            f"eigenvalue pairing failed: found {len(a_lams)} modes for n={n}"
        )
    order = np.argsort(a_lams)[::-1]
    A = np.column_stack([a_vecs[i] for i in order])  # columns a_k
    lams = np.asarray(a_lams)[order]
    B = -J @ A
    U = np.vstack([A.T, B.T])
    delta = np.concatenate([lams, 1.0 / lams])
    return U, delta


def xp_to_ab_permutation(n: int) -> np.ndarray:
    """Index array perm with z_ab[i] = z_xp[perm[i]]."""
    perm = np.empty(2 * n, dtype=int)
    perm[0::2] = np.arange(n)          # x_k sits at xp index k
    perm[1::2] = np.arange(n) + n      # p_k sits at xp index n + k
    return perm


def reorder(M, src: str, dst: str) -> np.ndarray:
    """Similarity transform of a matrix between the two index orderings."""
    M = _check_even_square(M)
    for tag in (src, dst):
        if tag not in (XP_BLOCK, AB_INTERLEAVED):
            raise DomainError(f"unknown ordering tag {tag!r}")
    if src == dst:
        return M.copy()
    n = M.shape[0] // 2
    perm = xp_to_ab_permutation(n)
    if src == XP_BLOCK:  # to ab-interleaved
        return M[np.ix_(perm, perm)]
    inv = np.argsort(perm)
    return M[np.ix_(inv, inv)]


def partial_reflection_matrix(n_a: int, n_b: int, ordering: str = XP_BLOCK) -> np.ndarray:
    """Diagonal matrix of the involution (x_B, p_B) -> (x_B, -p_B)."""
    if n_a < 1 or n_b < 1:
        raise DomainError("both parts of the split must have at least one mode")
    n = n_a + n_b
    d = np.ones(2 * n)
    d[n + n_a:] = -1.0  # p_B entries in xp-block ordering
    M = np.diag(d)
    if ordering == XP_BLOCK:
        return M
    if ordering == AB_INTERLEAVED:
        return reorder(M, XP_BLOCK, AB_INTERLEAVED)
    raise DomainError(f"unknown ordering tag {ordering!r}")


def random_symplectic(n: int, rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """Random symplectic matrix exp(J A) with A symmetric."""
    A = rng.normal(scale=scale, size=(2 * n, 2 * n))
    A = 0.5 * (A + A.T)
    J = standard_symplectic_form(n)
    return scipy.linalg.expm(J @ A)
