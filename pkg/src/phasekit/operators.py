"""Toeplitz / anti-Wick operator matrices, traces, and density verification.

Two independent construction routes are provided for the Toeplitz operator
with symbol a and window phi:

* the direct route sums displaced-window projectors over the phase grid,
* the Weyl route convolves the symbol with the window's Wigner transform
  and converts the resulting Weyl symbol to a kernel.

Their agreement is the executable content of the symbol-convolution identity.
"""

from __future__ import annotations

import warnings
from typing import NamedTuple

import numpy as np

from .errors import AccuracyWarning, DimensionError, PreconditionError
from .grids import OperatorMatrix, PhaseFunction, WaveFunction, standard_gaussian
from .transforms import _offset_dft, cross_wigner, linear_convolve, weyl_symbol_to_kernel


def _check_pair(a: PhaseFunction, phi: WaveFunction):
    if a.grid.x_grid != phi.grid:
        raise DimensionError("symbol and window live on different grids")
    if abs(phi.norm - 1.0) > 1e-8:
        warnings.warn(
            f"window is not L2-normalized (norm {phi.norm:.8g}); "
            "operator scales by the squared norm per projector",
            AccuracyWarning,
            stacklevel=3,
        )


def toeplitz_operator_direct(a: PhaseFunction, phi: WaveFunction, hbar: float) -> OperatorMatrix:
    """Quadrature of the projector integral
    A = sum_{z0 in grid} a(z0) |T(z0) phi><T(z0) phi| dx dp.

    The x0/2 phase of the displacement cancels inside the projector, which
    leaves A(x, x') = sum_{x0} phi(x - x0) conj(phi(x' - x0))
                      [sum_{p0} a(x0, p0) e^{i p0 (x - x') / hbar} dp] dx,
    an exact reordering of the projector sum."""
    _check_pair(a, phi)
    grid = phi.grid
    N = grid.n_points
    av = np.asarray(a.values, dtype=complex)
    # B[s, d] = sum_j a[s, j] exp(+i 2 pi (j - N/2) d / N) dp ; exact period N in d
    B = av @ _offset_dft(N, +1) * a.grid.dp
    # Phi[s, k] = phi(x_k - x0_s), zero-filled outside the grid
    s = np.arange(N)[:, None]
    k = np.arange(N)[None, :]
    idx = k - s + N // 2
    valid = (idx >= 0) & (idx < N)
    Phi = np.zeros((N, N), dtype=complex)
    Phi[valid] = phi.samples[idx[valid]]
    D = (k - k.T) % N  # D[i, j] = (i - j) mod N
    A = np.zeros((N, N), dtype=complex)
    for si in range(N):
        row = Phi[si]
        if not row.any():
            continue
        A += np.outer(row, row.conj()) * B[si][D]
    A *= grid.dx
    return OperatorMatrix(grid=grid, entries=A)


def toeplitz_weyl_symbol(a: PhaseFunction, phi: WaveFunction, hbar: float) -> PhaseFunction:
    """Weyl symbol (2 pi hbar) (a * W phi) of the Toeplitz operator."""
    wphi = cross_wigner(phi, phi, hbar)
    conv = linear_convolve(a, wphi)
    return PhaseFunction(grid=a.grid, values=2.0 * np.pi * hbar * conv.values)


def toeplitz_operator_weyl(a: PhaseFunction, phi: WaveFunction, hbar: float) -> OperatorMatrix:
    """Toeplitz operator built through its Weyl symbol."""
    _check_pair(a, phi)
    return weyl_symbol_to_kernel(toeplitz_weyl_symbol(a, phi, hbar), hbar)


def anti_wick(a: PhaseFunction, hbar: float, route: str = "weyl") -> OperatorMatrix:
    """Anti-Wick operator: the Toeplitz operator with the standard Gaussian
    window."""
    phi0 = standard_gaussian(a.grid.x_grid, hbar)
    if route == "weyl":
        return toeplitz_operator_weyl(a, phi0, hbar)
    if route == "direct":
        return toeplitz_operator_direct(a, phi0, hbar)
    raise PreconditionError(f"unknown route {route!r}")


def trace_via_symbol(a: PhaseFunction, hbar: float, boundary_tol: float = 1e-6) -> complex:
    """Trace of the Weyl operator with symbol a:
    (2 pi hbar)^{-1} sum a(z) dx dp.

    Warns when the symbol carries significant mass on the grid boundary."""
    av = np.abs(np.asarray(a.values))
    total = float(np.sum(av))
    if total > 0:
        edge = float(np.sum(av[0, :]) + np.sum(av[-1, :]) + np.sum(av[:, 0]) + np.sum(av[:, -1]))
        if edge > boundary_tol * total:
            warnings.warn(
                f"symbol boundary mass fraction {edge / total:.3e} exceeds {boundary_tol:.1e}; "
                "the trace quadrature may be inaccurate",
                AccuracyWarning,
                stacklevel=2,
            )
    return complex(np.sum(a.values) * a.grid.weight / (2.0 * np.pi * hbar))


class DensityReport(NamedTuple):
    hermitian: bool
    hermitian_residual: float
    min_eig: float
    trace: float
    is_density: bool


def verify_density_operator(M: OperatorMatrix, tol: float = 1e-6) -> DensityReport:
    """Check Hermiticity, positive semidefiniteness and unit trace."""
    res = M.hermiticity_residual()
    hermitian = res <= tol
    min_eig = float(M.eigenvalues()[0])
    trace = M.trace()
    trace_ok = abs(trace - 1.0) <= tol
    return DensityReport(
        hermitian=hermitian,
        hermitian_residual=res,
        min_eig=min_eig,
        trace=float(trace.real),
        is_density=bool(hermitian and min_eig >= -tol and trace_ok),
    )


def toeplitz_density(
    mu: PhaseFunction, phi: WaveFunction, hbar: float, route: str = "weyl"
) -> OperatorMatrix:
    """Toeplitz density operator for a probability density mu and an
    L2-normalized window phi; it has unit trace and is positive
    semidefinite by construction."""
    mv = np.asarray(mu.values)
    if np.iscomplexobj(mv) and np.max(np.abs(mv.imag)) > 1e-12 * max(np.max(np.abs(mv)), 1.0):
        raise PreconditionError("mu must be real-valued")
    mv = mv.real
    if np.min(mv) < -1e-12 * max(float(np.max(np.abs(mv))), 1.0):
        raise PreconditionError(f"mu must be nonnegative (min {np.min(mv):.3e})")
    total = float(np.sum(mv) * mu.grid.weight)
    if abs(total - 1.0) > 1e-8:
        raise PreconditionError(f"mu must integrate to 1 on the grid, got {total:.10g}")
    if abs(phi.norm - 1.0) > 1e-8:
        raise PreconditionError(f"window must be L2-normalized, got norm {phi.norm:.10g}")
    if route == "weyl":
        op = toeplitz_operator_weyl(mu, phi, hbar)
    elif route == "direct":
        op = toeplitz_operator_direct(mu, phi, hbar)
    else:
        raise PreconditionError(f"unknown route {route!r}")
    return op
