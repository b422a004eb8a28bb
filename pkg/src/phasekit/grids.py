"""Uniform grids, sampled wavefunctions and phase-space functions (n = 1).

Conventions
-----------
The position grid has N points x_k = (k - N/2) dx, symmetric about 0.  The
momentum grid is FFT-conjugate: p_j = (j - N/2) dp with dp = 2 pi hbar / (N dx),
so dx dp N = 2 pi hbar.  PhaseFunction values are indexed [ix, ip].  An
OperatorMatrix holds kernel samples; the operator acts by
(A psi)_j = sum_k entries[j, k] psi_k dx.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import AccuracyWarning, DimensionError, DomainError, PreconditionError


@dataclass(frozen=True)
class Grid1D:
    n_points: int
    dx: float

    def __post_init__(self):
        if self.n_points < 16:
            raise DomainError(f"grid needs at least 16 points, got {self.n_points}")
        if self.n_points % 2 != 0:
            raise DomainError("grid size must be even")
        if self.dx <= 0:
            raise DomainError("dx must be positive")

    @classmethod
    def centered(cls, n_points: int, half_span: float) -> "Grid1D":
        """Grid covering [-half_span, half_span) with n_points samples."""
        return cls(n_points=n_points, dx=2.0 * half_span / n_points)

    @property
    def x(self) -> np.ndarray:
        half = self.n_points // 2
        return (np.arange(self.n_points) - half) * self.dx

    @property
    def half_span(self) -> float:
        return 0.5 * self.n_points * self.dx


@dataclass(frozen=True)
class PhaseGrid:
    x_grid: Grid1D
    hbar: float

    @property
    def dp(self) -> float:
        return 2.0 * np.pi * self.hbar / (self.x_grid.n_points * self.x_grid.dx)

    @property
    def p(self) -> np.ndarray:
        n = self.x_grid.n_points
        return (np.arange(n) - n // 2) * self.dp

    @property
    def x(self) -> np.ndarray:
        return self.x_grid.x

    @property
    def weight(self) -> float:
        """Quadrature weight dx dp of one phase-space cell."""
        return self.x_grid.dx * self.dp


@dataclass
class WaveFunction:
    grid: Grid1D
    samples: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.shape != (self.grid.n_points,):
            raise DimensionError(
                f"expected {self.grid.n_points} samples, got {self.samples.shape}"
            )
        if not np.all(np.isfinite(self.samples.view(float))):
            raise DomainError("wavefunction samples must be finite")

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.grid.dx))

    def normalized(self) -> "WaveFunction":
        return WaveFunction(grid=self.grid, samples=self.samples / self.norm)

    def inner(self, other: "WaveFunction") -> complex:
        """L2 scalar product (self | other) = int self conj(other) dx."""
        if other.grid != self.grid:
            raise DimensionError("wavefunctions live on different grids")
        return complex(np.sum(self.samples * np.conj(other.samples)) * self.grid.dx)


@dataclass
class PhaseFunction:
    grid: PhaseGrid
    values: np.ndarray  # shape (N, N), indexed [ix, ip]

    def __post_init__(self):
        self.values = np.asarray(self.values)
        n = self.grid.x_grid.n_points
        if self.values.shape != (n, n):
            raise DimensionError(f"expected {(n, n)} values, got {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise DomainError("phase-space samples must be finite")

    @property
    def integral(self) -> complex:
        return complex(np.sum(self.values) * self.grid.weight)

    def l1_norm(self) -> float:
        return float(np.sum(np.abs(self.values)) * self.grid.weight)

    def linf_norm(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass
class OperatorMatrix:
    grid: Grid1D
    entries: np.ndarray  # shape (N, N), kernel samples K(x_j, x_k)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        n = self.grid.n_points
        if self.entries.shape != (n, n):
            raise DimensionError(f"expected {(n, n)} entries, got {self.entries.shape}")

    @property
    def weight(self) -> float:
        return self.grid.dx

    def apply(self, psi: WaveFunction) -> WaveFunction:
        if psi.grid != self.grid:
            raise DimensionError("operator and wavefunction grids differ")
        return WaveFunction(grid=self.grid, samples=self.entries @ psi.samples * self.grid.dx)

    def trace(self) -> complex:
        return complex(np.trace(self.entries) * self.grid.dx)

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        """Operator eigenvalues (the kernel matrix scaled by dx), ascending.

        Hermitizes first; meaningful for operators that are Hermitian within
        roundoff.
        """
        H = 0.5 * (self.entries + self.entries.conj().T) * self.grid.dx
        return np.linalg.eigvalsh(H)


def standard_gaussian(grid: Grid1D, hbar: float) -> WaveFunction:
    """The standard Gaussian (pi hbar)^{-1/4} exp(-x^2 / (2 hbar))."""
    if grid.half_span < 6.0 * np.sqrt(hbar):
        warnings.warn(
            "grid narrower than 6 sqrt(hbar); Gaussian tails are truncated",
            AccuracyWarning,
            stacklevel=2,
        )
    x = grid.x
    return WaveFunction(
        grid=grid,
        samples=(np.pi * hbar) ** (-0.25) * np.exp(-(x**2) / (2.0 * hbar)),
    )


def hermite1(grid: Grid1D, hbar: float) -> WaveFunction:
    """First excited oscillator state, L2-normalized."""
    x = grid.x
    samples = (np.pi * hbar) ** (-0.25) * np.sqrt(2.0 / hbar) * x * np.exp(-(x**2) / (2.0 * hbar))
    return WaveFunction(grid=grid, samples=samples)


def sample_gaussian_window(X: float, Y: float, grid: Grid1D, hbar: float) -> WaveFunction:
    """Samples of the generalized Gaussian window phi_{X,Y} for one mode.

    phi(x) = (pi hbar)^{-1/4} X^{1/4} exp(-(X + iY) x^2 / (2 hbar)).
    """
    if X <= 0:
        raise DomainError("X must be positive")
    x = grid.x
    samples = (np.pi * hbar) ** (-0.25) * X**0.25 * np.exp(-(X + 1j * Y) * x**2 / (2.0 * hbar))
    return WaveFunction(grid=grid, samples=samples)


def heisenberg_translate(psi: WaveFunction, z0, hbar: float) -> WaveFunction:
    """Heisenberg displacement T(z0) psi (x) = e^{i(p0 x - p0 x0/2)/hbar} psi(x - x0).

    x0 must be an integer multiple of dx (no interpolation); p0 is free.
    The translated function is zero-filled where x - x0 leaves the grid.
    """
    x0, p0 = float(z0[0]), float(z0[1])
    dx = psi.grid.dx
    shift_f = x0 / dx
    shift = int(round(shift_f))
    if abs(shift_f - shift) > 1e-9:
        raise PreconditionError(
            f"x0 = {x0} is not grid-aligned (dx = {dx}); interpolation is refused"
        )
    n = psi.grid.n_points
    out = np.zeros(n, dtype=complex)
    if shift >= 0:
        out[shift:] = psi.samples[: n - shift]
    else:
        out[:shift] = psi.samples[-shift:]
    phase = np.exp(1j * (p0 * psi.grid.x - 0.5 * p0 * x0) / hbar)
    return WaveFunction(grid=psi.grid, samples=phase * out)
