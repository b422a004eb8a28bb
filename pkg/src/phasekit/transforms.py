"""Cross-Wigner, ambiguity, Weyl symbol/kernel maps and the symplectic
Fourier transform on the n = 1 phase grid.

Discretization notes
--------------------
All quadratures are uniform Riemann sums.  Arguments of the form x + y/2
land on half-grid points; wavefunctions and kernels are interpolated to a
doubled-resolution grid by spectral zero-padding (exact for band-limited
data, spectrally accurate for the decayed smooth functions used here), so
no real-space interpolation error enters.  With the y-step equal to dx the
momentum transform is alias-free across the full FFT-conjugate p range.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError
from .grids import Grid1D, OperatorMatrix, PhaseFunction, PhaseGrid, WaveFunction

_dft_cache: dict = {}


def _cdft(N: int, sign: int, step: int = 1) -> np.ndarray:
    """Centered DFT matrix E[a, b] = exp(sign i (2 pi step / N)(a - N/2)(b - N/2))."""
    key = (N, sign, step)
    if key not in _dft_cache:
        c = np.arange(N) - N // 2
        _dft_cache[key] = np.exp(sign * 1j * (2.0 * np.pi * step / N) * np.outer(c, c))
    return _dft_cache[key]


def _offset_dft(N: int, sign: int) -> np.ndarray:
    """E[b, d] = exp(sign i (2 pi / N)(b - N/2) d) for d = 0..N-1."""
    key = ("offset", N, sign)
    if key not in _dft_cache:
        b = np.arange(N) - N // 2
        d = np.arange(N)
        _dft_cache[key] = np.exp(sign * 1j * (2.0 * np.pi / N) * np.outer(b, d))
    return _dft_cache[key]


def fft_interp_double(f: np.ndarray, axis: int = 0) -> np.ndarray:
    """Band-limited interpolation from the centered N-grid (spacing dx) to the
    centered 2N-grid (spacing dx/2, points (q - N) dx / 2)."""
    f = np.asarray(f, dtype=complex)
    N = f.shape[axis]
    F = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(f, axes=axis), axis=axis), axes=axis)
    pad_width = [(0, 0)] * f.ndim
    pad_width[axis] = (N // 2, N // 2)
    Fp = np.pad(F, pad_width)
    # split the Nyquist bin symmetrically between -N/2 and +N/2
    lo = [slice(None)] * f.ndim
    hi = [slice(None)] * f.ndim
    lo[axis] = N // 2
    hi[axis] = N // 2 + N
    Fp[tuple(lo)] = 0.5 * Fp[tuple(lo)]
    Fp[tuple(hi)] = Fp[tuple(lo)]
    g = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(Fp, axes=axis), axis=axis), axes=axis)
    return 2.0 * g


def _pair_grid(psi: WaveFunction, phi: WaveFunction):
    if psi.grid != phi.grid:
        raise DimensionError("wavefunctions live on different grids")
    return psi.grid


def _y_dft(N: int) -> np.ndarray:
    """E[m, j] = exp(-i (2 pi / N)(m - N)(j - N/2)) for m = 0..2N-1 (offsets
    y = (m - N) dx) and the N momentum bins."""
    key = ("ydft", N)
    if key not in _dft_cache:
        m = np.arange(2 * N) - N
        j = np.arange(N) - N // 2
        _dft_cache[key] = np.exp(-1j * (2.0 * np.pi / N) * np.outer(m, j))
    return _dft_cache[key]


def cross_wigner(psi: WaveFunction, phi: WaveFunction, hbar: float) -> PhaseFunction:
    """Cross-Wigner transform
    W(psi, phi)(x, p) = (2 pi hbar)^{-1} int e^{-i p y / hbar}
                        psi(x + y/2) conj(phi(x - y/2)) dy
    sampled on the phase grid.  The y quadrature runs over 2N steps of dx."""
    grid = _pair_grid(psi, phi)
    N = grid.n_points
    fa = fft_interp_double(psi.samples)
    fb = fft_interp_double(phi.samples)
    k = np.arange(N)[:, None]
    m = np.arange(2 * N)[None, :]
    i1 = 2 * k + m - N
    i2 = 2 * k - m + N
    valid = (i1 >= 0) & (i1 < 2 * N) & (i2 >= 0) & (i2 < 2 * N)
    G = np.zeros((N, 2 * N), dtype=complex)
    G[valid] = fa[i1[valid]] * np.conj(fb[i2[valid]])
    W = (grid.dx / (2.0 * np.pi * hbar)) * (G @ _y_dft(N))
    return PhaseFunction(grid=PhaseGrid(x_grid=grid, hbar=hbar), values=W)


def wigner(psi: WaveFunction, hbar: float) -> PhaseFunction:
    return cross_wigner(psi, psi, hbar)


def ambiguity(psi: WaveFunction, phi: WaveFunction, hbar: float) -> PhaseFunction:
    """Radar ambiguity transform on the phase grid.

    Computed from the grid-exact quadrature
    Amb(psi, phi)(x, p) = (2 pi hbar)^{-1} e^{i p x / (2 hbar)}
                          int e^{-i p w / hbar} psi(w) conj(phi(w - x)) dw
    (substitute w = y + x/2 in the defining integral); it satisfies
    (psi | T(z) phi) = (2 pi hbar) Amb(psi, phi)(z) and
    Amb(psi, phi)(z) = (1/2) W(psi, phi^v)(z / 2)."""
    grid = _pair_grid(psi, phi)
    N = grid.n_points
    k = np.arange(N)[:, None]
    m = np.arange(N)[None, :]
    idx = m - k + N // 2
    valid = (idx >= 0) & (idx < N)
    C = np.zeros((N, N), dtype=complex)
    phis = phi.samples
    psis = np.broadcast_to(psi.samples[None, :], (N, N))
    C[valid] = psis[valid] * np.conj(phis[idx[valid]])
    core = C @ _cdft(N, -1)
    pgrid = PhaseGrid(x_grid=grid, hbar=hbar)
    phase = np.exp(0.5j * np.outer(grid.x, pgrid.p) / hbar)
    A = (grid.dx / (2.0 * np.pi * hbar)) * phase * core
    return PhaseFunction(grid=pgrid, values=A)


def weyl_symbol_to_kernel(a: PhaseFunction, hbar: float) -> OperatorMatrix:
    """Kernel of the Weyl operator with symbol a:
    K(x, y) = (2 pi hbar)^{-1} int e^{i p (x - y) / hbar} a((x + y)/2, p) dp.

    Midpoints (x + y)/2 are taken on the doubled-resolution x grid."""
    grid = a.grid.x_grid
    N = grid.n_points
    # doubled resolution in x (exact midpoints) and in p (offset periodicity
    # 2 N dx, so no wrap-around between distant kernel corners)
    fine = fft_interp_double(
        fft_interp_double(np.asarray(a.values, dtype=complex), axis=0), axis=1
    )  # (2N, 2N)
    B = fine @ _offset_dft(2 * N, +1) * (0.5 * a.grid.dp)  # B[q, d], d = (k - l) mod 2N
    k = np.arange(N)[:, None]
    l = np.arange(N)[None, :]
    K = B[k + l, (k - l) % (2 * N)] / (2.0 * np.pi * hbar)
    return OperatorMatrix(grid=grid, entries=K)


def kernel_to_weyl_symbol(K: OperatorMatrix, hbar: float) -> PhaseFunction:
    """Weyl symbol of the operator with kernel K:
    a(x, p) = int e^{-i p y / hbar} K(x + y/2, x - y/2) dy."""
    grid = K.grid
    N = grid.n_points
    fine = fft_interp_double(fft_interp_double(K.entries, axis=0), axis=1)  # (2N, 2N)
    k = np.arange(N)[:, None]
    m = np.arange(2 * N)[None, :]
    i1 = 2 * k + m - N
    i2 = 2 * k - m + N
    valid = (i1 >= 0) & (i1 < 2 * N) & (i2 >= 0) & (i2 < 2 * N)
    H = np.zeros((N, 2 * N), dtype=complex)
    H[valid] = fine[i1[valid], i2[valid]]
    a = grid.dx * (H @ _y_dft(N))
    return PhaseFunction(grid=PhaseGrid(x_grid=grid, hbar=hbar), values=a)


def symplectic_fourier(a: PhaseFunction, hbar: float) -> PhaseFunction:
    """Symplectic Fourier transform
    a_sigma(z) = (2 pi hbar)^{-1} int e^{-i sigma(z, z') / hbar} a(z') dz'
    with sigma(z, z') = p x' - x p'."""
    N = a.grid.x_grid.n_points
    Em = _cdft(N, -1)
    Ep = _cdft(N, +1)
    # out[k, j] = c * sum_{k', j'} Em[k', j] Ep[j', k] a[k', j']
    out = (Em.T @ np.asarray(a.values, dtype=complex) @ Ep).T
    out *= a.grid.weight / (2.0 * np.pi * hbar)
    return PhaseFunction(grid=a.grid, values=out)


def linear_convolve(f: PhaseFunction, g: PhaseFunction) -> PhaseFunction:
    """Linear (zero-padded) convolution of two phase-space functions on the
    same centered grid, including the dx dp quadrature weight."""
    if f.grid != g.grid:
        raise DimensionError("phase functions live on different grids")
    N = f.grid.x_grid.n_points
    M = 2 * N
    F = np.fft.fft2(np.asarray(f.values, dtype=complex), s=(M, M))
    G = np.fft.fft2(np.asarray(g.values, dtype=complex), s=(M, M))
    full = np.fft.ifft2(F * G)
    out = full[N // 2 : N // 2 + N, N // 2 : N // 2 + N] * f.grid.weight
    return PhaseFunction(grid=f.grid, values=out)


def sample_phase_function(func, grid: Grid1D, hbar: float) -> PhaseFunction:
    """Sample func(x, p) (vectorized over meshgrid arrays) on the phase grid."""
    pg = PhaseGrid(x_grid=grid, hbar=hbar)
    X, P = np.meshgrid(pg.x, pg.p, indexing="ij")
    return PhaseFunction(grid=pg, values=np.asarray(func(X, P)))
