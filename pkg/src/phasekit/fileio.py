"""File formats for the command-line front-end.

* Matrices (covariances, symplectic matrices): JSON
  ``{"n": int, "ordering": "xp-block"|"ab-interleaved", "data": [[row], ...]}``,
  row-major doubles.
* Gaussian windows: JSON ``{"n": int, "X": [[...]], "Y": [[...]]}``.
* Wavefunctions: CSV with columns ``x, re, im`` on a uniform centered grid.
* Phase-space functions: CSV with columns ``x, p, re, im`` (x outer, p inner).
* Operator matrices: JSON header (grid metadata + CSV path) next to a CSV of
  entries with columns ``row, col, re, im``.

The CLI is the only reader and writer of these files; the compute modules
work purely in memory.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import PreconditionError
from .gaussian import GaussianWindow
from .grids import Grid1D, OperatorMatrix, PhaseFunction, PhaseGrid, WaveFunction
from .symplectic import AB_INTERLEAVED, XP_BLOCK, reorder

_ORDERINGS = (XP_BLOCK, AB_INTERLEAVED)


def _parse_error(path: str, msg: str) -> PreconditionError:
    return PreconditionError(f"{path}: {msg}")


def read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise _parse_error(path, f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    except OSError as exc:
        raise _parse_error(path, str(exc)) from exc


def write_json(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def matrix_to_payload(M: np.ndarray, ordering: str = XP_BLOCK) -> dict:
    M = np.asarray(M, dtype=float)
    return {"n": M.shape[0] // 2, "ordering": ordering, "data": M.tolist()}


def load_matrix(path: str, ordering: str = XP_BLOCK) -> np.ndarray:
    """Load a 2n x 2n real matrix, converting to the requested ordering."""
    payload = read_json(path)
    for key in ("n", "ordering", "data"):
        if key not in payload:
            raise _parse_error(path, f"missing key {key!r}")
    if payload["ordering"] not in _ORDERINGS:
        raise _parse_error(path, f"unknown ordering {payload['ordering']!r}")
    data = np.asarray(payload["data"], dtype=float)
    n = int(payload["n"])
    if data.shape != (2 * n, 2 * n):
        raise _parse_error(path, f"data shape {data.shape} does not match n = {n}")
    if payload["ordering"] != ordering:
        data = reorder(data, payload["ordering"], ordering)
    return data


def save_matrix(path: str, M: np.ndarray, ordering: str = XP_BLOCK) -> None:
    write_json(path, matrix_to_payload(M, ordering))


def load_window(path: str) -> GaussianWindow:
    payload = read_json(path)
    for key in ("X", "Y"):
        if key not in payload:
            raise _parse_error(path, f"missing key {key!r}")
    try:
        return GaussianWindow(
            X=np.asarray(payload["X"], dtype=float),
            Y=np.asarray(payload["Y"], dtype=float),
        )
    except ValueError as exc:
        raise _parse_error(path, str(exc)) from exc


def save_window(path: str, window: GaussianWindow) -> None:
    write_json(path, {"n": window.n, "X": window.X.tolist(), "Y": window.Y.tolist()})


def _load_csv(path: str, ncols: int, names: str) -> np.ndarray:
    """Load a numeric CSV, tolerating one optional header line."""
    skip = 0
    try:
        with open(path) as fh:
            first = fh.readline()
    except OSError as exc:
        raise _parse_error(path, str(exc)) from exc
    if first and not first.lstrip()[:1].isdigit() and not first.lstrip().startswith(("-", "+", ".")):
        skip = 1
    try:
        rows = np.loadtxt(path, delimiter=",", ndmin=2, skiprows=skip)
    except (OSError, ValueError) as exc:
        raise _parse_error(path, str(exc)) from exc
    if rows.shape[1] != ncols:
        raise _parse_error(path, f"expected {ncols} columns ({names}), got {rows.shape[1]}")
    return rows


def _uniform_grid(x: np.ndarray, path: str) -> Grid1D:
    if x.size < 2:
        raise _parse_error(path, "need at least two samples")
    dx = float(x[1] - x[0])
    if dx <= 0 or not np.allclose(np.diff(x), dx, rtol=0, atol=1e-9 * abs(dx)):
        raise _parse_error(path, "x column is not a uniform ascending grid")
    n = x.size
    if abs(x[0] + (n // 2) * dx) > 1e-9 * abs(dx) * n:
        raise _parse_error(path, "grid is not centered (x[0] must equal -(N/2) dx)")
    return Grid1D(n_points=n, dx=dx)


def load_wavefunction(path: str) -> WaveFunction:
    """CSV columns: x, re, im."""
    rows = _load_csv(path, 3, "x, re, im")
    grid = _uniform_grid(rows[:, 0], path)
    return WaveFunction(grid=grid, samples=rows[:, 1] + 1j * rows[:, 2])


def save_wavefunction(path: str, psi: WaveFunction) -> None:
    rows = np.column_stack([psi.grid.x, psi.samples.real, psi.samples.imag])
    np.savetxt(path, rows, delimiter=",", header="x,re,im", comments="")


def load_phase_function(path: str, hbar: float) -> PhaseFunction:
    """CSV columns: x, p, re, im, with p varying fastest."""
    rows = _load_csv(path, 4, "x, p, re, im")
    n = int(round(np.sqrt(rows.shape[0])))
    if n * n != rows.shape[0]:
        raise _parse_error(path, f"{rows.shape[0]} rows do not form a square grid")
    x = rows[::n, 0]
    grid = _uniform_grid(x, path)
    pg = PhaseGrid(x_grid=grid, hbar=hbar)
    p = rows[:n, 1]
    if not np.allclose(p, pg.p, rtol=0, atol=1e-9 * pg.dp):
        raise _parse_error(
            path, "p column is not the FFT-conjugate momentum grid for this hbar"
        )
    values = (rows[:, 2] + 1j * rows[:, 3]).reshape(n, n)
    return PhaseFunction(grid=pg, values=values)


def save_phase_function(path: str, f: PhaseFunction) -> None:
    pg = f.grid
    X, P = np.meshgrid(pg.x, pg.p, indexing="ij")
    rows = np.column_stack(
        [X.ravel(), P.ravel(), f.values.real.ravel(), f.values.imag.ravel()]
    )
    np.savetxt(path, rows, delimiter=",", header="x,p,re,im", comments="")


def load_operator(path: str, hbar: float) -> OperatorMatrix:
    """JSON header written by save_operator; entries CSV sits next to it."""
    payload = read_json(path)
    for key in ("n_points", "dx", "entries_csv"):
        if key not in payload:
            raise _parse_error(path, f"missing key {key!r}")
    grid = Grid1D(n_points=int(payload["n_points"]), dx=float(payload["dx"]))
    csv_path = os.path.join(os.path.dirname(path) or ".", payload["entries_csv"])
    rows = _load_csv(csv_path, 4, "row, col, re, im")
    N = grid.n_points
    entries = np.zeros((N, N), dtype=complex)
    r = rows[:, 0].astype(int)
    c = rows[:, 1].astype(int)
    if r.min() < 0 or r.max() >= N or c.min() < 0 or c.max() >= N:
        raise _parse_error(csv_path, "row/col indices out of range")
    entries[r, c] = rows[:, 2] + 1j * rows[:, 3]
    return OperatorMatrix(grid=grid, entries=entries)


def save_operator(path: str, M: OperatorMatrix, hbar: float) -> None:
    base = os.path.splitext(path)[0]
    csv_path = base + ".entries.csv"
    N = M.grid.n_points
    r, c = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    rows = np.column_stack(
        [r.ravel(), c.ravel(), M.entries.real.ravel(), M.entries.imag.ravel()]
    )
    np.savetxt(csv_path, rows, delimiter=",", header="row,col,re,im", comments="")
    write_json(
        path,
        {
            "n_points": N,
            "dx": M.grid.dx,
            "hbar": hbar,
            "entries_csv": os.path.basename(csv_path),
        },
    )
