"""Batch command-line front-end.

Subcommands load states, symbols, and windows from files, run the in-memory
analyses, and emit a JSON report (stdout or ``--out``) plus CSV side files
for anything matrix- or field-valued.  Exit codes: 0 success, 2 for
precondition or parse failures, 3 when ``--strict`` escalates a
numerical-accuracy warning.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

import numpy as np

from . import fileio
from .errors import AccuracyWarning, PhasekitError
from .gaussian import is_pure, quantum_positivity
from .grids import Grid1D, standard_gaussian
from .operators import (
    toeplitz_density,
    toeplitz_operator_direct,
    toeplitz_operator_weyl,
    toeplitz_weyl_symbol,
    trace_via_symbol,
    verify_density_operator,
)
from .selfcheck import run_all
from .separability import (
    certificate_ww_factors,
    disentangle_by_rotation,
    ppt_check,
    verify_ww_certificate,
)
from .symplectic import XP_BLOCK, standard_symplectic_form, symplectic_eigenvalues, williamson
from .transforms import (
    ambiguity,
    cross_wigner,
    kernel_to_weyl_symbol,
    weyl_symbol_to_kernel,
)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_STRICT_WARNING = 3

DEFAULT_TOLERANCES = {
    "positivity": 1e-10,
    "symplectic": 1e-9,
    "boundary": 1e-9,
    "route": 1e-6,
}


def _tol_pair(text: str):
    name, _, value = text.partition("=")
    if not name or not value:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    v = float(value)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"tolerance {name} must be positive")
    return name, v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasekit",
        description="Phase-space analysis of Gaussian and Toeplitz quantum states",
    )
    parser.add_argument("--hbar", type=float, default=None, help="Planck constant (default 1.0)")
    parser.add_argument("--grid-n", type=int, default=None, help="grid points, power of two (default 256)")
    parser.add_argument("--span", type=float, default=None, help="grid half-span in units of sqrt(hbar) (default 8.0)")
    parser.add_argument("--tol", type=_tol_pair, action="append", default=[], metavar="NAME=VAL", help="override a named tolerance")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized commands (default 42)")
    parser.add_argument("--strict", action="store_true", help="escalate accuracy warnings to exit code 3")
    parser.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    parser.add_argument("--config", default=None, help="JSON config file (flags take precedence)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-state", help="quantum validity and purity of a covariance matrix")
    p.add_argument("cov_file")

    p = sub.add_parser("williamson", help="Williamson normal form of a covariance matrix")
    p.add_argument("cov_file")
    p.add_argument("--s-out", default=None, help="write the diagonalizing symplectic matrix here")

    p = sub.add_parser("separability", help="separability analysis of a bipartite covariance")
    p.add_argument("cov_file")
    p.add_argument("--split", required=True, metavar="NA,NB", help="mode split, e.g. 1,1")
    p.add_argument("--method", choices=("ppt", "rotation", "certificate"), default="ppt")
    p.add_argument("--sigma-a", default=None, help="A-factor covariance file (method=certificate)")
    p.add_argument("--sigma-b", default=None, help="B-factor covariance file (method=certificate)")
    p.add_argument("--certificate-out", default=None, help="write the rotation certificate JSON here")

    p = sub.add_parser("toeplitz", help="build a Toeplitz operator from a symbol and window")
    p.add_argument("symbol_file")
    p.add_argument("--window", default="std-gaussian", help="window wavefunction CSV, or 'std-gaussian'")
    p.add_argument("--route", choices=("direct", "weyl", "both"), default="weyl")
    p.add_argument("--density", action="store_true", help="enforce density-operator preconditions and report the verdict")
    p.add_argument("--operator-out", default=None, help="write the operator matrix here (JSON+CSV)")

    p = sub.add_parser("wigner", help="(cross-)Wigner transform of one or two wavefunctions")
    p.add_argument("psi_file")
    p.add_argument("phi_file", nargs="?", default=None)
    p.add_argument("--field-out", default=None, help="write the phase-space samples CSV here")

    p = sub.add_parser("ambiguity", help="radar ambiguity transform of a wavefunction pair")
    p.add_argument("psi_file")
    p.add_argument("phi_file", nargs="?", default=None)
    p.add_argument("--field-out", default=None)

    p = sub.add_parser("weyl", help="convert between Weyl symbols and operator kernels")
    p.add_argument("input_file")
    p.add_argument("--direction", choices=("symbol-to-kernel", "kernel-to-symbol"), required=True)
    p.add_argument("--operator-out", default=None)
    p.add_argument("--field-out", default=None)

    sub.add_parser("selftest", help="run the full acceptance battery")
    return parser


class RunConfig:
    def __init__(self, args):
        file_cfg = {}
        if args.config:
            file_cfg = fileio.read_json(args.config)
        def pick(flag, key, default):
            if flag is not None:
                return flag
            return file_cfg.get(key, default)
        self.hbar = float(pick(args.hbar, "hbar", 1.0))
        self.grid_n = int(pick(args.grid_n, "grid_n", 256))
        self.span = float(pick(args.span, "span", 8.0))
        self.seed = int(pick(args.seed, "seed", 42))
        self.tolerances = dict(DEFAULT_TOLERANCES)
        self.tolerances.update(file_cfg.get("tolerances", {}))
        self.tolerances.update(dict(args.tol))
        if self.hbar <= 0:
            raise PhasekitError("hbar must be positive")
        if self.grid_n < 16 or self.grid_n & (self.grid_n - 1):
            raise PhasekitError("grid-n must be a power of two, at least 16")
        if any(v <= 0 for v in self.tolerances.values()):
            raise PhasekitError("tolerances must be positive")

    def grid(self) -> Grid1D:
        return Grid1D.centered(self.grid_n, self.span * np.sqrt(self.hbar))

    def as_dict(self) -> dict:
        return {
            "hbar": self.hbar,
            "grid_n": self.grid_n,
            "span": self.span,
            "seed": self.seed,
            "tolerances": self.tolerances,
        }


def _split(text: str):
    try:
        n_a, n_b = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise PhasekitError(f"--split must be NA,NB integers, got {text!r}") from exc
    return n_a, n_b


def cmd_check_state(args, cfg: RunConfig) -> dict:
    sigma = fileio.load_matrix(args.cov_file, XP_BLOCK)
    report = quantum_positivity(sigma, cfg.hbar, tol=cfg.tolerances["positivity"])
    spectrum = symplectic_eigenvalues(sigma)
    spectral_valid = bool(spectrum[-1] >= 0.5 * cfg.hbar - cfg.tolerances["positivity"])
    return {
        "valid": bool(report.valid),
        "min_eig": report.min_eig,
        "symplectic_spectrum": spectrum.tolist(),
        "pure": bool(report.valid and is_pure(sigma, cfg.hbar)),
        "routes_agree": bool(report.valid == spectral_valid),
    }


def cmd_williamson(args, cfg: RunConfig) -> dict:
    sigma = fileio.load_matrix(args.cov_file, XP_BLOCK)
    S, lams = williamson(sigma)
    n = sigma.shape[0] // 2
    J = standard_symplectic_form(n)
    D = np.diag(np.concatenate([lams, lams]))
    result = {
        "symplectic_eigenvalues": lams.tolist(),
        "S": S.tolist(),
        "residual_symplectic": float(np.abs(S.T @ J @ S - J).max()),
        "residual_reconstruction": float(np.abs(S @ D @ S.T - sigma).max()),
    }
    if args.s_out:
        fileio.save_matrix(args.s_out, S, XP_BLOCK)
        result["s_file"] = args.s_out
    return result


def cmd_separability(args, cfg: RunConfig) -> dict:
    sigma = fileio.load_matrix(args.cov_file, XP_BLOCK)
    n_a, n_b = _split(args.split)
    tol = cfg.tolerances["boundary"]
    if args.method == "ppt":
        report = ppt_check(sigma, n_a, n_b, cfg.hbar, tol=tol)
        verdict = "inconclusive at tolerance" if abs(report.min_eig) < tol else (
            "ppt (necessary condition passed)" if report.ppt else "entangled"
        )
        return {
            "method": "ppt",
            "verdict": verdict,
            "min_eig": report.min_eig,
            "min_symplectic_eig": report.min_symplectic_eig,
        }
    if args.method == "rotation":
        cert = disentangle_by_rotation(sigma, n_a, n_b, cfg.hbar)
        result = {
            "method": "rotation",
            "separable_after_rotation": bool(cert.residual_min_eig >= -tol),
            "residual_min_eig": cert.residual_min_eig,
            "delta_a": cert.delta_a.tolist(),
            "delta_b": cert.delta_b.tolist(),
        }
        if args.certificate_out:
            fileio.write_json(
                args.certificate_out,
                {
                    "U": cert.U.tolist(),
                    "delta_a": cert.delta_a.tolist(),
                    "delta_b": cert.delta_b.tolist(),
                    "residual_min_eig": cert.residual_min_eig,
                    "hbar": cert.hbar,
                    "split": list(cert.split),
                },
            )
            result["certificate_file"] = args.certificate_out
        return result
    if not args.sigma_a or not args.sigma_b:
        raise PhasekitError("method=certificate needs --sigma-a and --sigma-b")
    sigma_a = fileio.load_matrix(args.sigma_a, XP_BLOCK)
    sigma_b = fileio.load_matrix(args.sigma_b, XP_BLOCK)
    ok = verify_ww_certificate(sigma, sigma_a, sigma_b, cfg.hbar, tol=tol)
    return {"method": "certificate", "verdict": "separable" if ok else "not certified"}


def cmd_toeplitz(args, cfg: RunConfig) -> dict:
    symbol = fileio.load_phase_function(args.symbol_file, cfg.hbar)
    grid = symbol.grid.x_grid
    if args.window == "std-gaussian":
        phi = standard_gaussian(grid, cfg.hbar)
    else:
        phi = fileio.load_wavefunction(args.window)
        if phi.grid != grid:
            raise PhasekitError("window grid does not match the symbol grid")
    result: dict = {"route": args.route}
    if args.density:
        route = args.route if args.route != "both" else "weyl"
        op = toeplitz_density(symbol, phi, cfg.hbar, route=route)
        report = verify_density_operator(op)
        result["density_report"] = {
            "hermitian": report.hermitian,
            "hermitian_residual": report.hermitian_residual,
            "min_eig": report.min_eig,
            "trace": report.trace,
            "is_density": report.is_density,
        }
    else:
        ops = {}
        if args.route in ("direct", "both"):
            ops["direct"] = toeplitz_operator_direct(symbol, phi, cfg.hbar)
        if args.route in ("weyl", "both"):
            ops["weyl"] = toeplitz_operator_weyl(symbol, phi, cfg.hbar)
        op = ops.get("weyl", ops.get("direct"))
        if len(ops) == 2:
            residual = float(np.abs(ops["direct"].entries - ops["weyl"].entries).max())
            result["route_agreement_residual"] = residual
            result["routes_agree"] = bool(residual < cfg.tolerances["route"])
        result["trace"] = float(op.trace().real)
        result["min_eig"] = float(op.eigenvalues()[0])
        result["trace_via_symbol"] = float(
            trace_via_symbol(toeplitz_weyl_symbol(symbol, phi, cfg.hbar), cfg.hbar).real
        )
    if args.operator_out:
        fileio.save_operator(args.operator_out, op, cfg.hbar)
        result["operator_file"] = args.operator_out
    return result


def _load_pair(args):
    psi = fileio.load_wavefunction(args.psi_file)
    phi = fileio.load_wavefunction(args.phi_file) if args.phi_file else psi
    return psi, phi


def cmd_wigner(args, cfg: RunConfig) -> dict:
    psi, phi = _load_pair(args)
    W = cross_wigner(psi, phi, cfg.hbar)
    result = {
        "marginal_residual": abs(W.integral - psi.inner(phi)),
        "real_valued": bool(np.abs(W.values.imag).max() < 1e-12),
        "max_abs": float(np.abs(W.values).max()),
    }
    if args.field_out:
        fileio.save_phase_function(args.field_out, W)
        result["field_file"] = args.field_out
    return result


def cmd_ambiguity(args, cfg: RunConfig) -> dict:
    psi, phi = _load_pair(args)
    A = ambiguity(psi, phi, cfg.hbar)
    N = psi.grid.n_points
    center = A.values[N // 2, N // 2]
    result = {
        "center_value": [center.real, center.imag],
        "center_inner_product_residual": abs(
            center - psi.inner(phi) / (2.0 * np.pi * cfg.hbar)
        ),
        "max_abs": float(np.abs(A.values).max()),
    }
    if args.field_out:
        fileio.save_phase_function(args.field_out, A)
        result["field_file"] = args.field_out
    return result


def cmd_weyl(args, cfg: RunConfig) -> dict:
    if args.direction == "symbol-to-kernel":
        symbol = fileio.load_phase_function(args.input_file, cfg.hbar)
        op = weyl_symbol_to_kernel(symbol, cfg.hbar)
        result = {
            "direction": args.direction,
            "trace": float(op.trace().real),
            "hermitian_residual": op.hermiticity_residual(),
        }
        if args.operator_out:
            fileio.save_operator(args.operator_out, op, cfg.hbar)
            result["operator_file"] = args.operator_out
        return result
    op = fileio.load_operator(args.input_file, cfg.hbar)
    symbol = kernel_to_weyl_symbol(op, cfg.hbar)
    result = {
        "direction": args.direction,
        "symbol_integral": [symbol.integral.real, symbol.integral.imag],
        "trace_via_symbol": float(trace_via_symbol(symbol, cfg.hbar).real),
    }
    if args.field_out:
        fileio.save_phase_function(args.field_out, symbol)
        result["field_file"] = args.field_out
    return result


def cmd_selftest(args, cfg: RunConfig) -> dict:
    results = run_all(hbar=cfg.hbar, seed=cfg.seed)
    return {
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail, "seconds": round(r.seconds, 3)}
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }


_COMMANDS = {
    "check-state": cmd_check_state,
    "williamson": cmd_williamson,
    "separability": cmd_separability,
    "toeplitz": cmd_toeplitz,
    "wigner": cmd_wigner,
    "ambiguity": cmd_ambiguity,
    "weyl": cmd_weyl,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    caught: list[str] = []
    try:
        cfg = RunConfig(args)
        with warnings.catch_warnings(record=True) as wlist:
            warnings.simplefilter("always", AccuracyWarning)
            results = _COMMANDS[args.command](args, cfg)
            caught = [str(w.message) for w in wlist if issubclass(w.category, AccuracyWarning)]
    except (PhasekitError, ValueError) as exc:
        report = {"command": args.command, "error": str(exc)}
        print(json.dumps(report, indent=2, sort_keys=True))
        return EXIT_PRECONDITION
    report = {
        "command": args.command,
        "config": cfg.as_dict(),
        "results": results,
        "warnings": caught,
        "seconds": round(time.perf_counter() - t0, 3),
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.command == "selftest" and not results["all_passed"]:
        return 1
    if args.strict and caught:
        return EXIT_STRICT_WARNING
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
