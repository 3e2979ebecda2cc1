"""Command-line front end.

Exit codes: 0 success, 2 invalid or infeasible input, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .errors import NotInvariant, SymtrigError
from .lattice import matrix_order, weight_set
from .oracle import GridSpec, grid_minimize
from .reptheory import build_perm_rep, character_table, multiplicities, serre_basis
from .sdp import MODES, SolverConfig, block_size_report, build, certify, solve
from .trigpoly import is_invariant, poly_from_json, symmetrize
from .weyl import generate

ALL_MODES = ("dense", "invariant", "block", "oracle", "sizes")

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 2, 3


@dataclass
class RunRequest:
    input: str
    degree: int | None = None
    modes: tuple[str, ...] = ALL_MODES
    format: str = "text"
    solver: SolverConfig = field(default_factory=SolverConfig)
    symmetrize: bool = False
    parallel: bool = False
    seed: int = 0
    resolution: int = 64

    def __post_init__(self):
        if not self.modes:
            raise ValueError("at least one mode is required")
        bad = [m for m in self.modes if m not in ALL_MODES]
        if bad:
            raise ValueError(f"unknown modes {bad}; choose from {', '.join(ALL_MODES)}")


def run(req: RunRequest) -> dict:
    """Run the requested modes and return a JSON-serialisable report."""
    text = Path(req.input).read_text()
    f = poly_from_json(text)
    rs = f.rs
    W = generate(rs)
    d = matrix_order(rs, f) if req.degree is None else req.degree

    solve_modes = [m for m in req.modes if m in MODES]
    needs_group = any(m in ("invariant", "block") for m in solve_modes)
    if needs_group and not is_invariant(W, f, tol=1e-9):
        if not req.symmetrize:
            raise NotInvariant("input is not W-invariant; pass --symmetrize to average it")
        f_inv = symmetrize(W, f)
    else:
        f_inv = f

    ws = weight_set(rs, d, W)
    ct = character_table(W)
    mults = multiplicities(build_perm_rep(W, ws), ct)
    sab = serre_basis(build_perm_rep(W, ws), ct) if "block" in solve_modes else None

    report: dict = {
        "root_system": str(rs.id),
        "degree": d,
        "n_weights": len(ws),
        "symmetrized": f_inv is not f,
        "layout": [{"irrep": lbl, "dim": di, "mult": m}
                   for lbl, di, m in zip(ct.labels, ct.dims, mults)],
        "bounds": {},
        "solver": {},
    }

    def one(mode):
        poly = f if mode == "dense" else f_inv
        prob = build(poly, d, mode, sab=sab if mode == "block" else None, W=W)
        res = solve(prob, req.solver)
        cert = certify(res, prob) if res.converged else None
        return mode, res, cert

    if req.parallel and len(solve_modes) > 1:
        with ThreadPoolExecutor(max_workers=len(solve_modes)) as pool:
            results = list(pool.map(one, solve_modes))
    else:
        results = [one(m) for m in solve_modes]

    failed = []
    for mode, res, cert in results:
        report["bounds"][mode] = res.bound
        report["solver"][mode] = {
            "status": res.status,
            "iterations": res.iterations,
            "final_mu": res.final_mu,
            "min_eigenvalue": res.primal_feasibility,
            "certified_value": None if cert is None else cert.value,
        }
        if not res.converged:
            failed.append(mode)

    if "oracle" in req.modes:
        val, u = grid_minimize(f, GridSpec(resolution=req.resolution))
        report["oracle"] = {"value": val, "argmin": [float(x) for x in u]}
    if "sizes" in req.modes:
        sizes = block_size_report(rs, W, d, sab).as_dict()
        sizes["note"] = f"{sizes['distinct_entries']} vs {sizes['dense']} entries"
        report["sizes"] = sizes
    report["seed"] = req.seed
    if failed:
        report["failed"] = failed
    return report


def format_text(report: dict) -> str:
    lines = [f"root system {report['root_system']}, degree {report['degree']}, "
             f"|Omega_d| = {report['n_weights']}"]
    if report.get("symmetrized"):
        lines.append("input was symmetrized")
    lines.append("multiplicities:")
    for b in report["layout"]:
        lines.append(f"  {b['irrep']:>10}  d_i={b['dim']}  m_i={b['mult']}")
    for mode, bound in report["bounds"].items():
        s = report["solver"][mode]
        lines.append(f"{mode:>9} bound {bound: .10f}  [{s['status']}, {s['iterations']} Newton steps]")
    if "oracle" in report:
        o = report["oracle"]
        lines.append(f"   oracle value {o['value']: .10f} at {o['argmin']}")
    if "sizes" in report:
        s = report["sizes"]
        lines.append(f"sizes: dense {s['dense']}, sab {s['sab']}"
                     + (f", chebyshev {s['chebyshev']:.4f}" if "chebyshev" in s else ""))
        lines.append(f"  {s['note']}")
    return "\n".join(lines)


def parse_args(argv=None) -> argparse.Namespace:
    ap = argparse.ArgumentParser(prog="symtrig", description="Lower bounds for invariant trigonometric polynomials")
    ap.add_argument("--input", required=True, help="polynomial JSON file")
    ap.add_argument("--degree", type=int, default=None, help="relaxation order (default: matrix order of f)")
    ap.add_argument("--modes", default=",".join(ALL_MODES), help="comma separated subset of " + ",".join(ALL_MODES))
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--tol", type=float, default=SolverConfig.tol)
    ap.add_argument("--max-iter", type=int, default=SolverConfig.max_iter)
    ap.add_argument("--mu0", type=float, default=SolverConfig.mu0)
    ap.add_argument("--resolution", type=int, default=64, help="oracle grid resolution")
    ap.add_argument("--symmetrize", action="store_true")
    ap.add_argument("--parallel", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    return ap.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    try:
        req = RunRequest(
            input=args.input,
            degree=args.degree,
            modes=tuple(m.strip() for m in args.modes.split(",") if m.strip()),
            format=args.format,
            solver=SolverConfig(tol=args.tol, max_iter=args.max_iter, mu0=args.mu0),
            symmetrize=args.symmetrize,
            parallel=args.parallel,
            seed=args.seed,
            resolution=args.resolution,
        )
        report = run(req)
    except (SymtrigError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if req.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(format_text(report))
    return EXIT_SOLVER if report.get("failed") else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
