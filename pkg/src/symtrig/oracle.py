"""Independent ground truth: grid minimisation and brute-force weight sets."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .lattice import WeightSet, make_weight_set
from .rootsys import RootSystem
from .trigpoly import TrigPoly, evaluate


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on the unit coroot cell ``[0, 1)^n`` plus local polishing."""

    resolution: int = 64
    refine: int = 20
    candidates: int = 8
    chunk: int = 1 << 16

    def __post_init__(self):
        if self.resolution < 8:
            raise ValueError("resolution must be at least 8")


def _polish(f: TrigPoly, u: np.ndarray, val: float, step: float, rounds: int):
    """Coordinate pattern search, halving the step after each sweep."""
    n = len(u)
    for _ in range(rounds):
        improved = True
        while improved:
            improved = False
            trial = np.repeat(u[None], 2 * n, axis=0)
            trial[np.arange(n), np.arange(n)] += step
            trial[n + np.arange(n), np.arange(n)] -= step
            vals = evaluate(f, trial)
            k = int(np.argmin(vals))
            if vals[k] < val:
                u, val, improved = trial[k], float(vals[k]), True
        step /= 2
    return u, val


def _min_over(f: TrigPoly, points_iter, spec: GridSpec, step: float):
    best: list[tuple[float, tuple]] = []
    for chunk in points_iter:
        vals = evaluate(f, chunk)
        k = min(spec.candidates, len(vals))
        idx = np.argpartition(vals, k - 1)[:k]
        best.extend((float(vals[i]), tuple(chunk[i])) for i in idx)
        best = sorted(best)[: spec.candidates]
    out_val, out_u = math.inf, None
    for val, u in best:
        pu, pv = _polish(f, np.array(u), val, step, spec.refine)
        if pv < out_val or (pv == out_val and tuple(pu) < tuple(out_u)):
            out_val, out_u = pv, pu
    return out_val, out_u


def _cube_chunks(n: int, res: int, chunk: int):
    total = res ** n
    for start in range(0, total, chunk):
        k = np.arange(start, min(total, start + chunk))
        digits = np.stack([(k // res ** i) % res for i in range(n)], axis=1)
        yield digits / res


def grid_minimize(f: TrigPoly, spec: GridSpec | None = None) -> tuple[float, np.ndarray]:
    """Approximate ``min f`` over one period; the value is always an attained ``f(u)``."""
    spec = spec or GridSpec()
    n = f.rs.n
    if len(f.support) == 1:
        return float(evaluate(f, np.zeros(n))), np.zeros(n)
    return _min_over(f, _cube_chunks(n, spec.resolution, spec.chunk), spec, 1.0 / spec.resolution)


def alcove_vertices(rs: RootSystem) -> list[np.ndarray]:
    """Per component: vertices of the fundamental alcove in coroot coordinates.

    The alcove is ``<alpha_i, u> >= 0`` and ``<theta, u> <= 1``; with
    ``<alpha_i, u> = (A u)_i`` its vertices are ``0`` and ``A^{-1} e_i / a_i``.
    """
    out = []
    A = rs.cartan.astype(float)
    for (_, rank, off), coeffs in zip(rs.components, rs.highest_root_coeffs):
        sl = slice(off, off + rank)
        Ainv = np.linalg.inv(A[sl, sl])
        verts = [np.zeros(rank)] + [Ainv[:, i] / coeffs[i] for i in range(rank)]
        out.append(np.array(verts))
    return out


def _simplex_grid(verts: np.ndarray, res: int) -> np.ndarray:
    k = len(verts)
    pts = []
    for comp in itertools.product(range(res + 1), repeat=k - 1):
        if sum(comp) <= res:
            bary = np.array((res - sum(comp),) + comp) / res
            pts.append(bary @ verts)
    return np.array(pts)


def fundamental_domain_minimize(f: TrigPoly, spec: GridSpec | None = None) -> tuple[float, np.ndarray]:
    """Grid search over the fundamental alcove only; valid for W-invariant ``f``."""
    spec = spec or GridSpec()
    parts = [_simplex_grid(v, spec.resolution) for v in alcove_vertices(f.rs)]
    pts = parts[0]
    for other in parts[1:]:
        pts = np.array([np.concatenate([a, b]) for a in pts for b in other])
    chunks = (pts[i : i + spec.chunk] for i in range(0, len(pts), spec.chunk))
    return _min_over(f, chunks, spec, 1.0 / spec.resolution)


def weight_set_bruteforce(rs: RootSystem, d: int) -> WeightSet:
    """``Omega_d`` from ambient coordinates, checking ``|w| <= |w - d lam|`` directly.

    Candidates come from a ball of radius ``d * sum |coroot_i|`` and the test
    vectors ``lam`` from a generous box of coroot-lattice points.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if rs.n > 2 or d > 8:
        raise ValueError("brute force is limited to rank <= 2 and d <= 8")
    den = 1
    for v in rs.fweights + rs.coroots:
        for x in v:
            den = math.lcm(den, Fraction(x).denominator)
    fw = np.array([[int(x * den) for x in v] for v in rs.fweights], dtype=np.int64)
    co = np.array([[int(x * den) for x in v] for v in rs.coroots], dtype=np.int64)

    radius = d * sum(math.sqrt(float(sum(x * x for x in c))) for c in rs.coroots)
    B = int(math.ceil(radius * max(math.sqrt(float(sum(x * x for x in c))) for c in rs.coroots))) + 1
    cand = np.array(list(itertools.product(range(-B, B + 1), repeat=rs.n)), dtype=np.int64)
    amb = cand @ fw
    r2 = (radius * den) ** 2 + 1e-9
    keep = (amb * amb).sum(axis=1) <= r2
    cand, amb = cand[keep], amb[keep]

    K = 2 * B + 2
    lam = np.array([k for k in itertools.product(range(-K, K + 1), repeat=rs.n) if any(k)], dtype=np.int64)
    lam_amb = lam @ co
    # |w|^2 <= |w - d lam|^2  <=>  2 d <w, lam> <= d^2 |lam|^2
    lhs = 2 * d * (amb @ lam_amb.T)
    rhs = d * d * (lam_amb * lam_amb).sum(axis=1)
    ok = np.all(lhs <= rhs[None, :], axis=1)
    return make_weight_set(rs, d, cand[ok].tolist())
