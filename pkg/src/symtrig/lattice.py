"""Truncated weight sets: lattice points of the scaled Voronoi cell.

A weight ``w`` lies in ``d * Vor(coroot lattice)`` iff ``2 <w, lam> <= d |lam|^2``
for every Voronoi-relevant coroot-lattice vector ``lam``.  Both sides are
rational; they are scaled to integers so every test is exact.

Relevant vectors do not depend on ``d`` and satisfy ``|lam| <= 2 R`` with ``R``
the covering radius, which is at most half the diagonal of the fundamental
parallelepiped.  Since ``lam_i = <lam, fw_i>``, the box
``|lam_i| <= 2 R |fw_i|`` contains them all.  The Voronoi cell of an
orthogonal direct sum is the product of the components' cells, so tests and
enumeration are done per irreducible component.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import WeightSetNotStable, ZeroPolynomial
from .rootsys import RootSystem, Weight, lcm_denominator


@dataclass(frozen=True, eq=False)
class _CellData:
    """Integer data of one irreducible component's Voronoi test."""

    lams: np.ndarray        # (L, r) nonzero coroot-lattice test vectors
    lam_norm: np.ndarray    # (L,) scale * |lam|^2, integers
    scale: int              # common denominator of the coroot Gram matrix
    cand_radius: np.ndarray  # (r,) |w_i| <= d * cand_radius[i] for w in d Vor


@lru_cache(maxsize=None)
def _cell_data(rs: RootSystem, comp: int) -> _CellData:
    _, rank, off = rs.components[comp]
    idx = range(off, off + rank)
    cg = [[rs.coroot_gram_exact[i][j] for j in idx] for i in idx]
    fw_norm = [math.sqrt(rs.gram_exact[i][i]) for i in idx]
    coroot_norm = [math.sqrt(cg[k][k]) for k in range(rank)]
    half_diag = 0.5 * math.sqrt(sum(float(cg[k][k]) for k in range(rank)))

    K = math.ceil(2 * half_diag * max(fw_norm)) + 1
    scale = lcm_denominator(x for row in cg for x in row)
    cg_int = np.array([[int(x * scale) for x in row] for row in cg], dtype=np.int64)
    box = np.array(list(itertools.product(range(-K, K + 1), repeat=rank)), dtype=np.int64)
    box = box[np.any(box != 0, axis=1)]
    norms = np.einsum("li,ij,lj->l", box, cg_int, box)
    # a bound on covering radius gives candidate coordinates |w_i| <= d R |coroot_i|
    cand = np.array([half_diag * c for c in coroot_norm]) * (1 + 1e-9)
    return _CellData(lams=box, lam_norm=norms, scale=scale, cand_radius=cand)


def _component_slices(rs: RootSystem):
    return [(c, slice(off, off + rank)) for c, (_, rank, off) in enumerate(rs.components)]


def voronoi_degree(rs: RootSystem, w: Sequence[int]) -> int:
    """Smallest ``d >= 0`` with ``w`` in ``d * Vor``."""
    out = 0
    w = np.asarray(w, dtype=np.int64)
    for c, sl in _component_slices(rs):
        cell = _cell_data(rs, c)
        lhs = 2 * cell.scale * (cell.lams @ w[sl])
        # ceil(lhs / norm) with exact integers
        need = -((-lhs) // cell.lam_norm)
        out = max(out, int(need.max(initial=0)))
    return out


def in_scaled_voronoi(rs: RootSystem, w: Sequence[int], d: int) -> bool:
    """Closed-cell membership: boundary weights count as inside."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return voronoi_degree(rs, w) <= d


def _component_points(rs: RootSystem, comp: int, d: int) -> np.ndarray:
    cell = _cell_data(rs, comp)
    bounds = [int(math.floor(d * r)) for r in cell.cand_radius]
    cand = np.array(list(itertools.product(*(range(-b, b + 1) for b in bounds))), dtype=np.int64)
    lhs = 2 * cell.scale * (cand @ cell.lams.T)
    ok = np.all(lhs <= d * cell.lam_norm[None, :], axis=1)
    return cand[ok]


@dataclass(frozen=True, eq=False)
class WeightSet:
    """Ordered weight set ``Omega_d`` with a position index."""

    rs: RootSystem
    d: int
    weights: tuple[Weight, ...]
    index: dict[Weight, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __contains__(self, w) -> bool:
        return tuple(w) in self.index

    @property
    def array(self) -> np.ndarray:
        return np.array(self.weights, dtype=np.int64).reshape(len(self.weights), self.rs.n)

    def differences(self) -> dict[Weight, int]:
        """``N_eta = #{(mu, nu) : mu - nu = eta}`` over the difference set."""
        return _difference_counts(self)

    def __repr__(self) -> str:
        return f"WeightSet({self.rs.id}, d={self.d}, size={len(self)})"


@lru_cache(maxsize=64)
def _difference_counts(ws: WeightSet) -> dict[Weight, int]:
    arr = ws.array
    diff = (arr[:, None, :] - arr[None, :, :]).reshape(-1, ws.rs.n)
    uniq, counts = np.unique(diff, axis=0, return_counts=True)
    return {tuple(u): int(c) for u, c in zip(uniq.tolist(), counts.tolist())}


def norm_sq_scaled(rs: RootSystem, ws: np.ndarray) -> tuple[np.ndarray, int]:
    """Integer ``scale * |w|^2`` for each row, and the scale."""
    scale = lcm_denominator(x for row in rs.gram_exact for x in row)
    g = np.array([[int(x * scale) for x in row] for row in rs.gram_exact], dtype=np.int64)
    ws = np.asarray(ws, dtype=np.int64).reshape(-1, rs.n)
    return np.einsum("ki,ij,kj->k", ws, g, ws), scale


def canonical_order(rs: RootSystem, weights: Iterable[Sequence[int]]) -> list[Weight]:
    """Sort by (norm squared, lexicographic coordinates)."""
    weights = [tuple(int(x) for x in w) for w in weights]
    if not weights:
        return []
    norms, _ = norm_sq_scaled(rs, np.array(weights))
    return [w for _, w in sorted(zip(norms.tolist(), weights))]


def make_weight_set(rs: RootSystem, d: int, weights: Iterable[Sequence[int]]) -> WeightSet:
    ordered = canonical_order(rs, weights)
    return WeightSet(rs=rs, d=d, weights=tuple(ordered), index={w: i for i, w in enumerate(ordered)})


@lru_cache(maxsize=128)
def _weight_set_cached(rs: RootSystem, d: int) -> WeightSet:
    parts = [_component_points(rs, c, d).tolist() for c, _ in _component_slices(rs)]
    points = (tuple(itertools.chain.from_iterable(p)) for p in itertools.product(*parts))
    return make_weight_set(rs, d, points)


def weight_set(rs: RootSystem, d: int, W=None) -> WeightSet:
    """``Omega_d``: weights in ``d * Vor`` in canonical order.

    When a Weyl group is passed the result is checked for stability.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    ws = _weight_set_cached(rs, d)
    if W is not None:
        check_stable(W, ws)
    return ws


def check_stable(W, ws: WeightSet) -> None:
    arr = ws.array
    for g in range(W.order):
        imgs = W.act_weights(g, arr)
        if any(tuple(v) not in ws.index for v in imgs.tolist()):
            raise WeightSetNotStable(f"{ws!r} is not stable under element {g}")


def minkowski_sum(a: WeightSet, b: WeightSet) -> set[Weight]:
    s = a.array[:, None, :] + b.array[None, :, :]
    return set(map(tuple, s.reshape(-1, a.rs.n).tolist()))


def degree(rs: RootSystem, f, W=None) -> int:
    """Smallest ``d`` with every nonconstant frequency of ``f`` in ``Omega_d``."""
    support = _support(f)
    return max((voronoi_degree(rs, w) for w in support if any(w)), default=0)


def matrix_order(rs: RootSystem, f, W=None) -> int:
    """Smallest ``d`` with ``supp(f)`` inside ``Omega_d + Omega_d``."""
    support = _support(f)
    for d in range(degree(rs, f) + 1):
        ws = weight_set(rs, d)
        diffs = ws.differences()
        if all(w in diffs for w in support):
            return d
    raise AssertionError("unreachable: Omega_D is contained in Omega_D + Omega_D")


def _support(f) -> list[Weight]:
    support = list(f.coeffs) if hasattr(f, "coeffs") else [tuple(w) for w in f]
    if not support:
        raise ZeroPolynomial("the zero polynomial has no degree")
    return support
