"""Crystallographic root systems of rank <= 2 and their direct sums.

Ambient coordinates are exact rationals (Bourbaki plates). Everything else
(coroots, Cartan matrix, Gram matrices, the full root list, the highest root)
is derived from the simple roots and fundamental weights, so the tabulated
data and the defining identities cross-check each other.

Conventions
-----------
* A *weight* is an integer tuple of coordinates in the fundamental-weight
  basis ``w = sum_i w[i] * fw_i``.
* A *point* ``u`` of the ambient space is given in simple-coroot coordinates
  ``u = sum_j u[j] * coroot_j``; since ``<fw_i, coroot_j> = delta_ij`` the
  pairing of a weight and a point is the plain dot product of coordinates.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, UnsupportedType

Vector = tuple[Fraction, ...]
Weight = tuple[int, ...]

_F = Fraction

# family -> (simple roots, fundamental weights), ambient coordinates.
# A_n lives in the hyperplane of R^{n+1} orthogonal to (1, ..., 1).
_PLATES: dict[tuple[str, int], tuple[list[list[Fraction]], list[list[Fraction]]]] = {
    ("A", 1): (
        [[_F(1), _F(-1)]],
        [[_F(1, 2), _F(-1, 2)]],
    ),
    ("A", 2): (
        [[_F(1), _F(-1), _F(0)], [_F(0), _F(1), _F(-1)]],
        [[_F(2, 3), _F(-1, 3), _F(-1, 3)], [_F(1, 3), _F(1, 3), _F(-2, 3)]],
    ),
    ("B", 2): (
        [[_F(1), _F(-1)], [_F(0), _F(1)]],
        [[_F(1), _F(0)], [_F(1, 2), _F(1, 2)]],
    ),
    ("C", 2): (
        [[_F(1), _F(-1)], [_F(0), _F(2)]],
        [[_F(1), _F(0)], [_F(1), _F(1)]],
    ),
    ("G", 2): (
        [[_F(1), _F(-1), _F(0)], [_F(-2), _F(1), _F(1)]],
        [[_F(0), _F(-1), _F(1)], [_F(-1), _F(-1), _F(2)]],
    ),
}

_EXPECTED_ROOT_COUNT = {("A", 1): 2, ("A", 2): 6, ("B", 2): 8, ("C", 2): 8, ("G", 2): 12}


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), _F(0))


def _scale(c: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def _sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _coroot(r: Sequence[Fraction]) -> Vector:
    return _scale(_F(2) / _dot(r, r), r)


def _solve_small(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Exact solve for the 1x1 and 2x2 systems that occur per component."""
    if len(mat) == 1:
        return [rhs[0] / mat[0][0]]
    (a, b), (c, d) = mat
    det = a * d - b * c
    return [(d * rhs[0] - b * rhs[1]) / det, (a * rhs[1] - c * rhs[0]) / det]


@dataclass(frozen=True)
class RootSystemId:
    """Type of a root system as a sequence of irreducible components."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.components:
            raise UnsupportedType("a root system needs at least one component")
        for comp in self.components:
            if tuple(comp) not in _PLATES:
                raise UnsupportedType(
                    f"unsupported component {comp[0]}{comp[1]}; "
                    "supported: A1, A2, B2, C2, G2 and direct sums"
                )

    @classmethod
    def parse(cls, text: str) -> "RootSystemId":
        """Parse ``"A2"``, ``"a1xA1"``, ``"A2xA1"`` ..."""
        parts = [p.strip() for p in text.strip().lower().split("x")]
        comps = []
        for p in parts:
            m = re.fullmatch(r"([a-z])(\d+)", p)
            if not m:
                raise UnsupportedType(f"cannot parse root system type {text!r}")
            comps.append((m.group(1).upper(), int(m.group(2))))
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    def __str__(self) -> str:
        return "x".join(f"{fam}{r}" for fam, r in self.components)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """A root system with all derived data.

    ``roots``, ``base``, ``coroots``, ``fweights`` and ``highest_roots`` are
    exact ambient vectors.  ``components`` lists ``(family, rank, offset)``
    where ``offset`` is the index of the component's first simple root.
    """

    id: RootSystemId
    n: int
    roots: tuple[Vector, ...]
    base: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    fweights: tuple[Vector, ...]
    highest_roots: tuple[Vector, ...]
    components: tuple[tuple[str, int, int], ...]

    @cached_property
    def cartan_exact(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(_dot(ri, cj) for cj in self.coroots) for ri in self.base)

    @cached_property
    def cartan(self) -> np.ndarray:
        """Integer matrix ``A[i, j] = <base_i, coroot_j>``."""
        out = np.array([[int(x) for x in row] for row in self.cartan_exact], dtype=np.int64)
        out.setflags(write=False)
        return out

    @cached_property
    def gram_exact(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(_dot(a, b) for b in self.fweights) for a in self.fweights)

    @cached_property
    def gram(self) -> np.ndarray:
        """``G[i, j] = <fw_i, fw_j>``: the inner product on weight coordinates."""
        out = np.array(self.gram_exact, dtype=float)
        out.setflags(write=False)
        return out

    @cached_property
    def coroot_gram_exact(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(_dot(a, b) for b in self.coroots) for a in self.coroots)

    @cached_property
    def coroot_gram(self) -> np.ndarray:
        """Inner product on point (coroot) coordinates; the inverse of ``gram``."""
        out = np.array(self.coroot_gram_exact, dtype=float)
        out.setflags(write=False)
        return out

    @property
    def highest_root(self) -> Vector:
        if len(self.highest_roots) != 1:
            raise ValueError("reducible root system: use highest_roots")
        return self.highest_roots[0]

    @cached_property
    def highest_root_coeffs(self) -> tuple[tuple[int, ...], ...]:
        """Coefficients of each component's highest root in its simple roots."""
        out = []
        for (_, rank, off), hr in zip(self.components, self.highest_roots):
            out.append(tuple(int(c) for c in self.base_coords(hr)[off : off + rank]))
        return tuple(out)

    def weight_coords(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coordinates of an ambient vector in the fundamental-weight basis."""
        return tuple(_dot(v, c) for c in self.coroots)

    def base_coords(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coordinates of an ambient vector in the basis of simple roots."""
        w = self.weight_coords(v)
        out: list[Fraction] = []
        for _, rank, off in self.components:
            block = [[self.cartan_exact[i][j] for i in range(off, off + rank)]
                     for j in range(off, off + rank)]
            out.extend(_solve_small(block, list(w[off : off + rank])))
        return tuple(out)

    def ambient_weight(self, w: Sequence[int]) -> Vector:
        return tuple(sum((c * f[k] for c, f in zip(w, self.fweights)), _F(0))
                     for k in range(len(self.fweights[0])))

    def ambient_point(self, u: Sequence) -> Vector:
        return tuple(sum((_F(c) * r[k] for c, r in zip(u, self.coroots)), _F(0))
                     for k in range(len(self.coroots[0])))

    def __repr__(self) -> str:
        return f"RootSystem({self.id})"


def _close_roots(base: Sequence[Vector]) -> tuple[Vector, ...]:
    coroots = [_coroot(b) for b in base]
    seen = set(base)
    frontier = list(base)
    while frontier:
        nxt = []
        for r in frontier:
            for b, c in zip(base, coroots):
                img = _sub(r, _scale(_dot(r, c), b))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(seen))


def _irreducible(family: str, rank: int) -> RootSystem:
    base_l, fw_l = _PLATES[(family, rank)]
    base = tuple(tuple(b) for b in base_l)
    fweights = tuple(tuple(f) for f in fw_l)
    roots = _close_roots(base)
    proto = RootSystem(
        id=RootSystemId(((family, rank),)),
        n=rank,
        roots=roots,
        base=base,
        coroots=tuple(_coroot(b) for b in base),
        fweights=fweights,
        highest_roots=(),
        components=((family, rank, 0),),
    )
    top = max(roots, key=lambda r: sum(proto.base_coords(r)))
    return RootSystem(
        id=proto.id,
        n=rank,
        roots=roots,
        base=base,
        coroots=proto.coroots,
        fweights=fweights,
        highest_roots=(top,),
        components=proto.components,
    )


def direct_sum(a: RootSystem, b: RootSystem) -> RootSystem:
    """Orthogonal direct sum; ambient spaces are concatenated."""
    da, db = len(a.base[0]), len(b.base[0])
    za, zb = (_F(0),) * da, (_F(0),) * db

    def left(v):
        return tuple(v) + zb

    def right(v):
        return za + tuple(v)

    return RootSystem(
        id=RootSystemId(a.id.components + b.id.components),
        n=a.n + b.n,
        roots=tuple(map(left, a.roots)) + tuple(map(right, b.roots)),
        base=tuple(map(left, a.base)) + tuple(map(right, b.base)),
        coroots=tuple(map(left, a.coroots)) + tuple(map(right, b.coroots)),
        fweights=tuple(map(left, a.fweights)) + tuple(map(right, b.fweights)),
        highest_roots=tuple(map(left, a.highest_roots)) + tuple(map(right, b.highest_roots)),
        components=a.components + tuple((f, r, off + a.n) for f, r, off in b.components),
    )


def build_root_system(rs_id: RootSystemId | str) -> RootSystem:
    """Build (and cache) the root system of the given type."""
    if isinstance(rs_id, str):
        rs_id = RootSystemId.parse(rs_id)
    return _build_cached(rs_id)


@lru_cache(maxsize=None)
def _build_cached(rs_id: RootSystemId) -> RootSystem:
    systems = [_irreducible(fam, rank) for fam, rank in rs_id.components]
    out = systems[0]
    for other in systems[1:]:
        out = direct_sum(out, other)
    return out


def pairing(rs: RootSystem, w: Sequence[int], u: Sequence) -> float | Fraction:
    """``<w, u>`` for a weight ``w`` and a point ``u`` in coroot coordinates."""
    if len(w) != rs.n or len(u) != rs.n:
        raise DimensionMismatch(f"expected length {rs.n}, got {len(w)} and {len(u)}")
    return sum(wi * ui for wi, ui in zip(w, u))


def weight_gram(rs: RootSystem) -> np.ndarray:
    return rs.gram


def weight_norm_sq(rs: RootSystem, w: Sequence[int]) -> Fraction:
    if len(w) != rs.n:
        raise DimensionMismatch(f"expected length {rs.n}, got {len(w)}")
    g = rs.gram_exact
    return sum((w[i] * g[i][j] * w[j] for i in range(rs.n) for j in range(rs.n)), _F(0))


def expected_root_count(family: str, rank: int) -> int:
    return _EXPECTED_ROOT_COUNT[(family, rank)]


def lcm_denominator(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out
