"""Sparse real-valued trigonometric polynomials and their Toeplitz encoding.

``f(u) = sum_w f_w exp(2 pi i <w, u>)`` with ``f_{-w} = conj(f_w)``.  A
polynomial whose support lies in ``Omega_d - Omega_d`` is encoded as the
Hermitian Toeplitz matrix ``X[mu, nu] = t[mu - nu]`` with
``f_eta = (1/|Omega_d|) sum_{mu - nu = eta} X[mu, nu]``.  With
``E(u) = (e^w(u))_w / sqrt(|Omega_d|)`` this reads ``f(u) = E(u)^T X conj(E(u))``,
equivalently ``f(-u) = E(u)^H X E(u)``; the two agree for even ``f``.
"""

from __future__ import annotations

import json
import numbers
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import NotRealValued, ParseError, SupportTooLarge
from .lattice import WeightSet, canonical_order, matrix_order
from .rootsys import RootSystem, RootSystemId, Weight, build_root_system
from .weyl import GroupElement, WeylGroup

TWO_PI = 2.0 * np.pi


def _neg(w: Weight) -> Weight:
    return tuple(-x for x in w)


class TrigPoly:
    """Real-valued trigonometric polynomial with sparse complex coefficients.

    With ``complete=True`` (default) a missing conjugate term ``-w`` is filled
    in as ``conj(f_w)``; inconsistent pairs raise :class:`NotRealValued`.
    """

    def __init__(self, rs: RootSystem, coeffs: Mapping[Sequence[int], numbers.Number] | None = None,
                 *, complete: bool = True, tol: float = 1e-12):
        self.rs = rs
        raw: dict[Weight, complex] = {}
        for w, c in (coeffs or {}).items():
            w = tuple(int(x) for x in w)
            if len(w) != rs.n:
                raise ValueError(f"weight {w} has wrong length for rank {rs.n}")
            raw[w] = raw.get(w, 0) + complex(c)
        out: dict[Weight, complex] = {}
        for w, c in raw.items():
            nw = _neg(w)
            if nw in raw:
                if abs(raw[nw] - c.conjugate()) > tol * max(1.0, abs(c)):
                    raise NotRealValued(f"f[{w}] = {c} but f[{nw}] = {raw[nw]}")
                out[w] = c
            elif complete:
                out[w] = c
                out[nw] = c.conjugate()
            else:
                raise NotRealValued(f"missing conjugate coefficient for {nw}")
        for w in list(out):
            if not any(w):
                out[w] = complex(out[w].real, 0.0)
        self.coeffs: dict[Weight, complex] = {w: c for w, c in out.items() if c != 0}

    @classmethod
    def constant(cls, rs: RootSystem, c: float) -> "TrigPoly":
        return cls(rs, {(0,) * rs.n: c})

    @property
    def support(self) -> list[Weight]:
        return canonical_order(self.rs, self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, w) -> complex:
        return self.coeffs.get(tuple(w), 0j)

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return TrigPoly(self.rs, out, complete=False, tol=1e-9)

    def __mul__(self, s: float) -> "TrigPoly":
        if isinstance(s, complex) and s.imag:
            raise NotRealValued("scaling by a non-real number breaks real-valuedness")
        return TrigPoly(self.rs, {w: c * float(np.real(s)) for w, c in self.coeffs.items()}, complete=False)

    __rmul__ = __mul__

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + other * -1.0

    def allclose(self, other: "TrigPoly", tol: float = 1e-10) -> bool:
        keys = set(self.coeffs) | set(other.coeffs)
        return all(abs(self[w] - other[w]) <= tol for w in keys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.rs is other.rs and self.coeffs == other.coeffs

    __hash__ = None

    def __call__(self, u) -> np.ndarray | float:
        return evaluate(self, u)

    def __repr__(self) -> str:
        terms = ", ".join(f"{w}: {c:g}" for w, c in sorted(self.coeffs.items()))
        return f"TrigPoly({self.rs.id}, {{{terms}}})"


def evaluate(f: TrigPoly, u) -> np.ndarray | float:
    """Evaluate at one point (shape ``(n,)``) or many (shape ``(..., n)``)."""
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 1
    pts = u.reshape(-1, f.rs.n)
    if not f.coeffs:
        vals = np.zeros(len(pts))
    else:
        ws = np.array(list(f.coeffs), dtype=float)
        cs = np.array(list(f.coeffs.values()))
        vals = np.exp(1j * TWO_PI * (pts @ ws.T)) @ cs
        scale = max(1.0, float(np.abs(cs).sum()))
        if np.abs(vals.imag).max(initial=0.0) > 1e-10 * scale:
            raise NotRealValued("evaluation produced a non-negligible imaginary part")
        vals = vals.real
    return float(vals[0]) if scalar else vals.reshape(u.shape[:-1])


def act(g: GroupElement | int, f: TrigPoly, W: WeylGroup | None = None) -> TrigPoly:
    """``(g . f)_w = f_{g^{-1} w}``, i.e. each frequency ``w`` moves to ``g w``."""
    m = _mat(g, W)
    out = {}
    for w, c in f.coeffs.items():
        out[tuple((m @ np.array(w)).tolist())] = c
    return TrigPoly(f.rs, out, complete=False)


def _mat(g, W) -> np.ndarray:
    if isinstance(g, GroupElement):
        return g.array
    return W.mats[g]


def symmetrize(W: WeylGroup, f: TrigPoly) -> TrigPoly:
    """Reynolds average ``(1/|W|) sum_g g . f``."""
    out: dict[Weight, complex] = {}
    if f.coeffs:
        ws = np.array(list(f.coeffs), dtype=np.int64)
        cs = list(f.coeffs.values())
        for g in range(W.order):
            for w, c in zip(map(tuple, W.act_weights(g, ws).tolist()), cs):
                out[w] = out.get(w, 0) + c
    return TrigPoly(f.rs, {w: c / W.order for w, c in out.items()}, complete=False, tol=1e-9)


def is_invariant(W: WeylGroup, f: TrigPoly, tol: float = 1e-10) -> bool:
    if not f.coeffs:
        return True
    ws = np.array(list(f.coeffs), dtype=np.int64)
    cs = list(f.coeffs.values())
    for g in range(1, W.order):
        for w, c in zip(map(tuple, W.act_weights(g, ws).tolist()), cs):
            if abs(f[w] - c) > tol:
                return False
    return True


def E_vector(ws: WeightSet, u) -> np.ndarray:
    """``(exp(2 pi i <w, u>) / sqrt(|Omega_d|))_w`` in the order of ``ws``."""
    u = np.asarray(u, dtype=float)
    return np.exp(1j * TWO_PI * (ws.array @ u)) / np.sqrt(len(ws))


@dataclass(eq=False)
class ToeplitzMat:
    """Hermitian Toeplitz matrix indexed by a weight set, stored by diagonal."""

    ws: WeightSet
    t: dict[Weight, complex]

    def __getitem__(self, eta) -> complex:
        return self.t.get(tuple(eta), 0j)

    def dense(self, order: Sequence[Sequence[int]] | None = None) -> np.ndarray:
        """Dense matrix; ``order`` lists the weights labelling rows and columns."""
        weights = [tuple(w) for w in order] if order is not None else list(self.ws.weights)
        if order is not None and set(weights) != set(self.ws.weights):
            raise ValueError("order must be a permutation of the weight set")
        arr = np.array(weights, dtype=np.int64)
        diff = arr[:, None, :] - arr[None, :, :]
        n = len(weights)
        out = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                out[i, j] = self.t.get(tuple(diff[i, j].tolist()), 0j)
        return out

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return all(abs(self[_neg(eta)] - np.conj(v)) <= tol for eta, v in self.t.items())


def to_toeplitz(f: TrigPoly, ws: WeightSet) -> ToeplitzMat:
    """``mat(f)`` with equal spread ``t_eta = |Omega_d| f_eta / N_eta``."""
    counts = ws.differences()
    bad = [w for w in f.coeffs if w not in counts]
    if bad:
        need = matrix_order(f.rs, f)
        raise SupportTooLarge(
            f"frequencies {bad[:3]} are not in Omega_{ws.d} - Omega_{ws.d}; use d >= {need}",
            minimal_degree=need,
        )
    n = len(ws)
    return ToeplitzMat(ws, {w: n * c / counts[w] for w, c in f.coeffs.items()})


def from_toeplitz(X: ToeplitzMat) -> TrigPoly:
    """Polynomial ``E^H X E``: ``f_eta = N_eta t_eta / |Omega_d|``."""
    counts = X.ws.differences()
    n = len(X.ws)
    return TrigPoly(X.ws.rs, {eta: counts[eta] * v / n for eta, v in X.t.items() if eta in counts},
                    complete=False, tol=1e-9)


def from_matrix(ws: WeightSet, M: np.ndarray) -> TrigPoly:
    """Polynomial ``E^H M E`` of any Hermitian matrix indexed by ``ws``."""
    arr = ws.array
    n = len(ws)
    out: dict[Weight, complex] = {}
    for i in range(n):
        for j in range(n):
            eta = tuple((arr[i] - arr[j]).tolist())
            out[eta] = out.get(eta, 0) + M[i, j]
    return TrigPoly(ws.rs, {k: v / n for k, v in out.items()}, complete=False, tol=1e-9)


def toeplitz_from_matrix(ws: WeightSet, M: np.ndarray, tol: float = 1e-12) -> ToeplitzMat:
    """Read the diagonals of a dense matrix that is Toeplitz over ``ws``."""
    arr = ws.array
    t: dict[Weight, complex] = {}
    n = len(ws)
    for i in range(n):
        for j in range(n):
            eta = tuple((arr[i] - arr[j]).tolist())
            v = complex(M[i, j])
            if eta in t and abs(t[eta] - v) > tol:
                raise ValueError(f"matrix is not Toeplitz on difference {eta}")
            t[eta] = v
    return ToeplitzMat(ws, {k: v for k, v in t.items() if v != 0})


def act_mat(g: GroupElement | int, X: ToeplitzMat, W: WeylGroup | None = None) -> ToeplitzMat:
    """``(g * X)[mu, nu] = X[g^{-1} mu, g^{-1} nu]``, i.e. ``t_eta -> t_{g^{-1} eta}``."""
    m = _mat(g, W)
    return ToeplitzMat(X.ws, {tuple((m @ np.array(eta)).tolist()): v for eta, v in X.t.items()})


# -- JSON polynomial format --------------------------------------------------

def poly_from_json(data: dict | str) -> TrigPoly:
    """Parse ``{"root_system": "A2", "terms": [{"weight": [1, 0], "re": 4.0, "im": 0.0}]}``."""
    if isinstance(data, str):
        if not data.strip():
            raise ParseError("empty input", where="line 1")
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, where=f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", where="$")
    if "root_system" not in data:
        raise ParseError("missing field", where="root_system")
    try:
        rs = build_root_system(RootSystemId.parse(str(data["root_system"])))
    except ValueError as exc:
        raise ParseError(str(exc), where="root_system") from None
    terms = data.get("terms")
    if not isinstance(terms, list) or not terms:
        raise ParseError("expected a nonempty list", where="terms")
    coeffs: dict[Weight, complex] = {}
    for k, term in enumerate(terms):
        where = f"terms[{k}]"
        if not isinstance(term, dict):
            raise ParseError("expected an object", where=where)
        w = term.get("weight")
        if (not isinstance(w, list) or len(w) != rs.n
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in w)):
            raise ParseError(f"expected a list of {rs.n} integers", where=f"{where}.weight")
        try:
            c = complex(float(term.get("re", 0.0)), float(term.get("im", 0.0)))
        except (TypeError, ValueError):
            raise ParseError("re/im must be numbers", where=where) from None
        coeffs[tuple(w)] = coeffs.get(tuple(w), 0) + c
    try:
        return TrigPoly(rs, coeffs)
    except NotRealValued as exc:
        raise ParseError(str(exc), where="terms") from None


def poly_to_json(f: TrigPoly) -> dict:
    return {
        "root_system": str(f.rs.id),
        "terms": [{"weight": list(w), "re": f[w].real, "im": f[w].imag} for w in f.support],
    }
