"""Moment relaxations ``min tr(mat(f) X)`` over PSD Toeplitz ``X`` with unit trace.

Three equivalent formulations are provided:

``dense``
    one complex parameter ``t_eta`` per pair ``{eta, -eta}`` of nonzero
    differences, one ``|Omega_d| x |Omega_d|`` block;
``invariant``
    parameters constant on orbits of ``<W, -1>``, same single block;
``block``
    invariant parameters, PSD constraints on the ``m_i x m_i`` blocks of
    ``T^H X T`` and objective ``sum_i d_i tr(F_i X_i)``.

Every problem has the form ``min const + c.p`` subject to
``B_b(p) = B_b0 + sum_j p_j B_bj >= 0`` with real ``p``; ``p = 0`` is the
strictly feasible point ``X = I / |Omega_d|``.  :func:`solve` runs a primal
log-barrier method with damped Newton steps.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (BasisMismatch, DegreeTooSmall, InfeasibleCertificate, NotInvariant)
from .lattice import WeightSet, matrix_order, weight_set
from .reptheory import (SymmetryAdaptedBasis, block_project, build_perm_rep, character_table,
                        multiplicities, serre_basis)
from .rootsys import RootSystem, Weight
from .trigpoly import ToeplitzMat, TrigPoly, is_invariant, to_toeplitz
from .weyl import WeylGroup, generate

log = logging.getLogger(__name__)

MODES = ("dense", "invariant", "block")


@dataclass(frozen=True)
class Param:
    """One real coordinate: the real or imaginary part of ``t_eta``.

    ``orbit`` lists the differences sharing the value ``t_eta``; their
    negatives carry the conjugate.
    """

    eta: Weight
    real: bool
    part: str
    orbit: tuple[Weight, ...]


@dataclass(eq=False)
class Block:
    """Affine Hermitian matrix map ``p -> B0 + sum_j p_j Bs[j]``."""

    B0: np.ndarray
    Bs: np.ndarray
    label: str = ""
    weight: int = 1

    @property
    def size(self) -> int:
        return self.B0.shape[0]

    def at(self, p: np.ndarray) -> np.ndarray:
        return self.B0 + np.tensordot(p, self.Bs, axes=1)


@dataclass(eq=False)
class SDPProblem:
    mode: str
    f: TrigPoly
    ws: WeightSet
    params: list[Param]
    c: np.ndarray
    const: float
    blocks: list[Block]
    tmap: np.ndarray = field(repr=False)        # (|D|, P): t = t0 + tmap @ p
    diffs: list[Weight] = field(repr=False, default_factory=list)
    sab: SymmetryAdaptedBasis | None = field(repr=False, default=None)

    @property
    def n_params(self) -> int:
        return len(self.params)

    def objective(self, p) -> float:
        return self.const + float(self.c @ np.asarray(p, dtype=float))

    def toeplitz(self, p) -> ToeplitzMat:
        """Toeplitz values of ``X(p)``."""
        t = self.tmap @ np.asarray(p, dtype=float)
        vals = {eta: complex(v) for eta, v in zip(self.diffs, t)}
        zero = (0,) * self.ws.rs.n
        vals[zero] = vals.get(zero, 0) + 1.0 / len(self.ws)
        return ToeplitzMat(self.ws, {k: v for k, v in vals.items() if v != 0})

    def X(self, p) -> np.ndarray:
        return self.toeplitz(p).dense()

    def block_matrices(self, p) -> list[np.ndarray]:
        p = np.asarray(p, dtype=float)
        return [b.at(p) for b in self.blocks]

    def min_eigenvalue(self, p) -> float:
        return min((float(np.linalg.eigvalsh(B).min()) for B in self.block_matrices(p) if B.size),
                   default=math.inf)


def _lexpos(eta: Weight) -> bool:
    for x in eta:
        if x:
            return x > 0
    return False


def _neg(eta: Weight) -> Weight:
    return tuple(-x for x in eta)


def _dense_params(diffs: list[Weight]) -> list[Param]:
    out = []
    for eta in diffs:
        if _lexpos(eta):
            out.append(Param(eta, False, "re", (eta,)))
            out.append(Param(eta, False, "im", (eta,)))
    return out


def _invariant_params(W: WeylGroup, diffs: list[Weight]) -> list[Param]:
    seen: set[Weight] = set()
    out = []
    nonzero = [eta for eta in diffs if any(eta)]
    for eta in nonzero:
        if eta in seen:
            continue
        orb = frozenset(map(tuple, (W.mats @ np.array(eta)).tolist()))
        neg = frozenset(map(_neg, orb))
        seen |= orb | neg
        if orb == neg:
            ordered = tuple(sorted(orb))
            out.append(Param(max(orb), True, "re", ordered))
        else:
            rep = max(orb | neg)
            side = orb if rep in orb else neg
            ordered = tuple(sorted(side))
            out.append(Param(rep, False, "re", ordered))
            out.append(Param(rep, False, "im", ordered))
    return out


def _tmap(diffs: list[Weight], params: list[Param]) -> np.ndarray:
    pos = {eta: k for k, eta in enumerate(diffs)}
    A = np.zeros((len(diffs), len(params)), dtype=complex)
    for j, prm in enumerate(params):
        unit = 1.0 if prm.part == "re" else 1j
        for eta in prm.orbit:
            A[pos[eta], j] += unit
            if not prm.real:
                A[pos[_neg(eta)], j] += np.conj(unit)
    return A


def _pattern(ws: WeightSet, diffs: list[Weight]) -> np.ndarray:
    """Index of ``mu - nu`` in ``diffs``; the zero difference maps to ``len(diffs)``."""
    pos = {eta: k for k, eta in enumerate(diffs)}
    pos[(0,) * ws.rs.n] = len(diffs)
    arr = ws.array
    d = arr[:, None, :] - arr[None, :, :]
    return np.array([[pos[tuple(x)] for x in row] for row in d.tolist()], dtype=np.int64)


def build(f: TrigPoly, d: int, mode: str = "dense", sab: SymmetryAdaptedBasis | None = None,
          W: WeylGroup | None = None) -> SDPProblem:
    """Set up the relaxation of order ``d`` in the given mode."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    rs = f.rs
    ws = weight_set(rs, d)
    counts = ws.differences()
    if any(w not in counts for w in f.coeffs):
        need = matrix_order(rs, f)
        raise DegreeTooSmall(f"order {d} is below the matrix order {need} of f")
    C = to_toeplitz(f, ws)
    diffs = [eta for eta in sorted(counts, key=lambda e: (sum(x * x for x in e), e)) if any(eta)]

    if mode == "dense":
        params = _dense_params(diffs)
    else:
        if sab is not None:
            W = sab.W
        W = W or generate(rs)
        if W.rs is not rs:
            raise BasisMismatch("Weyl group belongs to a different root system")
        if not is_invariant(W, f, tol=1e-9):
            raise NotInvariant("f is not W-invariant; symmetrize it first")
        params = _invariant_params(W, diffs)

    A = _tmap(diffs, params)
    K = _pattern(ws, diffs)
    N = len(ws)
    padded = np.vstack([A, np.zeros((1, len(params)), dtype=complex)])
    Es = np.moveaxis(padded[K], 2, 0)            # (P, N, N)
    B0 = np.eye(N, dtype=complex) / N
    cvec = np.array([C[eta] for eta in diffs], dtype=complex)
    nvec = np.array([counts[eta] for eta in diffs], dtype=float)
    const_full = C[(0,) * rs.n].real * counts[(0,) * rs.n] / N

    if mode in ("dense", "invariant"):
        # tr(C X) = sum_eta N_eta c_eta conj(t_eta)
        lin = (nvec * cvec) @ A.conj()
        _check_real(lin, "objective")
        blocks = [Block(B0, Es, label="X")]
        return SDPProblem(mode, f, ws, params, lin.real, float(const_full), blocks, A, diffs)

    if sab is None:
        rep = build_perm_rep(W, ws)
        sab = serre_basis(rep, character_table(W))
    if sab.ws is not ws and sab.ws.weights != ws.weights:
        raise BasisMismatch("symmetry adapted basis was built for a different weight set")
    if sab.W is not W:
        raise BasisMismatch("symmetry adapted basis was built for a different group")
    F_blocks = block_project(sab, C.dense())
    blocks, lin, const = [], np.zeros(len(params)), 0.0
    for k, b in enumerate(sab.layout):
        if b.mult == 0:
            continue
        Tk = sab.first_copy(k)
        Bk0 = Tk.conj().T @ B0 @ Tk
        Bks = np.einsum("ai,jab,bk->jik", Tk.conj(), Es, Tk, optimize=True)
        Fk = F_blocks[k]
        lin_k = b.dim * np.einsum("ab,jba->j", Fk, Bks)
        const_k = b.dim * np.trace(Fk @ Bk0)
        _check_real(lin_k, "block objective")
        lin += lin_k.real
        const += const_k.real
        blocks.append(Block(Bk0, Bks, label=b.label, weight=b.dim))
    return SDPProblem("block", f, ws, params, lin, float(const), blocks, A, diffs, sab)


def _check_real(z: np.ndarray, what: str) -> None:
    scale = max(1.0, float(np.abs(z).max(initial=0.0)))
    if np.abs(np.imag(z)).max(initial=0.0) > 1e-9 * scale:
        raise NotInvariant(f"{what} has a nonzero imaginary part")


# -- solver --------------------------------------------------------------------

@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-7
    max_iter: int = 500
    mu0: float = 1.0
    mu_factor: float = 10.0
    newton_tol: float = 1e-10


@dataclass
class SolveResult:
    bound: float
    params: np.ndarray
    iterations: int
    final_mu: float
    primal_feasibility: float
    status: str
    mode: str = ""

    @property
    def converged(self) -> bool:
        return self.status == "Converged"


class _Infeasible(Exception):
    pass


def _barrier(prob: SDPProblem, p: np.ndarray, derivs: bool):
    """``-sum log det B_b(p)`` with gradient and Hessian."""
    val = 0.0
    P = prob.n_params
    g = np.zeros(P)
    H = np.zeros((P, P))
    for b in prob.blocks:
        B = b.at(p)
        try:
            L = np.linalg.cholesky(B)
        except np.linalg.LinAlgError:
            raise _Infeasible from None
        diag = np.real(np.diag(L))
        if (diag <= 0).any() or not np.isfinite(diag).all():
            raise _Infeasible
        val -= 2.0 * np.log(diag).sum()
        if derivs:
            # Z_j = L^{-1} B_j L^{-H} is Hermitian, tr(B^{-1} B_j) = tr Z_j and
            # tr(B^{-1} B_j B^{-1} B_k) = <Z_j, Z_k>.
            Linv = np.linalg.inv(L)
            Z = (Linv[None] @ b.Bs @ Linv.conj().T[None]).reshape(P, -1)
            g -= np.real(Z[:, :: b.size + 1].sum(axis=1))
            H += np.real(Z.conj() @ Z.T)
    return val, g, H


def solve(prob: SDPProblem, cfg: SolverConfig | None = None) -> SolveResult:
    """Primal log-barrier path following from ``p = 0``."""
    cfg = cfg or SolverConfig()
    P = prob.n_params
    p = np.zeros(P)
    nu = sum(b.size for b in prob.blocks)
    if P == 0 or np.abs(prob.c).max() <= 1e-14 * max(1.0, abs(prob.const)):
        return SolveResult(prob.const, p, 0, 0.0, prob.min_eigenvalue(p), "Converged", prob.mode)

    mu = cfg.mu0
    iters = 0
    status = "Converged"
    while True:
        try:
            p, used, ok = _center(prob, p, mu, cfg, cfg.max_iter - iters)
        except (np.linalg.LinAlgError, _Infeasible, FloatingPointError) as exc:
            log.debug("numerical failure at mu=%g: %r", mu, exc)
            status = "NumericalFailure"
            break
        iters += used
        if not ok:
            status = "MaxIterations"
            break
        if mu * nu <= cfg.tol:
            break
        mu /= cfg.mu_factor
    return SolveResult(prob.objective(p), p, iters, mu, prob.min_eigenvalue(p), status, prob.mode)


def _feasible(prob: SDPProblem, p: np.ndarray) -> bool:
    try:
        _barrier(prob, p, False)
    except _Infeasible:
        return False
    return True


def _center(prob: SDPProblem, p: np.ndarray, mu: float, cfg: SolverConfig, budget: int):
    """Minimise ``c.p / mu - sum log det`` by damped Newton."""
    c = prob.c / mu
    used = 0
    while used < budget:
        _, gb, H = _barrier(prob, p, True)
        g = c + gb
        reg = 1e-12 * max(1.0, float(np.trace(H)) / len(H))
        L = np.linalg.cholesky(H + reg * np.eye(len(H)))
        step = -np.linalg.solve(L.T, np.linalg.solve(L, g))
        dec = -float(g @ step)
        used += 1
        if dec / 2 <= cfg.newton_tol:
            return p, used, True
        # Damped Newton for self-concordant barriers: the step 1/(1 + lambda)
        # stays inside the Dikin ellipsoid, so only feasibility is checked.
        lam = math.sqrt(max(dec, 0.0))
        s = 1.0 if lam < 0.25 else 1.0 / (1.0 + lam)
        while not _feasible(prob, p + s * step):
            s *= 0.5
            if s < 1e-14:
                raise FloatingPointError("no feasible step along the Newton direction")
        p = p + s * step
    return p, used, False


# -- certificates and size accounting ----------------------------------------

@dataclass(frozen=True)
class Certificate:
    value: float
    min_eigenvalue: float
    solver_bound: float


def certify(result: SolveResult, prob: SDPProblem, tol: float = 1e-9) -> Certificate:
    """Recompute block eigenvalues and the objective at the returned point."""
    p = np.asarray(result.params, dtype=float)
    lam = prob.min_eigenvalue(p)
    if lam < -tol:
        raise InfeasibleCertificate(f"minimum block eigenvalue {lam:.3e} is negative")
    return Certificate(prob.objective(p), lam, result.bound)


@dataclass(frozen=True)
class SizeReport:
    n_weights: int
    group_order: int
    rank: int
    dense: int
    chebyshev: float | None
    sab: int
    distinct_entries: int
    blocks: tuple[tuple[str, int, int], ...]   # (label, d_i, m_i)

    def as_dict(self) -> dict:
        out = {"dense": self.dense, "sab": self.sab, "distinct_entries": self.distinct_entries,
               "n_weights": self.n_weights, "group_order": self.group_order,
               "blocks": [{"irrep": lbl, "dim": d, "mult": m} for lbl, d, m in self.blocks]}
        if self.chebyshev is not None:
            out["chebyshev"] = self.chebyshev
        return out


def block_size_report(rs: RootSystem, W: WeylGroup, d: int,
                      sab: SymmetryAdaptedBasis | None = None) -> SizeReport:
    """Matrix sizes of the dense, Chebyshev and symmetry adapted formulations."""
    ws = weight_set(rs, d)
    ct = sab.ct if sab is not None else character_table(W)
    mults = multiplicities(build_perm_rep(W, ws), ct)
    dims = ct.dims
    n = rs.n
    cheb = None
    if d >= n:
        small = len(weight_set(rs, d - n))
        cheb = (len(ws) ** 2 + n * n * small * small) / W.order ** 2
    return SizeReport(
        n_weights=len(ws),
        group_order=W.order,
        rank=n,
        dense=len(ws) ** 2,
        chebyshev=cheb,
        sab=sum(di * m * m for di, m in zip(dims, mults)),
        distinct_entries=sum(m * m for m in mults),
        blocks=tuple((lbl, di, m) for lbl, di, m in zip(ct.labels, dims, mults)),
    )
