"""Permutation representation on C^{Omega_d}, characters and symmetry adapted bases.

Irreducible representations are built from closed forms.  Every irreducible
Weyl group of rank <= 2 is dihedral: with ``r = s_1 s_2`` of order ``m``
(A2: 3, B2/C2: 4, G2: 6) the irreps are the 1-dimensional sign patterns on
the two generators and the 2-dimensional ones ``r -> rot(2 pi k / m)``,
``s_1 -> diag(1, -1)``.  A1 gives the two characters of C2.  Direct sums use
tensor products of component irreps.  Representing matrices of an arbitrary
element are products of generator images along its word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (BasisMismatch, NonIntegralMultiplicity, NotInvariant, RankDeficiency,
                     UnsupportedGroup, WeightSetNotStable)
from .lattice import WeightSet
from .weyl import WeylGroup


@dataclass(eq=False)
class PermRep:
    """``theta(g)`` permutes coordinates: ``(theta(g) x)_w = x_{g^{-1} w}``.

    ``perms[g, k]`` is the position of ``g . ws.weights[k]``.
    """

    W: WeylGroup
    ws: WeightSet
    perms: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.ws)

    def matrix(self, g: int) -> np.ndarray:
        n = self.dim
        out = np.zeros((n, n))
        out[self.perms[g], np.arange(n)] = 1.0
        return out

    def traces(self) -> np.ndarray:
        """Fixed-point counts ``trace(theta(g))`` for every element."""
        return (self.perms == np.arange(self.dim)[None, :]).sum(axis=1)

    def combination(self, coeffs: np.ndarray) -> np.ndarray:
        """``sum_g coeffs[g] theta(g)`` as a dense matrix."""
        n = self.dim
        out = np.zeros((n, n), dtype=np.result_type(coeffs, float))
        cols = np.broadcast_to(np.arange(n), self.perms.shape)
        vals = np.broadcast_to(np.asarray(coeffs)[:, None], self.perms.shape)
        np.add.at(out, (self.perms.ravel(), cols.ravel()), vals.ravel())
        return out


def build_perm_rep(W: WeylGroup, ws: WeightSet) -> PermRep:
    arr = ws.array
    perms = np.empty((W.order, len(ws)), dtype=np.int64)
    for g in range(W.order):
        imgs = W.act_weights(g, arr).tolist()
        try:
            perms[g] = [ws.index[tuple(v)] for v in imgs]
        except KeyError:
            raise WeightSetNotStable(f"{ws!r} is not stable under element {g}") from None
    return PermRep(W, ws, perms)


# -- irreducible representations ---------------------------------------------

@dataclass(eq=False)
class Irrep:
    """An irreducible representation given by its generator images."""

    label: str
    gens: list[np.ndarray]
    mats: np.ndarray = field(repr=False)   # (|W|, d, d)

    @property
    def dim(self) -> int:
        return self.gens[0].shape[0]

    @property
    def character(self) -> np.ndarray:
        return np.trace(self.mats, axis1=1, axis2=2)


def _rot(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def _element_order(W: WeylGroup, mat: np.ndarray) -> int:
    m, k = mat.copy(), 1
    ident = np.eye(W.rs.n, dtype=np.int64)
    while not np.array_equal(m, ident):
        m = m @ mat
        k += 1
    return k


def _component_irreps(W: WeylGroup, comp: int) -> list[tuple[str, list[np.ndarray]]]:
    """Generator images of the irreps of one irreducible component."""
    family, rank, off = W.rs.components[comp]
    if rank == 1:
        return [("sign", [-np.eye(1)]), ("triv", [np.eye(1)])]
    if rank != 2:
        raise UnsupportedGroup(f"no closed-form irreps for component {family}{rank}")
    r = W.generators[off].array @ W.generators[off + 1].array
    m = _element_order(W, r)
    out = [("triv", [np.eye(1), np.eye(1)]), ("sign", [-np.eye(1), -np.eye(1)])]
    if m % 2 == 0:
        out += [("eps+-", [np.eye(1), -np.eye(1)]), ("eps-+", [-np.eye(1), np.eye(1)])]
    S = np.diag([1.0, -1.0])
    for k in range(1, (m - 1) // 2 + 1):
        out.append((f"rot{k}", [S, S @ _rot(2 * np.pi * k / m)]))
    return out


def _evaluate_words(W: WeylGroup, gens: list[np.ndarray]) -> np.ndarray:
    d = gens[0].shape[0]
    mats = np.empty((W.order, d, d), dtype=complex)
    for g, el in enumerate(W.elements):
        m = np.eye(d, dtype=complex)
        for s in el.word:
            m = m @ gens[s]
        mats[g] = m
    return mats


def _all_irreps(W: WeylGroup) -> list[Irrep]:
    per_comp = [_component_irreps(W, c) for c in range(len(W.rs.components))]
    irreps = []
    for combo in itertools.product(*per_comp):
        dims = [imgs[0].shape[0] for _, imgs in combo]
        gens = []
        for c, (_, imgs) in enumerate(combo):
            for local in imgs:
                factors = [np.eye(dd) for dd in dims]
                factors[c] = local
                m = factors[0]
                for fct in factors[1:]:
                    m = np.kron(m, fct)
                gens.append(m.astype(complex))
        label = "x".join(lbl for lbl, _ in combo)
        irreps.append(Irrep(label, gens, _evaluate_words(W, gens)))
    return irreps


@dataclass(eq=False)
class CharacterTable:
    """Characters ``chars[i, c]`` of irrep ``i`` on conjugacy class ``c``.

    Classes are ordered by their first element (identity first).  Irreps are
    sorted by their values on the non-identity classes in that order, which
    puts the sign character first and the trivial one last.
    """

    W: WeylGroup
    classes: list[list[int]]
    chars: np.ndarray
    irreps: list[Irrep] = field(repr=False)

    @property
    def h(self) -> int:
        return len(self.irreps)

    @property
    def dims(self) -> list[int]:
        return [int(round(x)) for x in self.chars[:, 0].real]

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def representatives(self) -> list[int]:
        return [c[0] for c in self.classes]

    @property
    def labels(self) -> list[str]:
        return [irr.label for irr in self.irreps]

    def element_chars(self) -> np.ndarray:
        """``(h, |W|)`` array of character values on every element."""
        return self.chars[:, self.W.class_of()]


def character_table(W: WeylGroup) -> CharacterTable:
    irreps = _all_irreps(W)
    classes = W.classes
    reps = [c[0] for c in classes]
    chars = np.array([[irr.character[g] for g in reps] for irr in irreps])

    def key(i):
        return tuple(np.round(chars[i, 1:].real, 9)) + tuple(np.round(chars[i, 1:].imag, 9))

    order = sorted(range(len(irreps)), key=key)
    ct = CharacterTable(W, classes, chars[order], [irreps[i] for i in order])
    _check_table(ct)
    return ct


def _check_table(ct: CharacterTable) -> None:
    sizes = np.array(ct.class_sizes)
    gram = (ct.chars * sizes) @ ct.chars.conj().T
    if not np.allclose(gram, ct.W.order * np.eye(ct.h), atol=1e-9):
        raise UnsupportedGroup("character table failed row orthogonality")
    if ct.h != len(ct.classes):
        raise UnsupportedGroup("number of irreps differs from number of classes")


def irrep_matrices(W: WeylGroup, ct: CharacterTable | None = None,
                   variant: str = "orthogonal") -> list[np.ndarray]:
    """Representing matrices ``(|W|, d_i, d_i)`` aligned with the rows of ``ct``.

    ``variant="weight"`` replaces the irrep realised on weight coordinates by
    the integer matrices ``D(g) = mat(g^{-1})^T`` (rows are images of the
    fundamental weights); this needs an irreducible weight representation.
    """
    ct = ct or character_table(W)
    mats = [irr.mats for irr in ct.irreps]
    if variant == "orthogonal":
        return mats
    if variant != "weight":
        raise ValueError(f"unknown variant {variant!r}")
    weight_char = np.trace(W.mats, axis1=1, axis2=2)
    for i, irr in enumerate(ct.irreps):
        if np.allclose(irr.character, weight_char):
            D = np.stack([W.mats[W.inverse_index[g]].T for g in range(W.order)]).astype(complex)
            mats[i] = D
            return mats
    raise UnsupportedGroup("the weight representation is not irreducible")


def unitarize(D: np.ndarray) -> np.ndarray:
    """Conjugate a representation to a unitary one via the averaged Hermitian form."""
    H = np.einsum("gji,gjk->ik", D.conj(), D)
    R = np.linalg.cholesky(H).conj().T          # H = R^H R
    Rinv = np.linalg.inv(R)
    U = R[None] @ D @ Rinv[None]
    return U


def multiplicities(rep: PermRep, ct: CharacterTable) -> list[int]:
    """``m_i = <chi_i, trace(theta)>`` rounded, with a residual check."""
    traces = rep.traces()
    raw = (ct.element_chars().conj() @ traces) / rep.W.order
    out = np.rint(raw.real).astype(int)
    if np.abs(raw - out).max(initial=0.0) > 1e-8 or (out < 0).any():
        raise NonIntegralMultiplicity(f"multiplicities {raw} are not nonnegative integers")
    if int(np.dot(ct.dims, out)) != rep.dim:
        raise NonIntegralMultiplicity("sum of d_i m_i differs from |Omega_d|")
    return out.tolist()


def isotypic_projection(rep: PermRep, ct: CharacterTable, i: int) -> np.ndarray:
    """``P_i = (d_i/|W|) sum_g chi_i(g^{-1}) theta(g)``."""
    chi = ct.element_chars()[i]
    coeffs = chi[rep.W.inverse_index] * ct.dims[i] / rep.W.order
    P = rep.combination(coeffs)
    return P.real if np.abs(P.imag).max(initial=0.0) < 1e-14 else P


def orthonormal_columns(M: np.ndarray, rtol: float = 1e-8) -> np.ndarray:
    """Modified Gram-Schmidt on the columns of ``M``; drops dependent columns."""
    norms = np.linalg.norm(M, axis=0)
    thresh = rtol * max(norms.max(initial=0.0), 1e-300)
    basis: list[np.ndarray] = []
    for k in range(M.shape[1]):
        v = M[:, k].astype(complex)
        for _ in range(2):
            for q in basis:
                v = v - (q.conj() @ v) * q
        nv = np.linalg.norm(v)
        if nv > thresh:
            basis.append(v / nv)
    if not basis:
        return np.zeros((M.shape[0], 0), dtype=complex)
    return np.stack(basis, axis=1)


@dataclass(frozen=True)
class BlockInfo:
    irrep: int
    label: str
    dim: int
    mult: int
    offset: int   # first column of this irrep's group in T


@dataclass(eq=False)
class SymmetryAdaptedBasis:
    """Unitary change of basis ``T`` and its Serre ordering ``Ttilde``.

    Columns of ``T`` are grouped per irrep ``i`` and then per copy index
    ``l``: ``w_{l,1}, ..., w_{l,m_i}``, so ``T^H X T`` has ``d_i`` equal
    ``m_i x m_i`` blocks for every W-equivariant ``X``.  ``Ttilde`` groups the
    same columns per simple submodule ``w_{1,j}, ..., w_{d_i,j}``.
    """

    rep: PermRep
    ct: CharacterTable
    T: np.ndarray
    Ttilde: np.ndarray
    layout: list[BlockInfo]
    irreps: list[np.ndarray] = field(repr=False)

    @property
    def ws(self) -> WeightSet:
        return self.rep.ws

    @property
    def W(self) -> WeylGroup:
        return self.rep.W

    def first_copy(self, k: int) -> np.ndarray:
        """Columns ``w_{1,1..m}`` spanning the block of layout entry ``k``."""
        b = self.layout[k]
        return self.T[:, b.offset : b.offset + b.mult]

    def submodule(self, k: int, j: int) -> np.ndarray:
        """Columns ``w_{1..d,j}``: an orthonormal basis of one simple submodule."""
        b = self.layout[k]
        return self.T[:, [b.offset + l * b.mult + j for l in range(b.dim)]]


def serre_basis(rep: PermRep, ct: CharacterTable,
                irreps: list[np.ndarray] | None = None) -> SymmetryAdaptedBasis:
    """Symmetry adapted basis from projections ``P_l = (d/|W|) sum D_{1l}(g^{-1}) theta(g)``."""
    irreps = irreps if irreps is not None else irrep_matrices(rep.W, ct)
    unitary = [unitarize(D) for D in irreps]
    mults = multiplicities(rep, ct)
    inv = rep.W.inverse_index
    cols_T, cols_Tt, layout = [], [], []
    offset = 0
    for i, (D, m) in enumerate(zip(unitary, mults)):
        d = D.shape[1]
        if m == 0:
            layout.append(BlockInfo(i, ct.labels[i], d, 0, offset))
            continue
        Dinv = D[inv]
        P = [rep.combination(Dinv[:, 0, l] * d / rep.W.order) for l in range(d)]
        W1 = orthonormal_columns(P[0])
        if W1.shape[1] != m:
            raise RankDeficiency(f"irrep {i}: column space of P_1 has rank {W1.shape[1]}, expected {m}")
        copies = [W1] + [P[l] @ W1 for l in range(1, d)]
        for l in range(d):
            cols_T.extend(copies[l].T)
        for j in range(m):
            cols_Tt.extend(copies[l][:, j] for l in range(d))
        layout.append(BlockInfo(i, ct.labels[i], d, m, offset))
        offset += d * m
    T = np.stack(cols_T, axis=1)
    Ttilde = np.stack(cols_Tt, axis=1)
    if not np.allclose(T.conj().T @ T, np.eye(rep.dim), atol=1e-10):
        raise RankDeficiency("assembled basis is not unitary")
    return SymmetryAdaptedBasis(rep, ct, T, Ttilde, layout, unitary)


def block_project(sab: SymmetryAdaptedBasis, X, tol: float = 1e-9) -> list[np.ndarray]:
    """Representative blocks ``X_i`` (``m_i x m_i``) of ``T^H X T``, one per layout entry.

    ``X`` is a :class:`~symtrig.trigpoly.ToeplitzMat` or a dense matrix in the
    order of ``sab.ws``.  Raises :class:`NotInvariant` if ``T^H X T`` is not
    block diagonal with equal repeated blocks.
    """
    if hasattr(X, "dense"):
        if X.ws is not sab.ws:
            raise BasisMismatch("matrix and basis use different weight sets")
        X = X.dense()
    X = np.asarray(X)
    if X.shape != (sab.rep.dim,) * 2:
        raise BasisMismatch(f"matrix shape {X.shape} does not match basis of size {sab.rep.dim}")
    Y = sab.T.conj().T @ X @ sab.T
    scale = max(1.0, float(np.abs(X).max(initial=0.0)))
    mask = np.zeros(Y.shape, dtype=bool)
    blocks = []
    for b in sab.layout:
        if b.mult == 0:
            blocks.append(np.zeros((0, 0), dtype=complex))
            continue
        subs = []
        for l in range(b.dim):
            lo = b.offset + l * b.mult
            mask[lo : lo + b.mult, lo : lo + b.mult] = True
            subs.append(Y[lo : lo + b.mult, lo : lo + b.mult])
        for s in subs[1:]:
            if np.abs(s - subs[0]).max() > tol * scale:
                raise NotInvariant(f"repeated blocks of irrep {b.irrep} differ")
        blocks.append(subs[0])
    off = np.abs(Y[~mask]).max(initial=0.0)
    if off > tol * scale:
        raise NotInvariant(f"off-block mass {off:.3e} exceeds tolerance")
    return blocks


def sab_to_json(sab: SymmetryAdaptedBasis, include_projections: bool = False) -> dict:
    """Debug dump: row-major matrices of ``[re, im]`` pairs."""

    def enc(M):
        return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, dtype=complex)]

    out = {
        "weights": [list(w) for w in sab.ws.weights],
        "layout": [{"irrep": b.irrep, "label": b.label, "dim": b.dim, "mult": b.mult} for b in sab.layout],
        "T": enc(sab.T),
        "Ttilde": enc(sab.Ttilde),
    }
    if include_projections:
        out["P"] = [enc(isotypic_projection(sab.rep, sab.ct, i)) for i in range(sab.ct.h)]
    return out
