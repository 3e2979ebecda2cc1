"""Weyl groups as integer matrices acting on weight coordinates."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import GroupTooLarge
from .rootsys import RootSystem, Weight

DEFAULT_MAX_ORDER = 1024


@dataclass(frozen=True)
class GroupElement:
    """A Weyl group element.

    ``mat`` acts on weight coordinates as a column vector, ``w -> mat @ w``,
    so ``mat(gh) = mat(g) @ mat(h)``.  Its columns are the images of the
    fundamental weights; :attr:`rows` is the transpose, whose rows are those
    images (the layout used when printing the simple reflections).
    ``word`` is the shortlex-minimal word in the simple reflections.
    """

    mat: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] = ()

    @property
    def array(self) -> np.ndarray:
        return np.array(self.mat, dtype=np.int64)

    @property
    def rows(self) -> np.ndarray:
        return self.array.T

    @property
    def inverse_transpose(self) -> np.ndarray:
        """Integer matrix of the action on point (coroot) coordinates."""
        inv = np.linalg.inv(self.array.astype(float))
        return np.rint(inv.T).astype(np.int64)


def simple_reflection(rs: RootSystem, i: int) -> GroupElement:
    """Reflection in the ``i``-th simple root (0-based).

    ``s_i(fw_j) = fw_j - delta_ij * base_i`` and ``base_i = sum_k A[i, k] fw_k``.
    """
    if not 0 <= i < rs.n:
        raise IndexError(f"simple root index {i} out of range for rank {rs.n}")
    m = np.eye(rs.n, dtype=np.int64)
    m[:, i] -= rs.cartan[i, :]
    return GroupElement(tuple(map(tuple, m.tolist())), (i,))


def _key(m: np.ndarray) -> bytes:
    return np.ascontiguousarray(m, dtype=np.int64).tobytes()


@dataclass(eq=False)
class WeylGroup:
    """Finite Weyl group with canonical element order (shortlex words).

    ``elements[0]`` is the identity.  ``product_table[i, j]`` is the index of
    ``elements[i] * elements[j]`` and ``inverse_index[i]`` that of the inverse.
    ``classes`` holds conjugacy classes as sorted index lists, ordered by their
    smallest element index.
    """

    rs: RootSystem
    generators: tuple[GroupElement, ...]
    elements: tuple[GroupElement, ...]
    mats: np.ndarray
    product_table: np.ndarray
    inverse_index: np.ndarray
    generator_component: tuple[int, ...]
    _index: dict[bytes, int] = field(repr=False, default_factory=dict)
    _classes: list[list[int]] | None = field(repr=False, default=None)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index_of(self, mat: np.ndarray) -> int:
        return self._index[_key(np.asarray(mat))]

    def multiply(self, i: int, j: int) -> int:
        return int(self.product_table[i, j])

    def inverse(self, i: int) -> int:
        return int(self.inverse_index[i])

    @property
    def classes(self) -> list[list[int]]:
        if self._classes is None:
            self._classes = conjugacy_classes(self)
        return self._classes

    def class_of(self) -> np.ndarray:
        out = np.empty(self.order, dtype=np.int64)
        for c, members in enumerate(self.classes):
            out[members] = c
        return out

    def component_word(self, g: int, component: int) -> tuple[int, ...]:
        """Letters of ``word(g)`` belonging to one irreducible component."""
        return tuple(s for s in self.elements[g].word if self.generator_component[s] == component)

    def act_weight(self, g: int, w: Sequence[int]) -> Weight:
        return act_weight(self.elements[g], w)

    def act_weights(self, g: int, ws: np.ndarray) -> np.ndarray:
        """Act on an ``(N, n)`` integer array of weights."""
        return np.asarray(ws, dtype=np.int64) @ self.mats[g].T


def generate(rs: RootSystem, max_order: int = DEFAULT_MAX_ORDER) -> WeylGroup:
    """Enumerate the Weyl group breadth first in shortlex order."""
    gens = tuple(simple_reflection(rs, i) for i in range(rs.n))
    gen_arrays = [g.array for g in gens]
    ident = np.eye(rs.n, dtype=np.int64)

    mats = [ident]
    words: list[tuple[int, ...]] = [()]
    index = {_key(ident): 0}
    queue = deque([0])
    while queue:
        k = queue.popleft()
        for s, gs in enumerate(gen_arrays):
            m = mats[k] @ gs
            key = _key(m)
            if key in index:
                continue
            if len(mats) >= max_order:
                raise GroupTooLarge(f"Weyl group of {rs.id} exceeds {max_order} elements")
            index[key] = len(mats)
            mats.append(m)
            words.append(words[k] + (s,))
            queue.append(len(mats) - 1)

    stack = np.stack(mats)
    order = len(mats)
    # A group element is determined by the image of the strictly dominant
    # weight (1, ..., 1), whose stabiliser is trivial.
    rho = np.ones(rs.n, dtype=np.int64)
    images = stack @ rho
    img_index = {tuple(v): i for i, v in enumerate(images.tolist())}
    table = np.empty((order, order), dtype=np.int64)
    for i in range(order):
        prods = (stack[i] @ images.T).T
        table[i] = [img_index[tuple(v)] for v in prods.tolist()]
    inverse = np.argmax(table == 0, axis=1)

    comp_of_gen = []
    for c, (_, rank, off) in enumerate(rs.components):
        comp_of_gen.extend([c] * rank)

    elements = tuple(GroupElement(tuple(map(tuple, m.tolist())), w) for m, w in zip(mats, words))
    stack.setflags(write=False)
    return WeylGroup(
        rs=rs,
        generators=gens,
        elements=elements,
        mats=stack,
        product_table=table,
        inverse_index=inverse,
        generator_component=tuple(comp_of_gen),
        _index=index,
    )


def conjugacy_classes(W: WeylGroup) -> list[list[int]]:
    remaining = set(range(W.order))
    classes = []
    for g in range(W.order):
        if g not in remaining:
            continue
        cls = {int(W.product_table[W.product_table[h, g], W.inverse_index[h]]) for h in range(W.order)}
        remaining -= cls
        classes.append(sorted(cls))
    return classes


def act_weight(g: GroupElement, w: Sequence[int]) -> Weight:
    m = g.mat
    return tuple(sum(m[r][c] * w[c] for c in range(len(w))) for r in range(len(m)))


def act_point(g: GroupElement, u: Sequence) -> np.ndarray:
    """Contragredient action, so that ``<g.w, g.u> = <w, u>``.

    Rational (``Fraction``) input stays exact.
    """
    m = g.inverse_transpose
    if any(isinstance(x, Fraction) for x in u):
        return np.array([sum((int(m[r, c]) * u[c] for c in range(len(u))), Fraction(0))
                         for r in range(len(u))], dtype=object)
    return m @ np.asarray(u, dtype=float)


def orbit(W: WeylGroup, w: Sequence[int]) -> frozenset[Weight]:
    ws = W.mats @ np.asarray(w, dtype=np.int64)
    return frozenset(map(tuple, ws.tolist()))


def stabilizer_size(W: WeylGroup, w: Sequence[int]) -> int:
    return W.order // len(orbit(W, w))
