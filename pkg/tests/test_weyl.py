from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symtrig.errors import GroupTooLarge
from symtrig.lattice import weight_set
from symtrig.rootsys import build_root_system
from symtrig.weyl import (act_point, act_weight, generate, orbit, simple_reflection,
                          stabilizer_size)

TYPES = ["A1", "A2", "B2", "C2", "G2", "A1xA1", "A2xA1"]


def test_a2_simple_reflections_rows():
    rs = build_root_system("A2")
    assert simple_reflection(rs, 0).rows.tolist() == [[-1, 1], [0, 1]]
    assert simple_reflection(rs, 1).rows.tolist() == [[1, 0], [1, -1]]


def test_a1_reflection():
    assert simple_reflection(build_root_system("A1"), 0).array.tolist() == [[-1]]


@pytest.mark.parametrize("name,order,sizes", [
    ("A1", 2, [1, 1]),
    ("A2", 6, [1, 3, 2]),
    ("B2", 8, [1, 2, 2, 2, 1]),
    ("C2", 8, [1, 2, 2, 2, 1]),
    ("G2", 12, [1, 3, 3, 2, 2, 1]),
    ("A1xA1", 4, [1, 1, 1, 1]),
])
def test_orders_and_classes(name, order, sizes):
    W = generate(build_root_system(name))
    assert W.order == order
    assert [len(c) for c in W.classes] == sizes
    assert W.classes[0] == [0]


def test_a2_class_representatives():
    W = generate(build_root_system("A2"))
    words = [W.elements[c[0]].word for c in W.classes]
    assert words == [(), (0,), (0, 1)]


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        generate(build_root_system("G2"), max_order=5)


@pytest.mark.parametrize("name", TYPES)
def test_product_table_is_homomorphism(name):
    W = generate(build_root_system(name))
    for i in range(W.order):
        for j in range(W.order):
            k = W.multiply(i, j)
            assert np.array_equal(W.mats[i] @ W.mats[j], W.mats[k])
        assert W.multiply(i, W.inverse(i)) == 0


@pytest.mark.parametrize("name", TYPES)
def test_words_reproduce_elements(name):
    W = generate(build_root_system(name))
    for el in W.elements:
        m = np.eye(W.rs.n, dtype=np.int64)
        for s in el.word:
            m = m @ W.generators[s].array
        assert np.array_equal(m, el.array)


@pytest.mark.parametrize("name", TYPES)
def test_action_preserves_norm(name):
    rs = build_root_system(name)
    W = generate(rs)
    rng = np.random.default_rng(1)
    for g in range(W.order):
        w = rng.integers(-3, 4, size=rs.n)
        gw = W.mats[g] @ w
        assert np.isclose(w @ rs.gram @ w, gw @ rs.gram @ gw, atol=1e-12)
        u = rng.normal(size=rs.n)
        gu = act_point(W.elements[g], u)
        assert np.isclose(u @ rs.coroot_gram @ u, gu @ rs.coroot_gram @ gu, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(name=st.sampled_from(TYPES), data=st.data())
def test_pairing_invariance(name, data):
    rs = build_root_system(name)
    W = generate(rs)
    g = data.draw(st.integers(0, W.order - 1))
    w = data.draw(st.lists(st.integers(-5, 5), min_size=rs.n, max_size=rs.n))
    u = data.draw(st.lists(st.fractions(-3, 3, max_denominator=12), min_size=rs.n, max_size=rs.n))
    el = W.elements[g]
    gw = act_weight(el, w)
    gu = act_point(el, [F(x) for x in u])
    assert sum(a * b for a, b in zip(gw, gu)) == sum(a * b for a, b in zip(w, u))


def test_identity_acts_trivially():
    W = generate(build_root_system("B2"))
    assert W.act_weight(0, (3, -2)) == (3, -2)


def test_a2_orbits():
    W = generate(build_root_system("A2"))
    assert orbit(W, (1, 0)) == {(1, 0), (-1, 1), (0, -1)}
    assert orbit(W, (0, 0)) == {(0, 0)}
    assert stabilizer_size(W, (1, 0)) == 2


@pytest.mark.parametrize("name", TYPES)
def test_weight_sets_are_stable(name):
    rs = build_root_system(name)
    W = generate(rs)
    for d in range(5 if rs.n < 3 else 3):
        ws = weight_set(rs, d)
        for g in range(W.order):
            assert set(map(tuple, W.act_weights(g, ws.array).tolist())) == set(ws.weights)
