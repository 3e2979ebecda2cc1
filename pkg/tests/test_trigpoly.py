import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symtrig.errors import NotRealValued, ParseError, SupportTooLarge
from symtrig.lattice import weight_set
from symtrig.reptheory import build_perm_rep
from symtrig.rootsys import build_root_system
from symtrig.trigpoly import (E_vector, ToeplitzMat, TrigPoly, act, act_mat, evaluate, from_matrix,
                              from_toeplitz, is_invariant, poly_from_json, poly_to_json,
                              symmetrize, to_toeplitz, toeplitz_from_matrix)
from symtrig.weyl import act_point, generate
from _support import A2_DISPLAY_ORDER, example_a1, example_a2, random_invariant_poly, random_poly

TYPES = ["A1", "A2", "B2", "C2", "G2", "A1xA1"]


def test_conjugates_are_completed():
    rs = build_root_system("A2")
    f = TrigPoly(rs, {(1, 0): 2 + 1j})
    assert f[(-1, 0)] == 2 - 1j


def test_inconsistent_pair_rejected():
    rs = build_root_system("A1")
    with pytest.raises(NotRealValued):
        TrigPoly(rs, {(1,): 1, (-1,): 2})
    with pytest.raises(NotRealValued):
        TrigPoly(rs, {(1,): 1}, complete=False)


def test_example_a1_values():
    f = example_a1()
    assert evaluate(f, [1 / 6]) == pytest.approx(0, abs=1e-12)
    # 2 cos(4 pi u) - 4 cos(2 pi u) + 3 at u = 0
    assert evaluate(f, [0.0]) == pytest.approx(1.0)
    u = np.linspace(0, 1, 33)[:, None]
    closed = 2 * np.cos(4 * np.pi * u[:, 0]) - 4 * np.cos(2 * np.pi * u[:, 0]) + 3
    assert np.allclose(evaluate(f, u), closed, atol=1e-12)


def test_zero_polynomial_evaluates_to_zero():
    rs = build_root_system("A2")
    assert evaluate(TrigPoly(rs, {}), [0.3, 0.1]) == 0


@pytest.mark.parametrize("name", TYPES)
def test_action_matches_pointwise_definition(name):
    rs = build_root_system(name)
    W = generate(rs)
    rng = np.random.default_rng(2)
    f = random_poly(rs, 1, rng)
    for g in range(W.order):
        gf = act(g, f, W)
        ginv = W.elements[W.inverse(g)]
        for _ in range(5):
            u = rng.uniform(size=rs.n)
            assert np.isclose(evaluate(gf, u), evaluate(f, act_point(ginv, u)), atol=1e-10)


def test_identity_and_symmetric_action():
    rs = build_root_system("A1")
    W = generate(rs)
    f = TrigPoly(rs, {(1,): 1})
    assert act(0, f, W) == f
    assert act(1, f, W) == f


def test_symmetrize():
    rs = build_root_system("A2")
    W = generate(rs)
    g = example_a2()
    assert is_invariant(W, g)
    assert symmetrize(W, g).allclose(g)
    s = symmetrize(W, TrigPoly(rs, {(1, 0): 1}))
    # the orbit of w1 has 3 elements with stabilisers of order 2: each gets 2/6
    for w in [(1, 0), (-1, 1), (0, -1), (-1, 0), (1, -1), (0, 1)]:
        assert s[w] == pytest.approx(1 / 3)
    assert is_invariant(W, s)
    assert not is_invariant(W, TrigPoly(rs, {(1, 0): 1}))


def test_example_a1_matrix():
    f = example_a1()
    ws = weight_set(f.rs, 1)
    X = to_toeplitz(f, ws)
    assert X.dense(order=[(1,), (0,), (-1,)]).tolist() == [[3, -3, 3], [-3, 3, -3], [3, -3, 3]]
    assert from_toeplitz(X) == f


def test_example_a2_pattern():
    f = example_a2()
    X = to_toeplitz(f, weight_set(f.rs, 1)).dense(order=A2_DISPLAY_ORDER)
    a, b, c, d, e = X[0, 0], X[0, 1], X[0, 4], X[1, 1], X[1, 2]
    ff, g, h, k = X[1, 4], X[1, 6], X[4, 4], X[4, 5]
    assert (a, d, h) == (6, 6, 6)
    assert (b, c, ff) == (7, 7, 7)
    assert (e, k) == (0, 0)
    assert g == 14


def test_constant_encoding():
    rs = build_root_system("B2")
    X = to_toeplitz(TrigPoly.constant(rs, 2.5), weight_set(rs, 2))
    assert X.t == {(0, 0): 2.5}


def test_identity_decodes_to_one():
    ws = weight_set(build_root_system("A2"), 2)
    X = ToeplitzMat(ws, {(0, 0): 1.0})
    assert from_toeplitz(X) == TrigPoly.constant(ws.rs, 1.0)
    assert from_toeplitz(ToeplitzMat(ws, {})) == TrigPoly(ws.rs, {})


def test_support_too_large():
    f = example_a2()
    with pytest.raises(SupportTooLarge) as err:
        to_toeplitz(f, weight_set(f.rs, 0))
    assert err.value.minimal_degree == 1


@settings(max_examples=40, deadline=None)
@given(name=st.sampled_from(TYPES), d=st.integers(1, 2), seed=st.integers(0, 2**32 - 1))
def test_quadratic_form_identity(name, d, seed):
    rs = build_root_system(name)
    rng = np.random.default_rng(seed)
    f = random_poly(rs, d, rng)
    ws = weight_set(rs, d)
    X = to_toeplitz(f, ws).dense()
    for _ in range(5):
        u = rng.uniform(-1, 1, size=rs.n)
        E = E_vector(ws, u)
        # entries X[mu, nu] = t_{mu - nu}: the Hermitian form in E evaluates f at -u
        assert abs(evaluate(f, -u) - (E.conj() @ X @ E).real) < 1e-9
        assert abs(evaluate(f, u) - (E @ X @ E.conj()).real) < 1e-9
    assert from_matrix(ws, X).allclose(f, tol=1e-9)


@pytest.mark.parametrize("name", TYPES)
def test_invariance_iff_equivariant_matrix(name):
    rs = build_root_system(name)
    W = generate(rs)
    rng = np.random.default_rng(3)
    ws = weight_set(rs, 2)
    for f, expect in [(random_invariant_poly(rs, 2, rng, W), True), (random_poly(rs, 2, rng), None)]:
        X = to_toeplitz(f, ws)
        fixed = all(np.allclose(act_mat(g, X, W).dense(), X.dense(), atol=1e-12)
                    for g in range(W.order))
        assert fixed == is_invariant(W, f, tol=1e-12)
        if expect is not None:
            assert fixed


@pytest.mark.parametrize("name", TYPES)
def test_matrix_action_is_permutation_conjugation(name):
    rs = build_root_system(name)
    W = generate(rs)
    ws = weight_set(rs, 2)
    rep = build_perm_rep(W, ws)
    rng = np.random.default_rng(4)
    t = {eta: complex(*rng.integers(-4, 5, size=2)) for eta in ws.differences() if eta > (0,) * rs.n}
    t.update({tuple(-x for x in eta): v.conjugate() for eta, v in list(t.items())})
    t[(0,) * rs.n] = 3
    X = ToeplitzMat(ws, t)
    for g in range(W.order):
        th = rep.matrix(g)
        assert np.array_equal(act_mat(g, X, W).dense(), th @ X.dense() @ th.T)


@pytest.mark.parametrize("name", TYPES)
def test_difference_counts_are_invariant(name):
    rs = build_root_system(name)
    W = generate(rs)
    counts = weight_set(rs, 2).differences()
    for g in range(W.order):
        for eta, n in counts.items():
            assert counts[W.act_weight(g, eta)] == n


def test_a1_reflection_conjugates_generic_matrix():
    ws = weight_set(build_root_system("A1"), 1)
    W = generate(ws.rs)
    b, c = 1 + 2j, -0.5 + 1j
    X = ToeplitzMat(ws, {(0,): 1, (1,): b, (-1,): b.conjugate(), (2,): c, (-2,): c.conjugate()})
    Y = act_mat(1, X, W)
    assert Y[(1,)] == b.conjugate() and Y[(2,)] == c.conjugate()
    assert act_mat(0, X, W).t == X.t


def test_toeplitz_from_matrix_roundtrip():
    f = example_a2()
    ws = weight_set(f.rs, 1)
    X = to_toeplitz(f, ws)
    Y = toeplitz_from_matrix(ws, X.dense())
    assert np.allclose(Y.dense(), X.dense())
    M = X.dense()
    M[0, 1] += 1
    with pytest.raises(ValueError):
        toeplitz_from_matrix(ws, M)


def test_json_roundtrip():
    f = example_a2()
    assert poly_from_json(json.dumps(poly_to_json(f))) == f
    assert poly_from_json(poly_to_json(f)) == f


@pytest.mark.parametrize("text,where", [
    ("", "line 1"),
    ("{", "line 1"),
    ('{"terms": []}', "root_system"),
    ('{"root_system": "Q7", "terms": []}', "root_system"),
    ('{"root_system": "A2", "terms": []}', "terms"),
    ('{"root_system": "A2", "terms": [{"weight": [1], "re": 1}]}', "terms[0].weight"),
    ('{"root_system": "A2", "terms": [{"weight": [1, 0], "re": "x"}]}', "terms[0]"),
    ('{"root_system": "A1", "terms": [{"weight": [1], "re": 1}, {"weight": [-1], "re": 2}]}', "terms"),
])
def test_json_errors(text, where):
    with pytest.raises(ParseError) as err:
        poly_from_json(text)
    assert err.value.where.startswith(where)
