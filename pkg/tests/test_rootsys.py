from fractions import Fraction as F

import numpy as np
import pytest

from symtrig.errors import DimensionMismatch, UnsupportedType
from symtrig.rootsys import (RootSystemId, build_root_system, direct_sum, expected_root_count,
                             pairing, weight_gram, weight_norm_sq)

TYPES = ["A1", "A2", "B2", "C2", "G2", "A1xA1", "A2xA1"]


def test_parse_is_case_insensitive():
    assert RootSystemId.parse("a1Xa1") == RootSystemId((("A", 1), ("A", 1)))
    assert str(RootSystemId.parse("g2")) == "G2"


@pytest.mark.parametrize("bad", ["A3", "D4", "E8", "", "A", "2A"])
def test_unsupported_types(bad):
    with pytest.raises(UnsupportedType):
        build_root_system(bad)


def test_a2_ambient_data():
    rs = build_root_system("A2")
    assert rs.base[0] == (1, -1, 0)
    assert rs.coroots[0] == rs.base[0]
    assert rs.fweights[0] == (F(2, 3), F(-1, 3), F(-1, 3))
    # the highest root is the sum of the simple coroots here
    assert rs.highest_root == tuple(a + b for a, b in zip(rs.coroots[0], rs.coroots[1]))


def test_b2_short_coroot_is_doubled():
    rs = build_root_system("B2")
    assert rs.coroots[1] == tuple(2 * x for x in rs.base[1])


def test_a1_normalisation():
    rs = build_root_system("A1")
    # rho^vee = rho and the fundamental weight is rho / 2
    assert rs.coroots[0] == rs.base[0]
    assert rs.fweights[0] == tuple(x / 2 for x in rs.base[0])
    assert weight_norm_sq(rs, (1,)) == F(1, 2)


@pytest.mark.parametrize("name,cartan", [
    ("A2", [[2, -1], [-1, 2]]),
    ("B2", [[2, -2], [-1, 2]]),
    ("C2", [[2, -1], [-2, 2]]),
    ("G2", [[2, -1], [-3, 2]]),
    ("A1xA1", [[2, 0], [0, 2]]),
])
def test_cartan(name, cartan):
    assert build_root_system(name).cartan.tolist() == cartan


@pytest.mark.parametrize("name", TYPES)
def test_dual_bases_and_root_counts(name):
    rs = build_root_system(name)
    for i, fw in enumerate(rs.fweights):
        for j, co in enumerate(rs.coroots):
            assert sum(a * b for a, b in zip(fw, co)) == (1 if i == j else 0)
    expected = sum(expected_root_count(fam, r) for fam, r in rs.id.components)
    assert len(rs.roots) == expected


@pytest.mark.parametrize("name", TYPES)
def test_highest_root_dominates(name):
    rs = build_root_system(name)
    for (_, rank, off), top in zip(rs.components, rs.highest_roots):
        top_c = rs.base_coords(top)
        for r in rs.roots:
            rc = rs.base_coords(r)
            if any(rc[off : off + rank]):
                diff = [t - x for t, x in zip(top_c[off : off + rank], rc[off : off + rank])]
                assert all(x >= 0 and x.denominator == 1 for x in diff)


@pytest.mark.parametrize("name", TYPES)
def test_gram_matches_ambient(name):
    rs = build_root_system(name)
    Fm = np.array(rs.fweights, dtype=float)
    assert np.allclose(weight_gram(rs), Fm @ Fm.T, atol=1e-12)
    assert np.allclose(rs.gram @ rs.coroot_gram, np.eye(rs.n), atol=1e-12)


def test_a2_gram():
    rs = build_root_system("A2")
    assert rs.gram_exact == ((F(2, 3), F(1, 3)), (F(1, 3), F(2, 3)))


def test_pairing():
    rs = build_root_system("A2")
    assert pairing(rs, (1, 0), (1, 0)) == 1
    assert pairing(rs, (1, 0), (0, 1)) == 0
    assert pairing(build_root_system("A1"), (1,), (F(1, 6),)) == F(1, 6)
    with pytest.raises(DimensionMismatch):
        pairing(rs, (1,), (0, 0))


def test_norm_of_zero():
    assert weight_norm_sq(build_root_system("G2"), (0, 0)) == 0


def test_direct_sum():
    a1 = build_root_system("A1")
    s = direct_sum(a1, a1)
    assert s.n == 2
    assert s.cartan.tolist() == [[2, 0], [0, 2]]
    assert s.gram[0, 1] == 0
    assert build_root_system("A2xA1").n == 3


def test_build_is_cached():
    assert build_root_system("B2") is build_root_system(RootSystemId.parse("b2"))
