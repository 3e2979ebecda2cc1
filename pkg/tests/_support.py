"""Shared builders for the test suite."""

import numpy as np

from symtrig.lattice import weight_set
from symtrig.rootsys import build_root_system
from symtrig.trigpoly import TrigPoly, symmetrize
from symtrig.weyl import generate

# Weight order used when the A2 example is printed: 0, -w1, w1-w2, w2, -w2, w2-w1, w1.
A2_DISPLAY_ORDER = [(0, 0), (-1, 0), (1, -1), (0, 1), (0, -1), (-1, 1), (1, 0)]


def example_a1():
    rs = build_root_system("A1")
    return TrigPoly(rs, {(2,): 1, (1,): -2, (0,): 3})


def example_a2():
    """Invariant A2 polynomial with constant 6, weight 4 on both first shells and 2 on doubled weights."""
    rs = build_root_system("A2")
    coeffs = {(0, 0): 6}
    for w in [(1, 0), (0, 1), (-1, 1), (1, -1), (-1, 0), (0, -1)]:
        coeffs[w] = 4
        coeffs[(2 * w[0], 2 * w[1])] = 2
    return TrigPoly(rs, coeffs)


def _lexpos(w):
    for x in w:
        if x:
            return x > 0
    return True


def random_poly(rs, d, rng, complex_coeffs=True):
    """Random real-valued polynomial supported on Omega_d - Omega_d, coefficients in [-1, 1]."""
    diffs = weight_set(rs, d).differences()
    coeffs = {}
    for eta in diffs:
        if not _lexpos(eta):
            continue
        re = rng.uniform(-1, 1)
        im = rng.uniform(-1, 1) if complex_coeffs and any(eta) else 0.0
        coeffs[eta] = complex(re, im)
    return TrigPoly(rs, coeffs)


def random_invariant_poly(rs, d, rng, W=None):
    W = W or generate(rs)
    return symmetrize(W, random_poly(rs, d, rng))


def a2_invariant_pattern(rng):
    """Random instance of the general W-equivariant Hermitian 7x7 pattern, display order.

    Returns the matrix and the symbol values ``a, ..., k``.
    """
    a, d, e, h, k = rng.uniform(-1, 1, size=5)
    b, c, f, g = rng.uniform(-1, 1, size=4) + 1j * rng.uniform(-1, 1, size=4)
    X = np.array([
        [a, b, b, b, c, c, c],
        [0, d, e, e, f, f, g],
        [0, e, d, e, f, g, f],
        [0, e, e, d, g, f, f],
        [0, 0, 0, 0, h, k, k],
        [0, 0, 0, 0, k, h, k],
        [0, 0, 0, 0, k, k, h],
    ], dtype=complex)
    X = np.triu(X) + np.triu(X, 1).conj().T
    return X, dict(a=a, b=b, c=c, d=d, e=e, f=f, g=g, h=h, k=k)


def permutation_to(ws, order):
    """Matrix ``Pm`` with ``Pm @ v`` reordering a vector from ``ws`` order to ``order``."""
    Pm = np.zeros((len(order), len(order)))
    for i, w in enumerate(order):
        Pm[i, ws.index[tuple(w)]] = 1
    return Pm
