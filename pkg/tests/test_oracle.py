import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padictrop.errors import NonPrime, PrecisionTooLow, TooLarge, ZeroPolynomial
from padictrop.oracle import (
    extremal_true_valuations,
    poly_from_roots,
    rational_roots,
    shub_smale_family,
    squarefree_part,
    zp_root_count,
)
from padictrop.poly import SparsePoly

x = SparsePoly.var(0, 1)
one = SparsePoly.const(1)


def test_poly_from_roots():
    P = poly_from_roots([(1, 2), (Q(1, 2), 1)], scale=2)
    assert P.f == 2 * (x - one) ** 2 * (x - Q(1, 2) * one)
    assert P.degree == 3 and P.roots == ((Q(1, 2), 1), (1, 2))
    assert poly_from_roots([(3, 1), (3, 2)]).roots == ((3, 3),)
    with pytest.raises(ValueError):
        poly_from_roots([(1, 0)])
    with pytest.raises(ValueError):
        poly_from_roots([(1, 1)], scale=0)


def test_rational_roots_examples():
    assert rational_roots(x**2 - 2 * one) == []
    assert rational_roots(x**3 * (x - 4 * one)) == [(0, 3), (4, 1)]
    assert rational_roots(6 * x**2 - x - one) == [(Q(-1, 3), 1), (Q(1, 2), 1)]
    with pytest.raises(ZeroPolynomial):
        rational_roots(SparsePoly.zero(1))


def test_rational_roots_round_trip():
    rnd = random.Random(11)
    for _ in range(1000):
        roots = []
        for _ in range(rnd.randint(1, 5)):
            r = Q(rnd.randint(-40, 40), rnd.randint(1, 30))
            roots.append((r, rnd.randint(1, 3)))
        P = poly_from_roots(roots, scale=rnd.choice([1, -3, Q(5, 7)]))
        assert tuple(rational_roots(P.f)) == P.roots


def test_squarefree_part():
    f = poly_from_roots([(1, 3), (2, 1), (Q(1, 3), 2)]).f
    g = squarefree_part(f)
    assert g == poly_from_roots([(1, 1), (2, 1), (Q(1, 3), 1)]).f
    assert squarefree_part(x**2 + one) == x**2 + one


def _brute(f, p, k):
    M = p**k
    coeffs = [int(c) for c in f.dense()]
    return sum(1 for r in range(M) if sum(c * r**i for i, c in enumerate(coeffs)) % M == 0)


def test_zp_examples():
    r = zp_root_count(x**2 - one, 3, 4)
    assert (r.approximate, r.certified, r.inconclusive) == (2, 2, 0) and r.complete
    r = zp_root_count(x**2 - 3 * one, 3, 4)
    assert r.certified == 0 and r.approximate == 0
    r = zp_root_count(shub_smale_family(2, 3), 3, 3)
    assert r.certified == 4 and r.complete
    r = zp_root_count(x**2, 5, 3)
    assert r.certified == 0 and not r.complete
    with pytest.raises(PrecisionTooLow):
        zp_root_count(x**2, 5, 3, strict=True)


def test_zp_guards():
    with pytest.raises(NonPrime):
        zp_root_count(x - one, 4, 2)
    with pytest.raises(TooLarge):
        zp_root_count(x - one, 2, 40)
    with pytest.raises(ValueError):
        zp_root_count(x - one, 3, 0)
    with pytest.raises(ZeroPolynomial):
        zp_root_count(SparsePoly.zero(1), 3, 2)


@settings(max_examples=60)
@given(st.lists(st.integers(-30, 30), min_size=2, max_size=6).filter(lambda c: c[-1] != 0),
       st.sampled_from([2, 3, 5]), st.integers(1, 4))
def test_zp_matches_brute_force(coeffs, p, k):
    f = SparsePoly.from_coeffs(coeffs)
    r = zp_root_count(f, p, k)
    assert r.approximate == _brute(f, p, k)
    assert r.certified <= f.degree()


@settings(max_examples=30)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4), st.sampled_from([2, 3, 5]))
def test_zp_certified_monotone_in_precision(roots, p):
    f = poly_from_roots([(r, 1) for r in roots]).f
    prev = 0
    for k in range(1, 6):
        c = zp_root_count(f, p, k).certified
        assert c >= prev
        prev = c
    assert prev <= len(set(roots))


def test_shub_smale_shape():
    for p in (2, 3):
        for n in range(1, 7):
            h = shub_smale_family(n, p)
            assert h.degree() == 2**n
            assert [r for r, _ in rational_roots(h)] == [0, 1]


def test_extremal_true_valuations():
    assert extremal_true_valuations(2, 3) == [(-1, -1), (0, 0), (1, 0)]
    assert len(extremal_true_valuations(3, 5)) == 4
