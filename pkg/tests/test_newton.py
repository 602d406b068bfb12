import random
from collections import Counter
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from padictrop.errors import DegenerateFactor, PrimeMismatch, ZeroPolynomial
from padictrop.exact_arith import ord_p
from padictrop.newton import (
    binomial_polygon,
    lower_hull,
    minkowski_sum,
    newton_polygon,
    root_valuations,
    sps_product_polygon,
    sum_valuation_count,
)
from padictrop.oracle import poly_from_roots
from padictrop.poly import SparsePoly

from planted import expand_binomial_product, random_binomial_product

x = SparsePoly.var(0, 1)


def sextic():
    return poly_from_roots([(1, 3), (6, 2), (Q(1, 243), 1)], scale=243).f


def test_sextic_polygon():
    P = newton_polygon(sextic(), 3)
    assert P.vertices == ((0, 2), (2, 0), (5, 0), (6, 5))
    assert len(P.edges) == 3
    assert sorted(P.lifted_points) == [(0, 2), (1, 1), (2, 0), (3, 1), (4, 1), (5, 0), (6, 5)]
    assert root_valuations(sextic(), 3) == {1: 2, 0: 3, -5: 1}


def test_small_polygons():
    P = newton_polygon(5 * x**3, 3)
    assert P.vertices == ((3, 0),) and P.edges == ()
    P = newton_polygon(x - 3, 3)
    assert P.vertices == ((0, 1), (1, 0))
    assert [(e.slope, e.hlen) for e in P.edges] == [(-1, 1)]
    assert root_valuations(x**2 - 5, 5) == {Q(1, 2): 2}
    assert root_valuations((x - 1) * (x - 2), 5) == {0: 2}


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        newton_polygon(SparsePoly.zero(1), 3)


def test_collinear_points_are_not_vertices():
    assert lower_hull([(0, Q(0)), (1, Q(1)), (2, Q(2))]) == [(0, 0), (2, 2)]
    assert lower_hull([(0, Q(3)), (0, Q(1)), (1, Q(0))]) == [(0, 1), (1, 0)]


def test_minkowski_examples():
    P = newton_polygon(x - 3, 3)
    S = minkowski_sum(P, P)
    assert [(e.slope, e.hlen) for e in S.edges] == [(-1, 2)]
    M = newton_polygon(SparsePoly.monomial((4,), 9), 3)
    T = minkowski_sum(newton_polygon(sextic(), 3), M)
    assert [(e.slope, e.hlen) for e in T.edges] == [(e.slope, e.hlen) for e in newton_polygon(sextic(), 3).edges]
    assert T.vertices[0] == (4, 4)
    with pytest.raises(PrimeMismatch):
        minkowski_sum(P, newton_polygon(x - 3, 5))


def _rand_univariate(rnd, deg=5):
    return SparsePoly.from_coeffs(
        [Q(rnd.randint(-40, 40), rnd.randint(1, 30)) for _ in range(deg + 1)], low=rnd.randint(0, 2)
    )


@pytest.mark.parametrize("p", [2, 3, 5])
def test_product_polygon_is_minkowski_sum(p):
    rnd = random.Random(p)
    for _ in range(200):
        f, g = _rand_univariate(rnd), _rand_univariate(rnd)
        if f.is_zero() or g.is_zero():
            continue
        assert minkowski_sum(newton_polygon(f, p), newton_polygon(g, p)) == newton_polygon(f * g, p)


def test_sps_product_polygon_examples():
    P = sps_product_polygon([(1, 1, 1)], 3)
    assert [(e.slope, e.hlen) for e in P.edges] == [(0, 1)]
    P = sps_product_polygon([(3, 1, 2)], 3)
    assert [(e.slope, e.hlen) for e in P.edges] == [(-1, 2)]
    with pytest.raises(DegenerateFactor):
        binomial_polygon(0, 0, 3)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_sps_product_polygon_matches_expansion(p):
    rnd = random.Random(10 + p)
    for _ in range(100):
        factors = []
        f = SparsePoly.const(1)
        for _ in range(rnd.randint(1, 4)):
            a = Q(rnd.randint(-30, 30), rnd.randint(1, 9))
            b = Q(rnd.choice([-1, 1]) * rnd.randint(1, 30), rnd.randint(1, 9))
            g = rnd.randint(1, 3)
            factors.append((a, b, g))
            f = f * (SparsePoly.const(a) + b * x) ** g
        assert sps_product_polygon(factors, p) == newton_polygon(f, p)


def test_sum_valuation_count_examples():
    P1, P2 = newton_polygon(x - 1, 3), newton_polygon(x - 3, 3)
    assert not sum_valuation_count(P1, P2).vertex_disjoint
    Q1 = sps_product_polygon([(3, 1, 2)], 3)
    Q2 = newton_polygon(x**3, 3)
    r = sum_valuation_count(Q1, Q2, 1, 1)
    assert r.vertex_disjoint and r.certified and r.within_bound
    assert r.counts == root_valuations((3 + x) ** 2 + x**3, 3)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_planted_roots_oracle(p):
    rnd = random.Random(100 + p)
    for _ in range(1000):
        roots = []
        for _ in range(rnd.randint(1, 5)):
            r = Q(rnd.randint(1, 60), rnd.randint(1, 60)) * Q(p) ** rnd.randint(-3, 3) * rnd.choice((-1, 1))
            roots.append((r, rnd.randint(1, 2)))
        pp = poly_from_roots(roots, Q(rnd.randint(1, 50), rnd.randint(1, 50)))
        want = Counter()
        for r, m in pp.roots:
            want[ord_p(r, p)] += m
        assert root_valuations(pp.f, p) == dict(want)


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=8).filter(lambda c: c[-1] != 0 and any(c[:-1])))
def test_hull_invariants(coeffs):
    for p in (2, 3):
        P = newton_polygon(SparsePoly.from_coeffs(coeffs), p)
        slopes = [e.slope for e in P.edges]
        assert slopes == sorted(set(slopes))
        lo, hi = P.span
        assert sum(e.hlen for e in P.edges) == hi - lo
        for xx, yy in P.lifted_points:
            assert P.height_at(xx) <= yy


def test_two_product_bound_has_tight_witnesses():
    rnd = random.Random(0)
    witnesses = 0
    for _ in range(600):
        p = rnd.choice([2, 3, 5])
        m1, m2 = rnd.randint(1, 3), rnd.randint(1, 3)
        F1, F2 = random_binomial_product(rnd, p, m1), random_binomial_product(rnd, p, m2)
        res = sum_valuation_count(sps_product_polygon(F1, p), sps_product_polygon(F2, p), m1, m2)
        if res.certified and res.distinct == m1 + m2:
            g = expand_binomial_product(F1) + expand_binomial_product(F2)
            assert len(root_valuations(g, p)) + (g.low_degree() > 0) == m1 + m2
            witnesses += 1
    assert witnesses > 0
