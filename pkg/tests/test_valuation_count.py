import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padictrop.errors import GeneralPositionFailure, RegimeMismatch, ZeroPolynomial
from padictrop.exact_arith import ord_p
from padictrop.exact_linalg import rank
from padictrop.oracle import extremal_true_valuations, rational_roots
from padictrop.poly import PolySystem, SparsePoly
from padictrop.valuation_count import (
    LARGER,
    T_EQ_N_PLUS_1,
    T_EQ_N_PLUS_2,
    T_LE_N,
    SpsExpression,
    assertion2_bound,
    classify,
    count_n_plus_2,
    count_small_support,
    extremal_family,
    fij_reduction,
    in_general_position,
    maybetrivial_bound,
    slab_hyperplanes,
    sps_reduce,
    sps_root_lift,
)

from planted import planted_small_system

x, y = SparsePoly.var(0, 2), SparsePoly.var(1, 2)
one2 = SparsePoly.const(1, 2)
t = SparsePoly.var(0, 1)
one1 = SparsePoly.const(1)


def test_classify_regimes():
    assert classify(PolySystem((x - y, x + y))).regime == T_LE_N
    c = classify(PolySystem((x + y + one2, x - y + 3 * one2)))
    assert c.regime == T_EQ_N_PLUS_1 and c.general_position and not c.flat
    c = classify(PolySystem((x * y - 3 * one2 - x**2, y - one2 - 3 * x**2)))
    assert c.regime == T_EQ_N_PLUS_2 and c.general_position
    assert classify(PolySystem((x + y + one2 + x * y + x**2,) * 2)).regime == LARGER
    # four points, three on a line
    assert not classify(PolySystem((one2 + x + x**2 + y, one2 - x))).general_position


def test_general_position_rule():
    assert in_general_position([(0, 0), (2, 0), (1, 1), (0, 1)], 2)
    assert not in_general_position([(0, 0), (1, 0), (2, 0), (0, 1)], 2)


def test_gauss_pair():
    F = PolySystem((x + y + one2, x - y + 3 * one2))
    res = count_small_support(F, 3)
    assert res.kind == "exact" and res.value == 1 and res.vector == (0, 0)
    res = count_small_support(PolySystem((x + y + one2, 9 * x - 3 * y + one2)), 3)
    assert res.vector == (-1, -1)


def test_small_support_edge_cases():
    assert count_small_support(PolySystem((x * y, x + one2)), 5).value == 0
    # x - 1 and 2x - 2: same line, positive-dimensional root set
    assert count_small_support(PolySystem((x - one2, 2 * x - 2 * one2)), 5).kind == "infinite"
    # x - 1, x - 2: elimination yields a constant
    assert count_small_support(PolySystem((x - one2, x - 2 * one2)), 5).value == 0
    with pytest.raises(RegimeMismatch):
        count_small_support(PolySystem((x * y - 3 * one2 - x**2, y - one2 - 3 * x**2)), 3)


def test_flat_support_is_never_exact_one():
    rnd = random.Random(5)
    for _ in range(50):
        a, b, c = (rnd.randint(1, 9) for _ in range(3))
        F = PolySystem((a * x + b * x**2 + c * one2, b * x - a * x**2 + one2))
        res = count_small_support(F, 3)
        assert not (res.kind == "exact" and res.value == 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_planted_small_support_fuzz(p):
    rnd = random.Random(100 + p)
    for _ in range(100):
        F, v = planted_small_system(rnd, rnd.randint(1, 4), p)
        assert classify(F).regime == T_EQ_N_PLUS_1
        res = count_small_support(F, p)
        assert (res.kind, res.value, res.vector) == ("exact", 1, v)


def test_small_support_up_to_six_variables():
    for n in range(1, 7):
        xs = [SparsePoly.var(i, n) for i in range(n)]
        c = SparsePoly.const(1, n)
        F = PolySystem(tuple(xs[i] - (i + 2) * c for i in range(n)))
        res = count_small_support(F, 7)
        assert res.value == 1 and res.vector == tuple(ord_p(i + 2, 7) for i in range(n))


def test_regime_invariance_under_monomial_shift():
    F = PolySystem((x + y + one2, x - y + 3 * one2))
    G = PolySystem(tuple(f.shift((2, 3)) for f in F.polys))
    assert count_small_support(G, 3) == count_small_support(F, 3)


def _coeff_rank(polys, A):
    return rank([[f.coeff(a) for a in A] for f in polys])


def test_fij_rows_lie_in_span():
    F = extremal_family(2, 3)
    for i in range(1, 5):
        for j in range(i + 1, 5):
            G = fij_reduction(F, i, j)
            assert G.star and not G.cases
            assert G.order[-2:] == (F.A[i - 1], F.A[j - 1])
            assert _coeff_rank(F.polys + G.system.polys, F.A) == 2
    with pytest.raises(ValueError):
        fij_reduction(F, 1, 1)


def test_fij_case_labels():
    F = PolySystem((x + one2, y + one2 + x * y))
    assert fij_reduction(F, 1, 2).cases == ((0, "a"),)
    assert fij_reduction(F, 2, 1).cases == ((0, "b"),)
    assert fij_reduction(F, 1, 3).cases == ((0, "other"), (1, "c"))
    assert fij_reduction(F, 2, 4).star


def test_slab_hyperplanes():
    F = PolySystem((x * y - 3 * one2 - x**2, y - one2 - 3 * x**2))
    A = F.A
    for i in range(1, 5):
        for j in range(i + 1, 5):
            G = fij_reduction(F, i, j)
            if not G.star:
                continue
            H = slab_hyperplanes(G, 3)
            assert len(H) == 2
            ai, aj = A[i - 1], A[j - 1]
            assert all(h.normal == tuple(u - w for u, w in zip(ai, aj)) for h in H)
    G = fij_reduction(F, 1, 2)
    if not G.star:
        with pytest.raises(ValueError):
            slab_hyperplanes(G, 3)


def test_bounds():
    assert [assertion2_bound(n) for n in (1, 2, 3, 4, 5)] == [2, 3, 4, 20, 37]
    for m in range(1, 5):
        for tt in range(1, 5):
            assert maybetrivial_bound(1, m, tt) == 0
    assert maybetrivial_bound(2, 1, 2) == 5
    assert maybetrivial_bound(2, 3, 4) == 37
    with pytest.raises(ValueError):
        maybetrivial_bound(0, 1, 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_extremal_n2(p):
    res = count_n_plus_2(extremal_family(2, p), p)
    assert set(res.candidates) == {(-1, -1), (0, 0), (1, 0)}
    assert res.bound == 3 and res.finite_candidates


@pytest.mark.parametrize("n", [3, 4])
def test_extremal_higher(n):
    p = 3
    res = count_n_plus_2(extremal_family(n, p), p)
    truth = extremal_true_valuations(n, p)
    assert len(truth) == n + 1
    assert set(truth) <= set(res.candidates)
    assert len(res.candidates) == n + 1
    assert len(res.candidates) <= res.bound


def test_count_n_plus_2_guards():
    with pytest.raises(RegimeMismatch):
        count_n_plus_2(PolySystem((x + y + one2, x - y + 3 * one2)), 3)
    with pytest.raises(GeneralPositionFailure):
        count_n_plus_2(PolySystem((one2 + x + x**2 + y, one2 - x + 2 * y)), 3)


def test_sps_shape_and_roots():
    f = [[t - one1, t + 2 * one1], [t**2 - 4 * one1, 3 * t + one1]]
    e = SpsExpression.from_factors(f)
    F = sps_reduce(e)
    assert len(F.polys) == e.k * e.m + 1 and F.nvars == e.k * e.m + 1
    g = e.expand()
    for r, _ in rational_roots(g):
        pt = sps_root_lift(e, r)
        assert all(v == 0 for v in F.evaluate(pt))
    e1 = SpsExpression.from_factors([[t - 3 * one1]])
    F1 = sps_reduce(e1)
    assert len(F1.polys) == 2
    assert F1.evaluate(sps_root_lift(e1, 3)) == [0, 0]


def test_sps_validation():
    with pytest.raises(ZeroPolynomial):
        SpsExpression.from_factors([[SparsePoly.zero(1)]])
    with pytest.raises(ValueError):
        SpsExpression(1, 1, 1, ((t + one1,),))
    with pytest.raises(ValueError):
        SpsExpression.from_factors([[t / 2 + one1]])


@settings(max_examples=40)
@given(st.lists(st.integers(-6, 6).filter(bool), min_size=2, max_size=2),
       st.lists(st.integers(-6, 6).filter(bool), min_size=2, max_size=2))
def test_sps_lift_property(r1, r2):
    f = [[t - r1[0] * one1, t - r1[1] * one1], [t - r2[0] * one1, t - r2[1] * one1]]
    e = SpsExpression.from_factors(f)
    g = e.expand()
    if g.is_zero():
        return
    F = sps_reduce(e)
    for r, _ in rational_roots(g):
        assert all(v == 0 for v in F.evaluate(sps_root_lift(e, r)))
