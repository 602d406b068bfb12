"""Random instances with known answers, shared by several test modules."""

from fractions import Fraction as Q

from padictrop.exact_arith import ord_p
from padictrop.exact_linalg import rank
from padictrop.oracle import poly_from_roots
from padictrop.poly import PolySystem, SparsePoly
from padictrop.valuation_count import affinely_independent

UNITS = (1, -1, 2, 5, -7, Q(1, 7), Q(3, 11))


def random_rational(rnd, p, spread=4):
    unit = Q(rnd.choice(UNITS))
    while ord_p(unit, p) != 0:
        unit = Q(rnd.choice(UNITS))
    return Q(p) ** rnd.randint(-spread, spread) * unit


def planted_univariate(rnd, p, max_roots=6):
    """``PlantedPoly`` with random nonzero rational roots (and sometimes the root 0)."""
    roots = [(random_rational(rnd, p), rnd.randint(1, 3)) for _ in range(rnd.randint(1, max_roots))]
    if rnd.random() < 0.2:
        roots.append((0, 1))
    return poly_from_roots(roots, scale=random_rational(rnd, p, 2))


def planted_small_system(rnd, n, p):
    """System on ``n+1`` affinely independent exponents (origin included) with a planted torus root.

    The coefficient rows are independent, so the valuation vector is unique.
    Returns ``(F, ord_p(root))``.
    """
    origin = (0,) * n
    while True:
        A = [tuple(rnd.randint(0, 3) for _ in range(n)) for _ in range(n)]
        if origin not in A and len(set(A)) == n and affinely_independent([origin] + A):
            break
    root = [random_rational(rnd, p, 3) for _ in range(n)]
    monos = [SparsePoly.monomial(a) for a in A]
    while True:
        polys = []
        for _ in range(n):
            f = SparsePoly.zero(n)
            for m in monos:
                f = f + rnd.choice([1, 2, 3, -1, -4, 6]) * m
            polys.append(f - f.evaluate(root) * SparsePoly.const(1, n))
        F = PolySystem(tuple(polys))
        if F.t == n + 1 and rank([[f.coeff(a) for a in A] for f in polys]) == n:
            return F, tuple(ord_p(r, p) for r in root)


def random_binomial_product(rnd, p, m):
    """``m`` factors ``(alpha, beta, gamma)`` for ``prod (alpha + beta x)**gamma``."""
    return [(random_rational(rnd, p, 3), random_rational(rnd, p, 3), rnd.randint(1, 2)) for _ in range(m)]


def expand_binomial_product(factors):
    x = SparsePoly.var(0, 1)
    out = SparsePoly.const(1)
    for a, b, g in factors:
        out = out * (a * SparsePoly.const(1) + b * x) ** g
    return out
