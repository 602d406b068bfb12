"""Univariate p-adic Newton polygons.

The polygon of ``f = sum c_i x**a_i`` is the lower convex hull of the lifted
points ``(a_i, ord_p c_i)``.  A lower edge of slope ``s`` and horizontal
length ``h`` accounts for exactly ``h`` roots in C_p (with multiplicity) of
valuation ``-s``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import DegenerateFactor, PrimeMismatch, ZeroPolynomial
from .exact_arith import as_rational, check_prime, format_rational, ord_p
from .poly import SparsePoly


class Edge(NamedTuple):
    slope: Fraction
    hlen: int


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[tuple]) -> list:
    """Strict vertices of the lower convex hull, left to right.

    Points sharing an abscissa keep only the lowest one; points in the
    relative interior of an edge are dropped.
    """
    best: dict = {}
    for x, y in points:
        y = as_rational(y)
        if x not in best or y < best[x]:
            best[x] = y
    chain: list = []
    for pt in sorted(best.items()):
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], pt) <= 0:
            chain.pop()
        chain.append(pt)
    return chain


def _edges_of(vertices) -> tuple:
    return tuple(
        Edge(Fraction(y1 - y0) / (x1 - x0), x1 - x0)
        for (x0, y0), (x1, y1) in zip(vertices, vertices[1:])
    )


@dataclass(frozen=True)
class NewtonPolygon:
    prime: int
    vertices: tuple
    edges: tuple = ()
    lifted_points: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        verts = tuple((int(x), as_rational(y)) for x, y in self.vertices)
        if not verts:
            raise ValueError("a Newton polygon needs at least one vertex")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", _edges_of(verts))
        slopes = [e.slope for e in self.edges]
        assert all(s < t for s, t in zip(slopes, slopes[1:])), "slopes must increase"
        assert sum(e.hlen for e in self.edges) == verts[-1][0] - verts[0][0]

    @classmethod
    def from_points(cls, prime: int, points: Sequence[tuple]) -> "NewtonPolygon":
        pts = tuple((int(x), as_rational(y)) for x, y in points)
        return cls(prime, tuple(lower_hull(pts)), lifted_points=pts)

    @property
    def span(self) -> tuple:
        return self.vertices[0][0], self.vertices[-1][0]

    def height_at(self, x) -> Fraction | None:
        """Height of the lower chain above abscissa ``x`` (None outside the span)."""
        lo, hi = self.span
        if x < lo or x > hi:
            return None
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * Fraction(x - x0, x1 - x0)
        return self.vertices[0][1]

    def valuation_counts(self) -> dict:
        return {-e.slope: e.hlen for e in reversed(self.edges)}

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "vertices": [[x, format_rational(y)] for x, y in self.vertices],
            "edges": [{"slope": format_rational(e.slope), "hlen": e.hlen} for e in self.edges],
        }


def lifted_points(f: SparsePoly, p: int) -> list:
    if f.nvars != 1:
        raise ValueError("Newton polygons need a univariate polynomial")
    return [(e[0], ord_p(c, p)) for e, c in f.items()]


def newton_polygon(f: SparsePoly, p: int) -> NewtonPolygon:
    check_prime(p)
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    return NewtonPolygon.from_points(p, lifted_points(f, p))


def root_valuations(f: SparsePoly, p: int) -> dict:
    """Map valuation -> number of roots in C_p^* with that valuation (with multiplicity)."""
    return newton_polygon(f, p).valuation_counts()


def _from_edges(prime: int, start: tuple, edges: Sequence[Edge]) -> NewtonPolygon:
    merged: dict = {}
    for e in edges:
        merged[e.slope] = merged.get(e.slope, 0) + e.hlen
    x, y = start
    verts = [(x, y)]
    for s in sorted(merged):
        h = merged[s]
        x, y = x + h, y + s * h
        verts.append((x, y))
    return NewtonPolygon(prime, tuple(verts))


def minkowski_sum(P1: NewtonPolygon, P2: NewtonPolygon) -> NewtonPolygon:
    if P1.prime != P2.prime:
        raise PrimeMismatch(f"primes {P1.prime} and {P2.prime} differ")
    (x1, y1), (x2, y2) = P1.vertices[0], P2.vertices[0]
    return _from_edges(P1.prime, (x1 + x2, y1 + y2), P1.edges + P2.edges)


def scale_polygon(P: NewtonPolygon, k: int) -> NewtonPolygon:
    """Minkowski sum of ``k`` copies of ``P``."""
    x, y = P.vertices[0]
    return _from_edges(P.prime, (k * x, k * y), [Edge(e.slope, e.hlen * k) for e in P.edges])


def binomial_polygon(alpha, beta, p: int) -> NewtonPolygon:
    """Polygon of ``alpha + beta*x``."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    if alpha == 0 and beta == 0:
        raise DegenerateFactor("factor alpha + beta*x is identically zero")
    pts = []
    if alpha:
        pts.append((0, ord_p(alpha, p)))
    if beta:
        pts.append((1, ord_p(beta, p)))
    return NewtonPolygon.from_points(p, pts)


def sps_product_polygon(factors: Sequence[tuple], p: int) -> NewtonPolygon:
    """Polygon of ``prod (alpha_i + beta_i x)**gamma_i`` without expanding it."""
    check_prime(p)
    total = NewtonPolygon(p, ((0, Fraction(0)),))
    for alpha, beta, gamma in factors:
        if int(gamma) < 1:
            raise ValueError("exponents gamma must be positive integers")
        total = minkowski_sum(total, scale_polygon(binomial_polygon(alpha, beta, p), int(gamma)))
    return total


class SumValuationCount(NamedTuple):
    polygon: NewtonPolygon
    counts: dict
    vertex_disjoint: bool
    certified: bool
    distinct: int
    bound: int | None
    within_bound: bool | None


def sum_valuation_count(P1: NewtonPolygon, P2: NewtonPolygon, m1: int | None = None,
                        m2: int | None = None) -> SumValuationCount:
    """Valuation data for ``g1 + g2`` given only the polygons of ``g1`` and ``g2``.

    The sum's polygon is the lower hull of the two chains whenever no vertex
    of that hull is touched by both chains; otherwise the lowest coefficient
    could cancel and the result is returned with ``certified=False``.
    ``distinct`` counts distinct valuations of all roots in C_p, including
    the root 0 (valuation +inf) when the lowest exponent is positive.
    """
    if P1.prime != P2.prime:
        raise PrimeMismatch(f"primes {P1.prime} and {P2.prime} differ")
    shared = set(P1.vertices) & set(P2.vertices)
    hull = NewtonPolygon.from_points(P1.prime, P1.vertices + P2.vertices)
    certified = not shared
    for x, y in hull.vertices:
        h1, h2 = P1.height_at(x), P2.height_at(x)
        if h1 == y and h2 == y:
            certified = False
    counts = hull.valuation_counts()
    distinct = len(counts) + (1 if hull.span[0] > 0 else 0)
    bound = None if m1 is None or m2 is None else m1 + m2
    within = None if bound is None else distinct <= bound
    return SumValuationCount(hull, counts, not shared, certified, distinct, bound, within)


def valuation_multiset(roots: Sequence[tuple], p: int) -> dict:
    """``{ord_p(r): total multiplicity}`` for nonzero roots ``(r, m)``."""
    out: Counter = Counter()
    for r, m in roots:
        r = as_rational(r)
        if r != 0:
            out[ord_p(r, p)] += m
    return dict(out)
