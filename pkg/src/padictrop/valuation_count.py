"""Counting valuation vectors of roots of sparse systems with small support.

Regimes are indexed by ``t``, the size of the union support ``A`` of an
``n``-variate system:

* ``t <= n+1``: the count is 0, 1 or infinite and is decided exactly
  (:func:`count_small_support`);
* ``t = n+2`` with ``A`` in general position: a finite candidate superset
  of the valuation vectors is computed together with the proven cap
  ``max(2, floor(n/2)**n + n)`` (:func:`count_n_plus_2`).

The module also holds the reduction of sum-product-sparse univariate
polynomials to sparse systems, and the extremal family attaining ``n+1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import GeneralPositionFailure, RegimeMismatch, ZeroPolynomial
from .exact_arith import as_rational, check_prime, format_rational, ord_p
from .exact_linalg import gauss_jordan_system, hermite_unimodular, rank, transpose
from .poly import PolySystem, SparsePoly, union_support
from .polyhedra import Polyhedron, analyze
from .tropical import intersect_many, plane_trop_curve, trop_membership

log = logging.getLogger(__name__)

T_LE_N = "T_LE_N"
T_EQ_N_PLUS_1 = "T_EQ_N_PLUS_1"
T_EQ_N_PLUS_2 = "T_EQ_N_PLUS_2"
LARGER = "LARGER"


# support geometry

def _translate(A: Sequence[tuple]) -> list:
    """Shift ``A`` so that its first point is the origin."""
    base = A[0]
    return [tuple(x - y for x, y in zip(a, base)) for a in A]


def affine_rank(A: Sequence[tuple]) -> int:
    if len(A) < 2:
        return 0
    return rank([list(a) for a in _translate(A)[1:]])


def affinely_independent(A: Sequence[tuple]) -> bool:
    return affine_rank(A) == len(A) - 1


def in_general_position(A: Sequence[tuple], n: int) -> bool:
    """No ``n+1`` points of ``A`` lie on a common affine hyperplane.

    For ``#A = n+2`` this is the same as asking that every spanning tree
    of ``n`` pairs on ``n+1`` of the points yields ``n`` independent
    difference vectors.
    """
    if len(A) < n + 1:
        return False
    return all(affinely_independent(S) for S in combinations(A, n + 1))


@dataclass(frozen=True)
class SupportClass:
    n: int
    t: int
    regime: str
    general_position: bool
    flat: bool  # A lies in an affine hyperplane

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "regime": self.regime,
            "general_position": self.general_position,
            "flat": self.flat,
        }


def classify(F: PolySystem) -> SupportClass:
    n = F.nvars
    A, t = union_support(F.polys)
    if t <= n:
        regime = T_LE_N
    elif t == n + 1:
        regime = T_EQ_N_PLUS_1
    elif t == n + 2:
        regime = T_EQ_N_PLUS_2
    else:
        regime = LARGER
    flat = affine_rank(A) < n if A else True
    if regime == T_EQ_N_PLUS_1:
        general = not flat
    elif regime == T_EQ_N_PLUS_2:
        general = in_general_position(A, n)
    else:
        general = False
    return SupportClass(n, t, regime, general, flat)


# results

@dataclass(frozen=True)
class CountResult:
    """Outcome of a valuation count.

    ``kind`` is ``"exact"`` (``value`` is 0 or 1, ``vector`` set when 1),
    ``"infinite"``, ``"zero_or_infinite"`` (support in a hyperplane and the
    emptiness question left open) or ``"bounded"`` (``candidates`` is a
    superset of the true valuation vectors and ``bound`` caps their number).
    """

    kind: str
    value: int | None = None
    vector: tuple | None = None
    candidates: tuple = ()
    bound: int | None = None
    superset: bool = False
    regions: tuple = ()  # positive-dimensional candidate regions
    notes: tuple = field(default=(), compare=False)

    @property
    def finite_candidates(self) -> bool:
        return not self.regions

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "exact":
            out["value"] = self.value
            if self.vector is not None:
                out["vector"] = [format_rational(x) for x in self.vector]
        if self.kind == "bounded":
            out["bound"] = self.bound
            out["superset"] = self.superset
            out["candidates"] = [[format_rational(x) for x in v] for v in self.candidates]
            if self.regions:
                out["regions"] = [r.to_json() for r in self.regions]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _normalize_system(F: PolySystem) -> PolySystem:
    """Divide every polynomial by the same monomial so the origin is in ``A``."""
    A, _ = union_support(F.polys)
    if not A:
        return F
    base = A[0]
    return PolySystem(tuple(f.divide_by_monomial(base) for f in F.polys), F.names)


def _row_kinds(G: PolySystem) -> tuple:
    zero = sum(1 for g in G.polys if g.is_zero())
    mono = sum(1 for g in G.polys if g.is_monomial())
    return zero, mono


def _solve_binomial_valuations(rows: Sequence[tuple], n: int) -> tuple:
    """Unique ``v`` with ``a_l . v = w_l`` for independent ``a_l``, via a Hermite transform.

    With ``U M`` upper triangular (``M`` has columns ``a_l``), the system
    ``M^T v = w`` becomes ``T^T z = w`` for ``z = U^{-T} v``, solved by
    forward substitution; then ``v = U^T z``.
    """
    vecs = [a for a, _ in rows]
    w = [as_rational(x) for _, x in rows]
    T = hermite_unimodular(vecs, n)
    M = transpose([list(a) for a in vecs])
    UM = [[sum(T.U[i][k] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    z = [Fraction(0)] * n
    for l in range(n):
        s = w[l] - sum(UM[k][l] * z[k] for k in range(l))
        z[l] = s / UM[l][l]
    Ut = transpose(T.U)
    return tuple(sum(Ut[i][k] * z[k] for k in range(n)) for i in range(n))


def count_small_support(F: PolySystem, p: int) -> CountResult:
    """Exact decision of ``#ord_p(Z*(F))`` in {0, 1, infinity} when ``t <= n+1``."""
    check_prime(p)
    cls = classify(F)
    if cls.regime not in (T_LE_N, T_EQ_N_PLUS_1):
        raise RegimeMismatch(f"count_small_support needs t <= n+1, got t={cls.t}, n={cls.n}")
    n = F.nvars
    if any(f.is_monomial() for f in F.polys):
        return CountResult("exact", 0, notes=("a monomial has no roots in the torus",))
    G0 = _normalize_system(F)
    A, t = union_support(G0.polys)
    if not A:
        return CountResult("infinite", notes=("every polynomial is zero",))
    origin = (0,) * n
    order = [a for a in A if a != origin] + [origin]
    G = gauss_jordan_system(G0, order)
    zero, mono = _row_kinds(G)
    if mono:
        return CountResult("exact", 0, notes=("elimination produced a monomial row",))
    d = affine_rank(A)
    if d < n:
        # A sits in a hyperplane: the roots form an empty set or contain a coordinate flat
        if t == d + 1:
            return CountResult(
                "infinite",
                notes=("support in a hyperplane; rows realizable, so the root set is a positive-dimensional family",),
            )
        return CountResult(
            "zero_or_infinite",
            notes=("support affinely dependent inside a hyperplane; emptiness not decided",),
        )
    live = [g for g in G.polys if not g.is_zero()]
    if len(live) < n:
        return CountResult("infinite", notes=("fewer than n independent rows",))
    rows = []
    for g in live:
        terms = dict(g.items())
        if len(terms) != 2 or origin not in terms:
            raise AssertionError("elimination did not yield a binomial system")
        (a,) = [e for e in terms if e != origin]
        rows.append((a, ord_p(-terms[origin] / terms[a], p)))
    v = _solve_binomial_valuations(rows, n)
    return CountResult("exact", 1, vector=v)


# the t = n+2 machinery

@dataclass(frozen=True)
class FijReduction:
    system: PolySystem
    i: int
    j: int
    order: tuple
    star: bool  # every row has support {a_k, a_i, a_j} with distinct k
    cases: tuple  # (row index, label) for rows violating the pattern

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "star": self.star,
            "cases": [{"row": r, "case": c} for r, c in self.cases],
        }


def fij_reduction(F: PolySystem, i: int, j: int) -> FijReduction:
    """Gauss-Jordan elimination with the monomial order ending in ``(a_i, a_j)``.

    ``i`` and ``j`` are 1-based indices into the sorted union support.  Rows
    that are not trinomials ``{a_k, a_i, a_j}`` are labelled: ``"a"`` for
    ``{a_k, a_i}``, ``"b"`` for ``{a_k, a_j}``, ``"c"`` for ``{a_i, a_j}``,
    and ``"zero"``, ``"monomial"`` or ``"other"`` otherwise.
    """
    A, t = union_support(F.polys)
    if i == j or not (1 <= i <= t and 1 <= j <= t):
        raise ValueError("need distinct indices into the union support")
    ai, aj = A[i - 1], A[j - 1]
    order = tuple([a for a in A if a not in (ai, aj)] + [ai, aj])
    G = gauss_jordan_system(F, order)
    cases = []
    pivots = []
    for r, g in enumerate(G.polys):
        S = set(g.support())
        others = S - {ai, aj}
        if not S:
            cases.append((r, "zero"))
        elif len(S) == 1:
            cases.append((r, "monomial"))
        elif len(others) == 1 and {ai, aj} <= S:
            pivots.append(next(iter(others)))
            continue
        elif len(others) == 1 and ai in S:
            cases.append((r, "a"))
        elif len(others) == 1 and aj in S:
            cases.append((r, "b"))
        elif not others:
            cases.append((r, "c"))
        else:
            cases.append((r, "other"))
    star = not cases and len(set(pivots)) == len(pivots)
    for r, c in cases:
        log.info("F^(%d,%d) row %d: degenerate case %s", i, j, r, c)
    return FijReduction(G, i, j, order, star, tuple(cases))


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple
    offset: Fraction

    def contains(self, v) -> bool:
        return sum(a * as_rational(x) for a, x in zip(self.normal, v)) == self.offset

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": format_rational(self.offset)}


def slab_hyperplanes(G: FijReduction | PolySystem, p: int, i: int | None = None,
                     j: int | None = None) -> list:
    """One hyperplane ``(a_i - a_j).v = ord_p(c_j / c_i)`` per row of ``F^(i,j)``.

    On that hyperplane the ``a_i`` and ``a_j`` terms of the row have equal
    valuation.
    """
    check_prime(p)
    if isinstance(G, FijReduction):
        if not G.star:
            raise ValueError("the reduction does not have the trinomial pattern")
        system, ai, aj = G.system, G.order[-2], G.order[-1]
    else:
        if i is None or j is None:
            raise ValueError("pass i and j with a bare system")
        A, _ = union_support(G.polys)
        system, ai, aj = G, A[i - 1], A[j - 1]
    normal = tuple(x - y for x, y in zip(ai, aj))
    out = []
    for g in system.polys:
        ci, cj = g.coeff(ai), g.coeff(aj)
        if ci == 0 or cj == 0:
            raise ValueError("row lacks one of the two distinguished monomials")
        out.append(Hyperplane(normal, ord_p(cj / ci, p)))
    return out


def assertion2_bound(n: int) -> int:
    """``max(2, floor(n/2)**n + n)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return max(2, (n // 2) ** n + n)


def _pair_cells(f: SparsePoly, p: int) -> list:
    """Equality/inequality data of the regions where two given terms of ``f`` tie at the minimum."""
    lifted = [(e, ord_p(c, p)) for e, c in f.items()]
    cells = []
    for a in range(len(lifted)):
        for b in range(a + 1, len(lifted)):
            (ea, wa), (eb, wb) = lifted[a], lifted[b]
            eq = (tuple(x - y for x, y in zip(ea, eb)), wb - wa)
            ineqs = tuple(
                (tuple(x - y for x, y in zip(ek, ea)), wa - wk)
                for k, (ek, wk) in enumerate(lifted)
                if k not in (a, b)
            )
            cells.append((eq, ineqs))
    return cells


def prevariety(polys: Sequence[SparsePoly], p: int, n: int) -> tuple:
    """Exact intersection of the tropical hypersurfaces of ``polys`` in Q^n.

    Returns ``(points, regions)``: the isolated points, sorted, and the
    positive-dimensional polyhedra (possibly overlapping) whose union is the
    rest of the intersection.
    """
    polys = sorted((f for f in polys if not f.is_zero()), key=len)
    if any(f.is_monomial() for f in polys):
        return [], []
    live = [Polyhedron(n)]
    points: set = set()
    for idx, f in enumerate(polys):
        nxt = []
        cells = _pair_cells(f, p)
        for P in live:
            for eq, ineqs in cells:
                an = analyze(P.meet([eq], ineqs))
                if an.dim == 0:
                    points.add(an.point)
                elif an.dim > 0:
                    nxt.append(an.polyhedron)
        rest = polys[idx + 1:]
        points = {q for q in points if all(trop_membership(g, p, q) for g in [f] + rest)}
        live = nxt
    points = {q for q in points if not any(_in_polyhedron(q, P) for P in live)}
    return sorted(points), live


def _in_polyhedron(q, P: Polyhedron) -> bool:
    dot = lambda a: sum(x * y for x, y in zip(a, q))  # noqa: E731
    return all(dot(a) == b for a, b in P.equalities) and all(dot(a) >= b for a, b in P.inequalities)


def candidate_polys(F: PolySystem) -> list:
    """``F`` together with the rows of every ``F^(i,j)``; all share F's roots."""
    _, t = union_support(F.polys)
    out = list(F.polys)
    for i in range(1, t + 1):
        for j in range(i + 1, t + 1):
            out.extend(g for g in fij_reduction(F, i, j).system.polys if not g.is_zero())
    seen, uniq = set(), []
    for g in out:
        key = _projective_key(g)
        if key not in seen:
            seen.add(key)
            uniq.append(g)
    return uniq


def _projective_key(g: SparsePoly):
    lead = next(iter(g.items()))[1] if not g.is_zero() else Fraction(1)
    return tuple((e, c / lead) for e, c in g.items())


def count_n_plus_2(F: PolySystem, p: int) -> CountResult:
    """Candidate superset of valuation vectors for ``t = n+2`` in general position.

    Candidates are the exact common points of the tropical hypersurfaces of
    ``F`` and of every ``F^(i,j)``; every such polynomial lies in the ideal
    of ``F``, so no true valuation vector is lost.  Plane curves are used
    when ``n = 2``.
    """
    check_prime(p)
    cls = classify(F)
    if cls.regime != T_EQ_N_PLUS_2:
        raise RegimeMismatch(f"count_n_plus_2 needs t = n+2, got t={cls.t}, n={cls.n}")
    if not cls.general_position:
        raise GeneralPositionFailure("n+1 points of the support lie on a hyperplane")
    n = F.nvars
    polys = candidate_polys(F)
    bound = assertion2_bound(n)
    if any(g.is_monomial() for g in polys):
        return CountResult("bounded", candidates=(), bound=bound, superset=True,
                           notes=("a reduction produced a monomial row; no roots",))
    if n == 2:
        report = intersect_many([plane_trop_curve(g, p) for g in polys])
        pts = tuple(q for q, _ in report.points)
        regions = tuple(_piece_region(pc) for pc in report.overlaps)
        return CountResult("bounded", candidates=pts, bound=bound, superset=True, regions=regions)
    pts, regions = prevariety(polys, p, n)
    return CountResult("bounded", candidates=tuple(pts), bound=bound, superset=True,
                       regions=tuple(regions))


def _piece_region(pc) -> Polyhedron:
    u = pc.direction
    normal = (-u[1], u[0])
    eq = (normal, normal[0] * pc.point[0] + normal[1] * pc.point[1])
    ineqs = []
    lo, hi = pc.interval
    along = lambda s: u[0] * (pc.point[0] + s * u[0]) + u[1] * (pc.point[1] + s * u[1])  # noqa: E731
    if lo is not None:
        ineqs.append((u, along(lo)))
    if hi is not None:
        ineqs.append(((-u[0], -u[1]), -along(hi)))
    return Polyhedron(2, (eq,), tuple(ineqs))


# extremal family

def extremal_family(n: int, p: int) -> PolySystem:
    """The system with supports ``{O, 2e1, e1+e2}, ..., {O, 2e1, e_{n-1}+e_n}, {O, 2e1, e_n}``.

    Its members are ``x1 x2 - p - x1^2``, ``x_l x_{l+1} - 1 - p^(2l-3) x1^2``
    for ``2 <= l < n``, and ``x_n - 1 - p^(2n-3) x1^2``; it has exactly
    ``n+1`` valuation vectors.
    """
    check_prime(p)
    if n < 2:
        raise ValueError("the family starts at n = 2")
    x = [SparsePoly.var(i, n) for i in range(n)]
    one = SparsePoly.const(1, n)
    polys = [x[0] * x[1] - p * one - x[0] ** 2]
    for l in range(2, n):
        polys.append(x[l - 1] * x[l] - one - p ** (2 * l - 3) * x[0] ** 2)
    polys.append(x[n - 1] - one - p ** (2 * n - 3) * x[0] ** 2)
    return PolySystem(tuple(polys), tuple(f"x{i + 1}" for i in range(n)))


# sum-product-sparse reduction

@dataclass(frozen=True)
class SpsExpression:
    """``sum_i prod_j f[i][j]`` with univariate integer factors of at most ``t`` terms."""

    k: int
    m: int
    t: int
    factors: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.factors)
        object.__setattr__(self, "factors", rows)
        if len(rows) != self.k or any(len(r) != self.m for r in rows):
            raise ValueError("factors must form a k x m array")
        for r in rows:
            for f in r:
                if f.nvars != 1:
                    raise ValueError("factors must be univariate")
                if f.is_zero():
                    raise ZeroPolynomial("SPS factors must be nonzero")
                if len(f) > self.t:
                    raise ValueError(f"factor {f} has more than t={self.t} terms")
                if any(c.denominator != 1 for _, c in f.items()):
                    raise ValueError("SPS factors must have integer coefficients")

    @classmethod
    def from_factors(cls, factors: Sequence[Sequence[SparsePoly]]) -> "SpsExpression":
        rows = tuple(tuple(r) for r in factors)
        t = max(len(f) for r in rows for f in r)
        return cls(len(rows), len(rows[0]), t, rows)

    def expand(self) -> SparsePoly:
        total = SparsePoly.zero(1)
        for r in self.factors:
            prod = SparsePoly.const(1)
            for f in r:
                prod = prod * f
            total = total + prod
        return total


def sps_reduce(e: SpsExpression) -> PolySystem:
    """The ``km+1`` polynomials ``y_ij - f_ij(x1)`` and ``sum_i prod_j y_ij``.

    Variables are ``x1`` followed by the ``y_ij`` in row-major order.
    """
    N = e.k * e.m + 1

    def y(i, j):
        return SparsePoly.var(1 + i * e.m + j, N)

    polys = []
    for i in range(e.k):
        for j in range(e.m):
            lifted = SparsePoly(N, {(a[0],) + (0,) * (N - 1): c for a, c in e.factors[i][j].items()})
            polys.append(y(i, j) - lifted)
    last = SparsePoly.zero(N)
    for i in range(e.k):
        prod = SparsePoly.const(1, N)
        for j in range(e.m):
            prod = prod * y(i, j)
        last = last + prod
    polys.append(last)
    names = ["x1"] + [f"y{i + 1}_{j + 1}" for i in range(e.k) for j in range(e.m)]
    return PolySystem(tuple(polys), tuple(names))


def sps_root_lift(e: SpsExpression, x1) -> tuple:
    """The root of the reduced system lying over a root ``x1`` of the SPS polynomial."""
    x1 = as_rational(x1)
    return (x1,) + tuple(f.evaluate([x1]) for r in e.factors for f in r)


def maybetrivial_bound(k: int, m: int, t: int) -> int:
    """``k(k-1)(2km(t-1)+1)/2``."""
    for v in (k, m, t):
        if int(v) != v or v < 1:
            raise ValueError("k, m, t must be positive integers")
    return k * (k - 1) * (2 * k * m * (t - 1) + 1) // 2


__all__ = [
    "T_LE_N",
    "T_EQ_N_PLUS_1",
    "T_EQ_N_PLUS_2",
    "LARGER",
    "SupportClass",
    "CountResult",
    "FijReduction",
    "Hyperplane",
    "SpsExpression",
    "affine_rank",
    "affinely_independent",
    "in_general_position",
    "classify",
    "count_small_support",
    "fij_reduction",
    "slab_hyperplanes",
    "assertion2_bound",
    "prevariety",
    "candidate_polys",
    "count_n_plus_2",
    "extremal_family",
    "sps_reduce",
    "sps_root_lift",
    "maybetrivial_bound",
]
