"""p-adic tropical hypersurfaces and exact plane tropical curves.

Conventions are min-plus: ``v`` lies on Trop_p(f) when the minimum of
``a.v + ord_p(c_a)`` over the terms of ``f`` is attained at least twice.
A plane curve is stored cell by cell (bounded segments, rays, and whole
lines), every cell carrying a primitive integer direction and the lattice
length of its dual lower edge as multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .errors import MonomialInput, PrimeMismatch, ZeroPolynomial
from .exact_arith import as_rational, check_prime, format_rational, ord_p
from .newton import newton_polygon
from .poly import SparsePoly

Point = tuple


# lifted polytopes and membership

@dataclass(frozen=True)
class LiftedPolytope:
    prime: int
    points: tuple  # ((exponent vector), valuation)

    def __post_init__(self):
        exps = [e for e, _ in self.points]
        if len(set(exps)) != len(exps):
            raise ValueError("exponent vectors must be distinct")


def lifted_polytope(f: SparsePoly, p: int) -> LiftedPolytope:
    check_prime(p)
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polytope")
    return LiftedPolytope(p, tuple((e, ord_p(c, p)) for e, c in f.items()))


def _values(lifted, v) -> list:
    return [sum(a * x for a, x in zip(e, v)) + w for e, w in lifted]


def minimizing_terms(f: SparsePoly, p: int, v: Sequence) -> list:
    """Exponents of the terms attaining ``min(a.v + ord_p c_a)``."""
    v = [as_rational(x) for x in v]
    lifted = lifted_polytope(f, p).points
    vals = _values(lifted, v)
    m = min(vals)
    return [e for (e, _), val in zip(lifted, vals) if val == m]


def trop_membership(f: SparsePoly, p: int, v: Sequence) -> bool:
    if len(v) != f.nvars:
        raise ValueError("point has the wrong dimension")
    return len(minimizing_terms(f, p, v)) >= 2


# planar geometry

def _cross(u, w):
    return u[0] * w[1] - u[1] * w[0]


def _dot(u, w):
    return u[0] * w[0] + u[1] * w[1]


def _add(P, u, s=1):
    return (P[0] + s * u[0], P[1] + s * u[1])


def _sub(P, Q):
    return (P[0] - Q[0], P[1] - Q[1])


def primitive(u) -> tuple:
    g = gcd(int(u[0]), int(u[1]))
    return (int(u[0]) // g, int(u[1]) // g)


def _canonical_dir(u) -> tuple:
    u = primitive(u)
    return u if (u[0], u[1]) > (0, 0) else (-u[0], -u[1])


def _pt(P) -> Point:
    return (as_rational(P[0]), as_rational(P[1]))


@dataclass(frozen=True)
class Piece:
    """A closed one-dimensional convex subset of Q^2.

    ``kind`` is ``"segment"`` (from ``point`` to ``point + length*direction``),
    ``"ray"`` (from ``point`` along ``direction``) or ``"line"``.  Instances
    built through :meth:`make` are canonical, so equal sets compare equal.
    """

    kind: str
    point: Point
    direction: tuple
    length: Fraction | None = None

    @staticmethod
    def make(P, u, lo, hi) -> "Piece":
        """Canonical piece ``{P + s u : lo <= s <= hi}``; ``None`` bounds are infinite."""
        P = _pt(P)
        g = gcd(int(u[0]), int(u[1]))
        d = (int(u[0]) // g, int(u[1]) // g)
        if lo is not None:
            lo = as_rational(lo) * g
        if hi is not None:
            hi = as_rational(hi) * g
        if lo is not None and hi is not None:
            A, B = _add(P, d, lo), _add(P, d, hi)
            if B < A:
                A, B = B, A
            s = (B[0] - A[0]) / d[0] if d[0] else (B[1] - A[1]) / d[1]
            direction = d if s > 0 else (-d[0], -d[1])
            return Piece("segment", A, direction, abs(s))
        if lo is not None:
            return Piece("ray", _add(P, d, lo), d)
        if hi is not None:
            return Piece("ray", _add(P, d, hi), (-d[0], -d[1]))
        d = _canonical_dir(d)
        s = -P[0] / d[0] if d[0] else -P[1] / d[1]
        return Piece("line", _add(P, d, s), d)

    @property
    def interval(self) -> tuple:
        if self.kind == "segment":
            return Fraction(0), self.length
        if self.kind == "ray":
            return Fraction(0), None
        return None, None

    @property
    def endpoints(self) -> list:
        if self.kind == "segment":
            return [self.point, _add(self.point, self.direction, self.length)]
        if self.kind == "ray":
            return [self.point]
        return []

    def param(self, q) -> Fraction | None:
        """Parameter of ``q`` on the supporting line, or None if off the line."""
        d = _sub(q, self.point)
        if _cross(d, self.direction) != 0:
            return None
        return Fraction(_dot(d, self.direction)) / _dot(self.direction, self.direction)

    def contains(self, q) -> bool:
        s = self.param(_pt(q))
        return s is not None and _within(s, *self.interval)

    def in_relative_interior(self, q) -> bool:
        s = self.param(_pt(q))
        return s is not None and _within(s, *self.interval, strict=True)

    def sample(self) -> Point:
        """A point in the relative interior."""
        if self.kind == "segment":
            return _add(self.point, self.direction, self.length / 2)
        return _add(self.point, self.direction, 1)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "point": [format_rational(x) for x in self.point],
            "dir": list(self.direction),
        }
        if self.kind == "segment":
            out["end"] = [format_rational(x) for x in self.endpoints[1]]
        return out


def _within(s, lo, hi, strict=False) -> bool:
    if strict:
        return (lo is None or s > lo) and (hi is None or s < hi)
    return (lo is None or s >= lo) and (hi is None or s <= hi)


def _max_lo(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_hi(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class _Hit(NamedTuple):
    point: Point | None
    piece: Piece | None
    transversal: bool


def intersect_pieces(A: Piece, B: Piece) -> _Hit | None:
    u, w = A.direction, B.direction
    lo1, hi1 = A.interval
    lo2, hi2 = B.interval
    cr = _cross(u, w)
    if cr != 0:
        d = _sub(B.point, A.point)
        s = Fraction(_cross(d, w)) / cr
        r = Fraction(_cross(d, u)) / cr
        if not (_within(s, lo1, hi1) and _within(r, lo2, hi2)):
            return None
        q = _add(A.point, u, s)
        transversal = _within(s, lo1, hi1, strict=True) and _within(r, lo2, hi2, strict=True)
        return _Hit(q, None, transversal)
    s0 = A.param(B.point)
    if s0 is None:
        return None
    k = Fraction(_dot(w, u)) / _dot(u, u)
    ends = [None if lo2 is None else s0 + lo2 * k, None if hi2 is None else s0 + hi2 * k]
    if k < 0:
        ends.reverse()
    lo, hi = _max_lo(lo1, ends[0]), _min_hi(hi1, ends[1])
    if lo is not None and hi is not None:
        if lo > hi:
            return None
        if lo == hi:
            return _Hit(_add(A.point, u, lo), None, False)
    return _Hit(None, Piece.make(A.point, u, lo, hi), False)


# plane curves

@dataclass(frozen=True)
class TropCurve:
    vertices: tuple = ()
    segments: tuple = ()  # (start index, end index, primitive direction, multiplicity)
    rays: tuple = ()  # (base index, primitive direction, multiplicity)
    lines: tuple = ()  # (point, primitive direction, multiplicity)
    prime: int | None = field(default=None, compare=False)

    def pieces(self) -> list:
        """``(Piece, multiplicity)`` for every cell."""
        out = []
        for i, j, d, m in self.segments:
            P, Q = self.vertices[i], self.vertices[j]
            s = (Q[0] - P[0]) / d[0] if d[0] else (Q[1] - P[1]) / d[1]
            out.append((Piece.make(P, d, 0, s), m))
        for i, d, m in self.rays:
            out.append((Piece.make(self.vertices[i], d, 0, None), m))
        for P, d, m in self.lines:
            out.append((Piece.make(P, d, None, None), m))
        return out

    def is_empty(self) -> bool:
        return not (self.segments or self.rays or self.lines)

    def contains(self, v) -> bool:
        return any(pc.contains(v) for pc, _ in self.pieces())

    def balancing_defects(self) -> dict:
        """Vertex index -> nonzero weighted direction sum (empty when balanced)."""
        sums = {i: [0, 0] for i in range(len(self.vertices))}
        for i, j, d, m in self.segments:
            sums[i][0] += m * d[0]
            sums[i][1] += m * d[1]
            sums[j][0] -= m * d[0]
            sums[j][1] -= m * d[1]
        for i, d, m in self.rays:
            sums[i][0] += m * d[0]
            sums[i][1] += m * d[1]
        return {i: tuple(s) for i, s in sums.items() if s != [0, 0]}

    def is_balanced(self) -> bool:
        return not self.balancing_defects()

    def to_json(self) -> dict:
        fmt = lambda P: [format_rational(x) for x in P]  # noqa: E731
        return {
            "prime": self.prime,
            "vertices": [fmt(P) for P in self.vertices],
            "segments": [{"ends": [i, j], "dir": list(d), "mult": m} for i, j, d, m in self.segments],
            "rays": [{"base": i, "dir": list(d), "mult": m} for i, d, m in self.rays],
            "lines": [{"point": fmt(P), "dir": list(d), "mult": m} for P, d, m in self.lines],
        }


def _pair_region(lifted, i, j):
    """Piece of the line where terms i and j tie and are minimal, or None."""
    (ai, wi), (aj, wj) = lifted[i], lifted[j]
    d = (ai[0] - aj[0], ai[1] - aj[1])
    rhs = wj - wi
    v0 = (Fraction(rhs) / d[0], Fraction(0)) if d[0] else (Fraction(0), Fraction(rhs) / d[1])
    u = primitive((-d[1], d[0]))
    lo = hi = None
    for k, (ak, wk) in enumerate(lifted):
        if k in (i, j):
            continue
        diff = (ak[0] - ai[0], ak[1] - ai[1])
        alpha = _dot(diff, u)
        beta = _dot(diff, v0) + wk - wi
        if alpha > 0:
            lo = _max_lo(lo, -beta / alpha)
        elif alpha < 0:
            hi = _min_hi(hi, -beta / alpha)
        elif beta < 0:
            return None
    if lo is not None and hi is not None and lo >= hi:
        return None
    return Piece.make(v0, u, lo, hi)


def _cell_multiplicity(lifted, piece: Piece) -> int:
    q = piece.sample()
    vals = _values(lifted, q)
    m = min(vals)
    tied = [e for (e, _), val in zip(lifted, vals) if val == m]
    normal = (-piece.direction[1], piece.direction[0])
    tied.sort(key=lambda e: _dot(e, normal))
    a, b = tied[0], tied[-1]
    return gcd(b[0] - a[0], b[1] - a[1])


def plane_trop_curve(f: SparsePoly, p: int) -> TropCurve:
    """Exact cell structure of Trop_p(f) for a bivariate Laurent polynomial."""
    if f.nvars != 2:
        raise ValueError("plane curves need a bivariate polynomial")
    lifted = list(lifted_polytope(f, p).points)
    pieces = {}
    for i in range(len(lifted)):
        for j in range(i + 1, len(lifted)):
            pc = _pair_region(lifted, i, j)
            if pc is not None and pc not in pieces:
                pieces[pc] = _cell_multiplicity(lifted, pc)
    verts = sorted({P for pc in pieces for P in pc.endpoints})
    index = {P: k for k, P in enumerate(verts)}
    segments, rays, lines = [], [], []
    for pc, m in sorted(pieces.items(), key=lambda kv: _piece_key(kv[0])):
        if pc.kind == "segment":
            segments.append((index[pc.point], index[pc.endpoints[1]], pc.direction, m))
        elif pc.kind == "ray":
            rays.append((index[pc.point], pc.direction, m))
        else:
            lines.append((pc.point, pc.direction, m))
    return TropCurve(tuple(verts), tuple(segments), tuple(rays), tuple(lines), prime=p)


def _piece_key(pc: Piece):
    return (pc.kind, pc.point, pc.direction, pc.length if pc.length is not None else -1)


# intersections

@dataclass(frozen=True)
class IntersectionReport:
    points: tuple  # ((x, y), transversal)
    overlaps: tuple  # Pieces of positive length common to all curves
    tropically_generic: bool
    superset: bool = True

    @property
    def point_set(self) -> set:
        return {q for q, _ in self.points}

    def to_json(self) -> dict:
        return {
            "points": [
                {"point": [format_rational(x) for x in q], "transversal": t} for q, t in self.points
            ],
            "overlaps": [pc.to_json() for pc in self.overlaps],
            "tropically_generic": self.tropically_generic,
            "superset": self.superset,
        }


def _local_direction(curve: TropCurve, q):
    """Direction of the unique cell having ``q`` in its relative interior, else None."""
    hits = [pc for pc, _ in curve.pieces() if pc.contains(q)]
    if len(hits) == 1 and hits[0].in_relative_interior(q):
        return hits[0].direction
    return None


def _is_transversal(curves: Sequence[TropCurve], q) -> bool:
    dirs = [_local_direction(c, q) for c in curves]
    for a in range(len(dirs)):
        for b in range(a + 1, len(dirs)):
            if dirs[a] is not None and dirs[b] is not None and _cross(dirs[a], dirs[b]) != 0:
                return True
    return False


def _check_primes(curves: Sequence[TropCurve]):
    primes = {c.prime for c in curves if c.prime is not None}
    if len(primes) > 1:
        raise PrimeMismatch(f"curves over different primes {sorted(primes)}")


def _finish(curves, pieces: Iterable[Piece], points: Iterable[Point], tag) -> IntersectionReport:
    overlaps = sorted(set(pieces), key=_piece_key)
    pts = sorted({q for q in points if not any(pc.contains(q) for pc in overlaps)})
    tagged = tuple((q, tag(q)) for q in pts)
    generic = not overlaps and all(t for _, t in tagged)
    return IntersectionReport(tagged, tuple(overlaps), generic)


def intersect_plane_curves(C1: TropCurve, C2: TropCurve) -> IntersectionReport:
    """All points and positive-length overlaps of two plane curves.

    A point is transversal when it lies in the relative interiors of a cell
    of each curve and the two cell directions are independent.
    """
    _check_primes([C1, C2])
    pieces, points, tags = [], [], {}
    for A, _ in C1.pieces():
        for B, _ in C2.pieces():
            hit = intersect_pieces(A, B)
            if hit is None:
                continue
            if hit.piece is not None:
                pieces.append(hit.piece)
            else:
                points.append(hit.point)
                tags[hit.point] = tags.get(hit.point, False) or (
                    hit.transversal and _cross(A.direction, B.direction) != 0
                )
    return _finish([C1, C2], pieces, points, lambda q: tags.get(q, False))


def intersect_many(curves: Sequence[TropCurve]) -> IntersectionReport:
    """Common intersection of several curves (a candidate superset of valuations).

    A surviving point is tagged transversal when some pair of the curves
    crosses transversally there.
    """
    curves = list(curves)
    if len(curves) < 2:
        raise ValueError("need at least two curves")
    _check_primes(curves)
    pieces = [pc for pc, _ in curves[0].pieces()]
    points: list = []
    for C in curves[1:]:
        cells = [pc for pc, _ in C.pieces()]
        new_pieces, new_points = [], []
        for A in pieces:
            for B in cells:
                hit = intersect_pieces(A, B)
                if hit is None:
                    continue
                if hit.piece is not None:
                    new_pieces.append(hit.piece)
                else:
                    new_points.append(hit.point)
        new_points += [q for q in points if any(B.contains(q) for B in cells)]
        pieces = sorted(set(new_pieces), key=_piece_key)
        points = [q for q in set(new_points) if not any(pc.contains(q) for pc in pieces)]
        if not pieces and not points:
            break
    return _finish(curves, pieces, points, lambda q: _is_transversal(curves, q))


# the cell census of y - g(x)

@dataclass(frozen=True)
class VertCensus:
    t: int
    t_prime: int
    N: int
    i: int
    half_space_a: tuple  # (base point, direction) of the unbounded graph piece to the left
    vertical: tuple  # ((base point), multiplicity) per lower edge of Newt_p(g)
    strips: tuple  # (start, end) bounded graph pieces
    half_space_d: tuple  # (base point, direction) of the closed piece to the right

    def counts(self) -> dict:
        return {"a": 1, "b": len(self.vertical), "c": len(self.strips), "d": 1}

    def pieces(self) -> list:
        """The census as pieces in the (x, y_i) plane, with multiplicities."""
        out = [(Piece.make(self.half_space_a[0], self.half_space_a[1], 0, None), 1)]
        out += [(Piece.make(P, (0, 1), 0, None), m) for P, m in self.vertical]
        out += [(_segment(P, Q), 1) for P, Q in self.strips]
        out.append((Piece.make(self.half_space_d[0], self.half_space_d[1], 0, None), 1))
        return out


def _segment(P, Q) -> Piece:
    d = _sub(Q, P)
    den = 1
    for x in d:
        den = den * x.denominator // gcd(den, x.denominator)
    u = primitive((int(d[0] * den), int(d[1] * den)))
    s = d[0] / u[0] if u[0] else d[1] / u[1]
    return Piece.make(P, u, 0, s)


def vert_decomposition(g: SparsePoly, p: int, i: int = 1, N: int = 1) -> VertCensus:
    """Cells of Trop_p(y_i - g(x)) in the (x, y_i) plane.

    For ``N > 1`` each cell is additionally a product with the remaining
    ``N - 1`` coordinates.
    """
    if g.nvars != 1:
        raise ValueError("g must be univariate")
    if g.is_zero():
        raise ZeroPolynomial("g is zero")
    if g.is_monomial():
        raise MonomialInput("g must have at least two terms")
    if not 1 <= i <= N:
        raise ValueError("need 1 <= i <= N")
    P = newton_polygon(g, p)
    lifted = [(e[0], ord_p(c, p)) for e, c in g.items()]

    def G(v):
        return min(a * v + w for a, w in lifted)

    edges = sorted(P.edges, key=lambda e: -e.slope)
    breaks = [(-e.slope, e.hlen) for e in edges]
    verts = [(b, G(b)) for b, _ in breaks]
    a_max, a_min = P.span[1], P.span[0]
    return VertCensus(
        t=len(g),
        t_prime=len(P.edges),
        N=N,
        i=i,
        half_space_a=(verts[0], primitive((-1, -a_max))),
        vertical=tuple((v, h) for v, (_, h) in zip(verts, breaks)),
        strips=tuple(zip(verts, verts[1:])),
        half_space_d=(verts[-1], primitive((1, a_min))),
    )
