"""Exact linear algebra over Q and Z.

Gauss-Jordan elimination of polynomial systems works on the coefficient
matrix whose rows are the polynomials and whose columns are the monomials of
the union support, in a caller-chosen order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import NullityNotOne
from .exact_arith import as_rational, format_rational, parse_rational
from .poly import PolySystem, SparsePoly


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        data = tuple(tuple(as_rational(x) for x in r) for r in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        return cls(len(data), ncols, data)

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(x) for x in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RationalMatrix":
        m = cls.from_rows([[parse_rational(x) for x in r] for r in obj["entries"]])
        if (m.rows, m.cols) != (obj.get("rows", m.rows), obj.get("cols", m.cols)):
            raise ValueError("declared dimensions disagree with entries")
        return m


def _as_rows(M) -> list:
    if isinstance(M, RationalMatrix):
        return M.tolist()
    return [[as_rational(x) for x in r] for r in M]


def rref(M) -> tuple:
    """Reduced row echelon form and pivot columns.

    Returns ``(E, pivots)`` where ``E`` is a :class:`RationalMatrix`.
    """
    A = _as_rows(M)
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        lead = A[r][c]
        A[r] = [x / lead for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return RationalMatrix.from_rows(A) if A else RationalMatrix(0, 0, ()), pivots


def is_rref(M) -> bool:
    A = _as_rows(M)
    last = -1
    seen_zero = False
    for row in A:
        nz = [j for j, x in enumerate(row) if x != 0]
        if not nz:
            seen_zero = True
            continue
        j = nz[0]
        if seen_zero or row[j] != 1 or j <= last:
            return False
        if any(other[j] != 0 for other in A if other is not row):
            return False
        last = j
    return True


def coefficient_matrix(F: Sequence[SparsePoly], order: Sequence[tuple]) -> list:
    order = [tuple(a) for a in order]
    index = {a: i for i, a in enumerate(order)}
    if len(index) != len(order):
        raise ValueError("monomial order repeats an exponent")
    rows = []
    for f in F:
        row = [Fraction(0)] * len(order)
        for e, c in f.items():
            if e not in index:
                raise ValueError(f"exponent {e} is missing from the monomial order")
            row[index[e]] = c
        rows.append(row)
    return rows


def gauss_jordan_system(F: PolySystem, order: Sequence[tuple] | None = None) -> PolySystem:
    """Replace ``F`` by the polynomials read off the RREF of its coefficient matrix.

    ``order`` lists the exponents of the union support, leftmost first; it
    defaults to lexicographically descending order.  Rows that reduce to 0
    are kept as zero polynomials so the output has ``len(F)`` entries.
    """
    if order is None:
        order = sorted(F.A, reverse=True)
    order = [tuple(a) for a in order]
    if not set(F.A) <= set(order):
        raise ValueError("order must cover the union support")
    E, _ = rref(coefficient_matrix(F.polys, order))
    out = [SparsePoly(F.nvars, {a: c for a, c in zip(order, row) if c}) for row in E.entries]
    return PolySystem(tuple(out), F.names)


# integer matrices

def _xgcd(a: int, b: int) -> tuple:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A, B) -> list:
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def mat_vec(A, v) -> list:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A) -> list:
    return [list(r) for r in zip(*A)]


def det(A) -> Fraction:
    """Determinant by fraction-exact elimination."""
    M = _as_rows(A)
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        k = next((i for i in range(c, n) if M[i][c] != 0), None)
        if k is None:
            return Fraction(0)
        if k != c:
            M[c], M[k] = M[k], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


def rank(A) -> int:
    if not A or not len(A[0]):
        return 0
    return len(rref(A)[1])


@dataclass(frozen=True)
class UnimodularTransform:
    U: tuple
    U_inverse: tuple

    def __post_init__(self):
        U = tuple(tuple(int(x) for x in r) for r in self.U)
        Ui = tuple(tuple(int(x) for x in r) for r in self.U_inverse)
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "U_inverse", Ui)
        assert mat_mul(U, Ui) == identity(len(U)), "U_inverse is not the inverse of U"

    @property
    def n(self) -> int:
        return len(self.U)

    def inverse(self) -> "UnimodularTransform":
        return UnimodularTransform(self.U_inverse, self.U)

    def apply(self, v: Sequence[int]) -> tuple:
        return tuple(mat_vec(self.U, v))

    def valuation_image(self, v: Sequence) -> tuple:
        """Valuation vector of the root of the transformed polynomial.

        If ``x`` is a root of ``f`` with valuation ``v``, the corresponding
        root of ``monomial_change(f, T)`` has valuation ``U^{-T} v``.
        """
        Uit = transpose(self.U_inverse)
        return tuple(sum(a * as_rational(x) for a, x in zip(row, v)) for row in Uit)


def hermite_unimodular(vectors: Sequence[Sequence[int]], n: int | None = None) -> UnimodularTransform:
    """Unimodular ``U`` with ``U a_i`` supported in its first ``i`` coordinates.

    Column ``i`` of the matrix ``[a_1 ... a_k]`` is cleared below row ``i`` by
    extended-Euclid row operations; entries that are already zero are left
    alone, so an already-triangular input yields the identity.
    """
    vecs = [list(map(int, v)) for v in vectors]
    if n is None:
        if not vecs:
            raise ValueError("dimension unknown for an empty vector list")
        n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise ValueError("vectors must all have length n")
    M = transpose(vecs) if vecs else [[] for _ in range(n)]
    U = identity(n)
    Ui = identity(n)
    for j in range(min(len(vecs), n)):
        for s in range(j + 1, n):
            a, b = M[j][j], M[s][j]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            # [[x, y], [-b/g, a/g]] has determinant 1; its inverse is [[a/g, -y], [b/g, x]]
            for A in (M, U):
                rj, rs = A[j], A[s]
                A[j], A[s] = (
                    [x * u + y * v for u, v in zip(rj, rs)],
                    [-bg * u + ag * v for u, v in zip(rj, rs)],
                )
            for row in Ui:
                cj, cs = row[j], row[s]
                row[j], row[s] = ag * cj + bg * cs, -y * cj + x * cs
    return UnimodularTransform(tuple(map(tuple, U)), tuple(map(tuple, Ui)))


def monomial_change(f: SparsePoly, T: UnimodularTransform) -> SparsePoly:
    """Map every exponent vector ``a`` to ``U a``; coefficients are unchanged."""
    if T.n != f.nvars:
        raise ValueError("transform and polynomial dimensions differ")
    return SparsePoly(f.nvars, {T.apply(e): c for e, c in f.items()})


def apply_monomial_map(x: Sequence, M: Sequence[Sequence[int]]) -> tuple:
    """``x**M``: coordinate ``j`` is ``prod_i x_i**M[i][j]``."""
    x = [as_rational(v) for v in x]
    n = len(M)
    out = []
    for j in range(len(M[0])):
        val = Fraction(1)
        for i in range(n):
            val *= x[i] ** M[i][j]
        out.append(val)
    return tuple(out)


def nullspace(M) -> list:
    """Basis of the right kernel over Q."""
    E, piv = rref(M)
    ncols = len(_as_rows(M)[0])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(piv):
            v[pc] = -E.entries[r][f]
        basis.append(v)
    return basis


def primitive_integer(v: Sequence) -> list:
    """Scale a rational vector to a primitive integer vector with first nonzero entry > 0."""
    v = [as_rational(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return w
    w = [x // g for x in w]
    first = next(x for x in w if x)
    return [-x for x in w] if first < 0 else w


def integer_kernel(M) -> list:
    """Primitive integer generator of a one-dimensional right kernel."""
    basis = nullspace(M)
    if len(basis) != 1:
        raise NullityNotOne(f"kernel has dimension {len(basis)}, expected 1")
    return primitive_integer(basis[0])


def solve(A, b) -> list | None:
    """Some rational solution of ``A v = b`` (free variables set to 0), or None."""
    rows = [list(r) + [as_rational(x)] for r, x in zip(_as_rows(A), b)]
    E, piv = rref(rows)
    ncols = len(rows[0]) - 1
    if ncols in piv:
        return None
    v = [Fraction(0)] * ncols
    for r, pc in enumerate(piv):
        v[pc] = E.entries[r][-1]
    return v
