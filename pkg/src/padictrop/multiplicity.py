"""Root multiplicities of systems supported on n+2 points.

A system ``x^{a_l} - alpha_l - x^{a_{n+1}}/c`` (``l = 1..n``) has its roots
in bijection with the roots of one univariate equation in
``u = x^{a_{n+1}}``.  If ``b`` spans the kernel of the matrix with columns
``O, a_1, ..., a_{n+1}`` and a final row of ones, the identity
``prod (x^{a_i})^{b_i} = 1`` becomes

    u^{b_{n+1}} * prod_{i<=n} (c*alpha_i + u)^{b_i} = c^{b_1 + ... + b_n}

and multiplicities carry over.  Negative ``b_i`` are cleared into the
polynomial identity ``P(u) = C * Q(u)``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import GeneralPositionFailure, NullityNotOne, UnsupportedSupportSize, ZeroPolynomial
from .exact_arith import as_rational, format_rational
from .exact_linalg import det, integer_kernel
from .poly import PolySystem, SparsePoly, poly_divmod, poly_to_json, synthetic_divide
from .valuation_count import affinely_independent, in_general_position


def multiplicity_at(f: SparsePoly, zeta) -> int:
    """Largest ``k`` with ``(u - zeta)**k`` dividing ``f``."""
    if f.is_zero():
        raise ZeroPolynomial("every point is a root of the zero polynomial")
    zeta = as_rational(zeta)
    low = f.low_degree()
    if zeta == 0:
        return max(low, 0)
    if low:
        f = f.shift((-low,))
    k = 0
    while f.degree() > 0:
        q, r = synthetic_divide(f, zeta)
        if r != 0:
            break
        f, k = q, k + 1
    return k


def mult_bound(A: Sequence[Sequence[int]], n: int) -> int:
    """Maximal root multiplicity for supports of size ``n+1`` or ``n+2``."""
    A = [tuple(a) for a in A]
    if len(set(A)) != len(A):
        raise ValueError("support points must be distinct")
    if any(len(a) != n for a in A):
        raise ValueError("support points must lie in Z^n")
    if len(A) == n + 1:
        if not affinely_independent(A):
            raise GeneralPositionFailure("the n+1 support points lie on a hyperplane")
        return 1
    if len(A) == n + 2:
        if not in_general_position(A, n):
            raise GeneralPositionFailure("n+1 of the support points lie on a hyperplane")
        return n + 1
    raise UnsupportedSupportSize(f"support size {len(A)} is neither n+1 nor n+2 for n={n}")


@dataclass(frozen=True)
class UnivariateReduction:
    exponents: tuple  # a_1, ..., a_{n+1}
    alphas: tuple
    c: Fraction
    b: tuple  # kernel vector (b_0, ..., b_{n+1})
    C: Fraction
    shifts: tuple  # distinct shifts s (factor s + u, the shift 0 being u itself)
    powers: tuple  # merged exponent of each shift
    g_numerator: SparsePoly  # P: factors with positive exponent
    g_denominator_clearing: SparsePoly  # Q: factors with negative exponent, cleared

    @property
    def n(self) -> int:
        return len(self.alphas)

    @property
    def cleared(self) -> SparsePoly:
        """Monic ``P - C*Q``; unchanged when ``b`` is replaced by ``-b``."""
        return (self.g_numerator - self.C * self.g_denominator_clearing).monic()

    @property
    def poles(self) -> frozenset:
        return frozenset(-s for s in self.shifts)

    def is_admissible(self, u) -> bool:
        return as_rational(u) not in self.poles

    def g_value(self, u) -> Fraction:
        """``u^{b_{n+1}} prod (c alpha_i + u)^{b_i} - C`` at a non-pole ``u``."""
        u = as_rational(u)
        if not self.is_admissible(u):
            raise ValueError("u is a pole of g")
        val = Fraction(1)
        for s, e in zip(self.shifts, self.powers):
            val *= (s + u) ** e
        return val - self.C

    def roots(self) -> list:
        """Rational roots ``(u, multiplicity)`` of the cleared identity away from poles."""
        from .oracle import rational_roots

        return [(r, m) for r, m in rational_roots(self.cleared) if self.is_admissible(r)]

    def vandermonde_det(self, zeta) -> Fraction:
        """Determinant of ``[1/(s_i + zeta)^k]`` (rows ``k = 1..m``), ``m`` = number of shifts.

        A root of multiplicity above ``n+1`` would make the merged exponent
        vector a null vector of this matrix; the determinant is nonzero for
        distinct shifts and ``zeta`` away from the poles.
        """
        zeta = as_rational(zeta)
        m = len(self.shifts)
        return det([[1 / (s + zeta) ** k for s in self.shifts] for k in range(1, m + 1)])

    def to_json(self) -> dict:
        return {
            "b": list(self.b),
            "C": format_rational(self.C),
            "cleared_lhs": poly_to_json(self.g_numerator, ["u"]),
            "cleared_rhs": poly_to_json(self.C * self.g_denominator_clearing, ["u"]),
        }


def reduction_from_data(exponents: Sequence[Sequence[int]], alphas: Sequence, c) -> UnivariateReduction:
    """Reduction of ``(x^{a_l} - alpha_l - x^{a_{n+1}}/c)_l`` from its data.

    ``exponents`` lists ``a_1, ..., a_{n+1}``; the origin is the remaining
    support point.
    """
    exps = [tuple(int(x) for x in a) for a in exponents]
    alphas = tuple(as_rational(a) for a in alphas)
    c = as_rational(c)
    n = len(alphas)
    if len(exps) != n + 1 or any(len(a) != n for a in exps):
        raise ValueError("need n+1 exponent vectors in Z^n for n alphas")
    if c == 0:
        raise ValueError("c must be nonzero")
    cols = [(0,) * n] + exps
    Ahat = [[col[r] for col in cols] for r in range(n)] + [[1] * (n + 2)]
    try:
        b = tuple(integer_kernel(Ahat))
    except NullityNotOne as exc:
        raise GeneralPositionFailure(str(exc)) from exc
    if any(x == 0 for x in b):
        raise GeneralPositionFailure(f"kernel vector {list(b)} has a zero coordinate")
    merged: dict = {Fraction(0): b[n + 1]}
    for alpha, e in zip(alphas, b[1:n + 1]):
        s = c * alpha
        merged[s] = merged.get(s, 0) + e
    if any(e == 0 for e in merged.values()):
        raise GeneralPositionFailure("repeated alphas cancel in the merged exponents")
    shifts = tuple(sorted(merged))
    powers = tuple(merged[s] for s in shifts)
    u = SparsePoly.var(0, 1)
    P = SparsePoly.const(1)
    Q = SparsePoly.const(1)
    for s, e in zip(shifts, powers):
        factor = u + s
        if e > 0:
            P = P * factor**e
        else:
            Q = Q * factor ** (-e)
    C = c ** sum(b[1:n + 1])
    return UnivariateReduction(tuple(exps), alphas, c, b, C, shifts, powers, P, Q)


def univariate_reduction(F: PolySystem, top: Sequence[int] | None = None) -> UnivariateReduction:
    """Reduction of a system already in the form ``x^{a_l} - alpha_l - x^{a_{n+1}}/c``.

    ``top`` names ``a_{n+1}``; by default it is the non-constant exponent
    shared by every polynomial, preferring one whose coefficient is not 1.
    """
    n = F.nvars
    if len(F) != n:
        raise ValueError("need n polynomials in n variables")
    origin = (0,) * n
    if top is None:
        shared = set.intersection(*(set(f.support()) for f in F.polys)) - {origin}
        if n == 1:
            shared = set(F.polys[0].support()) - {origin}
        cands = sorted(shared, key=lambda e: (F.polys[0].coeff(e) == 1, e))
        if not cands:
            raise ValueError("no exponent is shared by all polynomials")
        if len(cands) > 1 and all(F.polys[0].coeff(e) == 1 for e in cands):
            raise ValueError("ambiguous top exponent; pass top explicitly")
        top = cands[0]
    top = tuple(top)
    inv_c = {-f.coeff(top) for f in F.polys}
    if len(inv_c) != 1 or 0 in inv_c:
        raise ValueError("the top monomial must carry the same nonzero coefficient everywhere")
    c = 1 / inv_c.pop()
    exps, alphas = [], []
    for f in F.polys:
        rest = {e: v for e, v in f.items() if e not in (top, origin)}
        if len(rest) != 1 or next(iter(rest.values())) != 1:
            raise ValueError(f"{f} is not of the form x^a - alpha - x^top/c")
        exps.append(next(iter(rest)))
        alphas.append(-f.coeff(origin))
    return reduction_from_data(exps + [top], alphas, c)


def normalized_system(exponents: Sequence[Sequence[int]], alphas: Sequence, c) -> PolySystem:
    """The polynomials ``x^{a_l} - alpha_l - x^{a_{n+1}}/c``."""
    exps = [tuple(a) for a in exponents]
    n = len(alphas)
    c = as_rational(c)
    polys = []
    for a, alpha in zip(exps[:n], alphas):
        polys.append(SparsePoly(n, {a: 1, (0,) * n: -as_rational(alpha), exps[n]: -1 / c}))
    return PolySystem(tuple(polys))


# sharpness

def cyclotomic(d: int) -> SparsePoly:
    """The d-th cyclotomic polynomial by exact division of ``u^d - 1``."""
    u = SparsePoly.var(0, 1)
    f = u**d - 1
    for e in range(1, d):
        if d % e == 0:
            f, r = poly_divmod(f, cyclotomic(e))
            assert r.is_zero()
    return f


def cyclotomic_identity(n: int) -> bool:
    """``prod over d | n+1 of Phi_d(u) == u^{n+1} - 1``, i.e. the product of ``u - zeta`` over all roots."""
    u = SparsePoly.var(0, 1)
    prod = SparsePoly.const(1)
    for d in range(1, n + 2):
        if (n + 1) % d == 0:
            prod = prod * cyclotomic(d)
    return prod == u ** (n + 1) - 1


def _roots_of_unity(n: int) -> list:
    """``zeta_i = exp(2 pi i (i-1)/(n+1))`` for ``i = 1..n+1``."""
    return [cmath.exp(2j * cmath.pi * k / (n + 1)) for k in range(n + 1)]


def sharpness_float_error(n: int) -> float:
    """Max coefficient error of ``g(u - zeta_{n+1}) - u^{n+1}`` in floating point."""
    z = _roots_of_unity(n)
    g = np.poly1d([1.0 + 0j, 0j])
    for i in range(n):
        g = g * np.poly1d([1.0 + 0j, z[n] - z[i]])
    g = g + 1
    shifted = np.poly1d([0j])
    base = np.poly1d([1.0 + 0j, -z[n]])
    for k, coeff in enumerate(g.coeffs[::-1]):
        shifted = shifted + coeff * base**k
    target = np.zeros(n + 2, dtype=complex)
    target[0] = 1
    got = np.zeros(n + 2, dtype=complex)
    got[n + 2 - len(shifted.coeffs):] = shifted.coeffs
    return float(np.max(np.abs(got - target)))


@dataclass(frozen=True)
class SharpnessReport:
    n: int
    system: str
    expected_multiplicity: int
    g: SparsePoly | None  # exact g for n = 1
    exact_multiplicity: int | None
    cyclotomic_identity: bool
    float_error: float  # approximate

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "system": self.system,
            "expected_multiplicity": self.expected_multiplicity,
            "g": poly_to_json(self.g, ["u"]) if self.g is not None else None,
            "exact_multiplicity": self.exact_multiplicity,
            "cyclotomic_identity": self.cyclotomic_identity,
            "float_error_approximate": self.float_error,
        }


def sharpness_system(n: int) -> SharpnessReport:
    """The family whose reduction is ``g(u) = u prod (u + zeta_{n+1} - zeta_i) + 1``.

    ``g(u - zeta_{n+1}) = u^{n+1}``, so ``-zeta_{n+1}`` is a root of
    multiplicity ``n+1``.  Exact for ``n = 1`` (``zeta_1 = 1``,
    ``zeta_2 = -1``); for larger ``n`` the roots of unity are irrational and
    the check is split into an exact cyclotomic identity and a floating one.
    """
    if n < 1:
        raise ValueError("n must be positive")
    desc = "; ".join(
        f"theta*x{i} = zeta{n + 1} - zeta{i} + 1/({'*'.join(f'x{k}' for k in range(1, n + 1))})"
        for i in range(1, n + 1)
    ) + f"  (theta^{n} = -1)"
    g = mult = None
    if n == 1:
        red = reduction_from_data([(1,), (-1,)], [2], -1)
        g = red.cleared
        mult = multiplicity_at(g, 1)
    return SharpnessReport(
        n=n,
        system=desc,
        expected_multiplicity=n + 1,
        g=g,
        exact_multiplicity=mult,
        cyclotomic_identity=cyclotomic_identity(n),
        float_error=sharpness_float_error(n),
    )
