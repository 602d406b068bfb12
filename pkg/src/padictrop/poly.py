"""Sparse multivariate Laurent polynomials over the rationals.

A :class:`SparsePoly` is an immutable map from integer exponent vectors to
nonzero :class:`~fractions.Fraction` coefficients, kept sorted
lexicographically by exponent so that iteration and serialization are
deterministic.

>>> x, y = variables(2)
>>> f = x**3 - y - 1
>>> sorted(f.support())
[(0, 0), (0, 1), (3, 0)]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ZeroPolynomial, ZeroToNegativePower
from .exact_arith import as_rational, format_rational, parse_rational

Monomial = tuple


class SparsePoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, Fraction] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} has length {len(exps)}, expected {nvars}")
            c = as_rational(c)
            acc[exps] = acc.get(exps, Fraction(0)) + c
        self.nvars = nvars
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e] != 0}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "SparsePoly":
        # terms: already nonzero Fractions; sorted here
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = {e: terms[e] for e in sorted(terms)}
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, nvars: int = 1) -> "SparsePoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, c, nvars: int = 1) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "SparsePoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "SparsePoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, low: int = 0) -> "SparsePoly":
        """Univariate polynomial from ascending coefficients starting at ``x**low``."""
        return cls(1, {(low + i,): c for i, c in enumerate(coeffs) if c != 0})

    # container protocol

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[tuple]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePoly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, tuple(self._terms.items())))
        return self._hash

    # arithmetic

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SparsePoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return SparsePoly.zero(self.nvars)
            return SparsePoly._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple, Fraction] = {}
        if self.nvars == 1:
            for (a,), c in self._terms.items():
                for (b,), d in other._terms.items():
                    k = (a + b,)
                    out[k] = out.get(k, 0) + c * d
        else:
            for a, c in self._terms.items():
                for b, d in other._terms.items():
                    k = tuple(x + y for x, y in zip(a, b))
                    out[k] = out.get(k, 0) + c * d
        return SparsePoly._raw(self.nvars, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = SparsePoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exps: Sequence[int]) -> "SparsePoly":
        """Multiply by the monomial ``x**exps``."""
        exps = tuple(exps)
        return SparsePoly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
        )

    def divide_by_monomial(self, exps: Sequence[int], c=1) -> "SparsePoly":
        """Divide by the monomial term ``c * x**exps`` (exact in the Laurent ring)."""
        c = as_rational(c)
        if c == 0:
            raise ZeroDivisionError("division by the zero monomial")
        return self.shift([-e for e in exps]) * (1 / c)

    def evaluate(self, point: Sequence) -> Fraction:
        point = [as_rational(v) for v in point]
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for v, k in zip(point, e):
                if k < 0 and v == 0:
                    raise ZeroToNegativePower("zero raised to a negative power")
                if k:
                    term *= v**k
            total += term
        return total

    def substitute_monomials(self, images: Sequence["SparsePoly"]) -> "SparsePoly":
        """Replace variable ``i`` by ``images[i]``; negative powers need monomial images."""
        nv = images[0].nvars
        out = SparsePoly.zero(nv)
        for e, c in self._terms.items():
            term = SparsePoly.const(c, nv)
            for img, k in zip(images, e):
                if k > 0:
                    term = term * img**k
                elif k < 0:
                    if not img.is_monomial():
                        raise ZeroToNegativePower("negative power of a non-monomial")
                    (ie, ic), = img.items()
                    term = term * SparsePoly.monomial([x * k for x in ie], ic ** k)
            out = out + term
        return out

    # univariate helpers

    def _require_univariate(self):
        if self.nvars != 1:
            raise ValueError("operation needs a univariate polynomial")

    def degree(self) -> int:
        self._require_univariate()
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(e[0] for e in self._terms)

    def low_degree(self) -> int:
        self._require_univariate()
        if not self._terms:
            raise ZeroPolynomial("low degree of the zero polynomial")
        return min(e[0] for e in self._terms)

    def leading_coeff(self) -> Fraction:
        return self._terms[(self.degree(),)]

    def dense(self) -> list:
        """Ascending coefficient list for a polynomial with nonnegative exponents."""
        self._require_univariate()
        if not self._terms:
            return []
        if self.low_degree() < 0:
            raise ValueError("negative exponents have no dense form")
        out = [Fraction(0)] * (self.degree() + 1)
        for (a,), c in self._terms.items():
            out[a] = c
        return out

    def derivative(self, i: int = 0) -> "SparsePoly":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return SparsePoly._raw(self.nvars, out)

    def monic(self) -> "SparsePoly":
        return self * (1 / self.leading_coeff())

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or default_names(self.nvars)
        parts = []
        for e, c in self._terms.items():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SparsePoly({self.to_str()})"


def default_names(n: int) -> list:
    return ["x"] if n == 1 else [f"x{i + 1}" for i in range(n)]


def variables(n: int) -> tuple:
    return tuple(SparsePoly.var(i, n) for i in range(n))


def support(f: SparsePoly) -> frozenset:
    return f.support()


def union_support(polys: Iterable[SparsePoly]) -> tuple:
    """Return ``(A, t)`` with ``A`` the lexicographically sorted union of supports."""
    A = set()
    for f in polys:
        A |= f.support()
    A = sorted(A)
    return A, len(A)


# univariate division and gcd over Q

def poly_divmod(f: SparsePoly, g: SparsePoly) -> tuple:
    f._require_univariate()
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    fd, gd = f.dense(), g.dense()
    if len(fd) < len(gd):
        return SparsePoly.zero(1), f
    lead = gd[-1]
    q = [Fraction(0)] * (len(fd) - len(gd) + 1)
    r = list(fd)
    for k in range(len(q) - 1, -1, -1):
        coef = r[k + len(gd) - 1] / lead
        q[k] = coef
        if coef:
            for j, gc in enumerate(gd):
                if gc:
                    r[k + j] -= coef * gc
    return SparsePoly.from_coeffs(q), SparsePoly.from_coeffs(r[: len(gd) - 1])


def poly_gcd(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Monic gcd over Q (zero only if both inputs are zero)."""
    while not g.is_zero():
        _, r = poly_divmod(f, g)
        f, g = g, r
    return f.monic() if not f.is_zero() else f


def synthetic_divide(f: SparsePoly, r) -> tuple:
    """Divide by ``(x - r)``; returns ``(quotient, remainder)``."""
    r = as_rational(r)
    coeffs = f.dense()
    if not coeffs:
        return SparsePoly.zero(1), Fraction(0)
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for k in range(len(coeffs) - 1, 0, -1):
        acc = acc * r + coeffs[k]
        out[k - 1] = acc
    rem = acc * r + coeffs[0]
    return SparsePoly.from_coeffs(out), rem


@dataclass(frozen=True)
class PolySystem:
    """An ordered list of polynomials in a shared set of variables."""

    polys: tuple
    names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        polys = tuple(self.polys)
        if not polys:
            raise ValueError("a system needs at least one polynomial")
        nv = polys[0].nvars
        if any(f.nvars != nv for f in polys):
            raise ValueError("all polynomials must share the variable count")
        object.__setattr__(self, "polys", polys)
        if not self.names:
            object.__setattr__(self, "names", tuple(default_names(nv)))

    @property
    def nvars(self) -> int:
        return self.polys[0].nvars

    @property
    def supports(self) -> list:
        return [f.support() for f in self.polys]

    @property
    def A(self) -> list:
        return union_support(self.polys)[0]

    @property
    def t(self) -> int:
        return union_support(self.polys)[1]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def evaluate(self, point) -> list:
        return [f.evaluate(point) for f in self.polys]


# JSON

def poly_to_json(f: SparsePoly, names: Sequence[str] | None = None) -> dict:
    names = list(names or default_names(f.nvars))
    return {
        "vars": names,
        "terms": [{"coeff": format_rational(c), "exps": list(e)} for e, c in f.items()],
    }


def poly_from_json(obj: dict) -> tuple:
    names = list(obj["vars"])
    terms = {}
    for term in obj["terms"]:
        e = tuple(int(x) for x in term["exps"])
        terms[e] = terms.get(e, Fraction(0)) + parse_rational(term["coeff"])
    return SparsePoly(len(names), terms), names


def system_to_json(F: PolySystem) -> dict:
    return {"vars": list(F.names), "polys": [poly_to_json(f, F.names)["terms"] for f in F]}


def system_from_json(obj) -> PolySystem:
    """Accepts ``{"vars": [...], "polys": [[term, ...], ...]}`` or a list of poly objects."""
    if isinstance(obj, list):
        parsed = [poly_from_json(o) for o in obj]
        return PolySystem(tuple(f for f, _ in parsed), tuple(parsed[0][1]))
    names = obj["vars"]
    polys = tuple(poly_from_json({"vars": names, "terms": terms})[0] for terms in obj["polys"])
    return PolySystem(polys, tuple(names))
