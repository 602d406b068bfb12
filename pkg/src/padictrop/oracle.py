"""Independent ground truth for the valuation machinery.

Planted roots are expanded directly, rational roots come from divisor
enumeration filtered modulo small primes, and Z_p roots are found by
lifting residues and certified with the Hensel inequality
``ord f(x) > 2 ord f'(x)``.  None of these consult Newton polygons; only
the elimination used for the extremal family's true valuations does.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Sequence

import numpy as np
from sympy import factorint

from .errors import PrecisionTooLow, TooLarge, ZeroPolynomial
from .exact_arith import INF, as_rational, check_prime
from .multiplicity import multiplicity_at
from .poly import SparsePoly, poly_divmod, poly_gcd

RESIDUE_LIMIT = 10**7
SHUB_SMALE_MAX_N = 14


@dataclass(frozen=True)
class PlantedPoly:
    f: SparsePoly
    roots: tuple  # ((root, multiplicity), ...) sorted by root

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)


def _merge_roots(roots) -> tuple:
    acc: Counter = Counter()
    for r, m in roots:
        if int(m) != m or m < 1:
            raise ValueError("multiplicities must be positive integers")
        acc[as_rational(r)] += int(m)
    return tuple(sorted(acc.items()))


def poly_from_roots(roots: Sequence[tuple], scale=1) -> PlantedPoly:
    """``scale * prod (x - r)**m`` expanded exactly; ``roots`` holds ``(r, m)`` pairs."""
    scale = as_rational(scale)
    if scale == 0:
        raise ValueError("scale must be nonzero")
    merged = _merge_roots(roots)
    coeffs = [scale]
    for r, m in merged:
        for _ in range(m):
            nxt = [Fraction(0)] * (len(coeffs) + 1)
            for i, a in enumerate(coeffs):
                nxt[i + 1] += a
                nxt[i] -= r * a
            coeffs = nxt
    return PlantedPoly(SparsePoly.from_coeffs(coeffs), merged)


def _integer_coeffs(f: SparsePoly) -> list:
    """Ascending integer coefficients of ``f / x^low`` with denominators cleared."""
    low = f.low_degree()
    g = f.shift((-low,)) if low else f
    dense = g.dense()
    den = lcm(*(c.denominator for c in dense))
    ints = [int(c * den) for c in dense]
    cont = 0
    for c in ints:
        cont = gcd(cont, c)
    return [c // cont for c in ints]


def _ord_int(n: int, p: int):
    """Exponent of ``p`` in the integer ``n``, by binary descent over ``p^(2^j)``."""
    if n == 0:
        return INF
    n = abs(n)
    pows = [p]
    while n % pows[-1] == 0:
        pows.append(pows[-1] * pows[-1])
    k = 0
    for j in range(len(pows) - 2, -1, -1):
        if n % pows[j] == 0:
            n //= pows[j]
            k += 1 << j
    return k


def _tie_exponents(ws: list) -> list:
    """Integers ``e`` at which ``min_i (ws[i] + i*e)`` is attained twice.

    Lower hull of the points ``(i, ws[i])`` by gift wrapping; the ties are
    the negated integer edge slopes.
    """
    pts = [(i, w) for i, w in enumerate(ws) if w is not INF]
    out = []
    cur = pts[0]
    while cur[0] != pts[-1][0]:
        best = None
        for q in pts:
            if q[0] <= cur[0]:
                continue
            slope = Fraction(q[1] - cur[1], q[0] - cur[0])
            if best is None or slope < best[0] or (slope == best[0] and q[0] > best[1][0]):
                best = (slope, q)
        slope, cur = best
        if slope.denominator == 1:
            out.append(-int(slope))
    return out


def _small_primes(count: int, avoid: int) -> list:
    out, q = [], 101
    while len(out) < count:
        if all(q % d for d in range(2, int(q**0.5) + 1)) and avoid % q:
            out.append(q)
        q += 2
    return out


def _eval_mod(coeffs: list, x: int, q: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc


def _horner_is_root(coeffs: list, num: int, den: int) -> bool:
    # homogenized evaluation: sum c_i num^i den^(d-i)
    d = len(coeffs) - 1
    acc = 0
    for i in range(d, -1, -1):
        acc = acc * num + coeffs[i] * den ** (d - i)
    return acc == 0


def rational_roots(f: SparsePoly) -> list:
    """All roots of ``f`` in Q as sorted ``(root, multiplicity)`` pairs.

    A root ``num/den`` in lowest terms has ``num | a_0`` and ``den | a_d``,
    so it is fixed up to sign by its valuations at the primes of
    ``a_0 a_d``, and each such valuation must make two terms of ``f`` tie.
    Surviving candidates are screened modulo a few primes, then checked
    exactly.
    """
    if f.is_zero():
        raise ZeroPolynomial("every rational is a root of the zero polynomial")
    if f.nvars != 1:
        raise ValueError("rational_roots needs a univariate polynomial")
    out = []
    low = f.low_degree()
    if low > 0:
        out.append((Fraction(0), low))
    coeffs = _integer_coeffs(f)
    if len(coeffs) == 1:
        return out
    a0, ad = coeffs[0], coeffs[-1]
    primes = sorted(set(factorint(abs(a0))) | set(factorint(abs(ad))))
    options = []
    for q in primes:
        ws = [_ord_int(c, q) for c in coeffs]
        options.append([e for e in _tie_exponents(ws) if -ws[-1] <= e <= ws[0]])
    sieve = _small_primes(4, a0 * ad)
    g = f.shift((-low,)) if low else f
    for exps in product(*options):
        num = den = 1
        for q, e in zip(primes, exps):
            if e > 0:
                num *= q**e
            elif e < 0:
                den *= q ** (-e)
        for s in (num, -num):
            if any(_eval_mod(coeffs, s * pow(den, -1, q) % q, q) for q in sieve):
                continue
            if _horner_is_root(coeffs, s, den):
                r = Fraction(s, den)
                out.append((r, multiplicity_at(g, r)))
    return sorted(out)


def squarefree_part(f: SparsePoly) -> SparsePoly:
    """``f / gcd(f, f')`` made monic; same roots, all simple."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no square-free part")
    low = f.low_degree()
    g = f.shift((-low,)) if low else f
    h = poly_gcd(g, g.derivative())
    q, r = poly_divmod(g, h)
    assert r.is_zero()
    if low > 0:
        q = q * SparsePoly.var(0, 1)
    return q.monic()


# Z_p roots

@dataclass(frozen=True)
class ZpRootCount:
    prime: int
    precision: int
    approximate: int  # residues r mod p^k with f(r) = 0 mod p^k
    certified: int  # distinct Z_p roots certified by Hensel's inequality
    inconclusive: int  # approximate residues outside every certified disc
    certified_roots: tuple  # (residue mod p^(e+1), e = ord f'(root))
    degree: int = 0

    @property
    def complete(self) -> bool:
        return self.inconclusive == 0

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "precision": self.precision,
            "approximate": self.approximate,
            "certified": self.certified,
            "inconclusive": self.inconclusive,
            "degree": self.degree,
            "complete": self.complete,
        }


def _eval_int(coeffs: list, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _horner_mod(coeffs, xs, M: int):
    """``f(x) mod M`` for each entry of ``xs``; all operands stay below ``M^2 < 2^63``."""
    acc = np.zeros(len(xs), dtype=np.int64)
    for c in coeffs[::-1]:
        acc = (acc * xs + c) % M
    return acc


def _ord_capped(vals, p: int, cap: int):
    """``min(ord_p(v), cap)`` elementwise, zero counting as ``cap``."""
    out = np.zeros(len(vals), dtype=np.int64)
    cur = vals.copy()
    live = cur != 0
    out[~live] = cap
    for _ in range(cap):
        step = live & (cur % p == 0)
        if not step.any():
            break
        out[step] += 1
        cur[step] //= p
        live = step
    return np.minimum(out, cap)


def zp_root_count(f: SparsePoly, p: int, k: int, strict: bool = False) -> ZpRootCount:
    """Roots of ``f`` in Z_p seen at precision ``p^k``.

    Residues modulo ``p^k`` are found by lifting roots level by level.  A
    residue ``r`` is certified when ``ord f(r) > 2 e`` with ``e = ord f'(r)``;
    the Z_p root it certifies is unique in the disc ``ord(x - r) > e``, which
    is how certified residues are grouped.  Inside that disc
    ``ord f(x) = e + ord(x - root)``, so once a class mod ``p^j`` sits in a
    certified disc its descendants mod ``p^k`` are counted in closed form
    instead of being enumerated.  When the certified roots exhaust the degree
    nothing is left undecided.  With ``strict`` set, an incomplete
    certification raises :class:`PrecisionTooLow`.
    """
    check_prime(p)
    if k < 1:
        raise ValueError("precision must be at least 1")
    if p**k > RESIDUE_LIMIT:
        raise TooLarge(f"p^k = {p}^{k} exceeds the residue limit {RESIDUE_LIMIT}")
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial vanishes everywhere")
    low = f.low_degree()
    if low < 0:
        f = f.shift((-low,))
    dense = f.dense()
    den = lcm(*(c.denominator for c in dense))
    coeffs = [int(c * den) for c in dense]
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    degree = len(coeffs) - 1
    # evaluate modulo the largest p-power whose square fits in int64
    K = k
    while p ** (2 * K + 2) < 2**63:
        K += 1
    M = p**K
    fm = np.array([c % M for c in coeffs], dtype=np.int64)
    dm = np.array([c % M for c in dcoeffs] or [0], dtype=np.int64)
    certs = set()
    approximate = 0
    uncertified = np.zeros(0, dtype=np.int64)
    level = np.arange(p, dtype=np.int64)
    level = level[_horner_mod(fm, level, M) % p == 0]
    for j in range(1, k + 1):
        vf = _ord_capped(_horner_mod(fm, level, M), p, K)
        vd = _ord_capped(_horner_mod(dm, level, M), p, K)
        # vf == K only says ord f >= K, so an undecided comparison goes to exact ints
        maybe = (vd < K) & ((vf > 2 * vd) | ((vf == K) & (2 * vd >= K)))
        maybe &= (j >= vd + 1) | (j == k)
        done = np.zeros(len(level), dtype=bool)
        for idx in np.flatnonzero(maybe):
            r, e = int(level[idx]), int(vd[idx])
            if vf[idx] == K and 2 * e >= K:
                fo = _ord_int(_eval_int(coeffs, r), p)
                if fo is not INF and fo <= 2 * e:
                    continue
            done[idx] = True
            certs.add((r % p ** (e + 1), e))
            if j == k:
                approximate += 1
            elif vf[idx] >= k or vf[idx] - e >= j:
                approximate += p ** (k - max(j, k - e))
        if j == k:
            rest = level[~done]
            approximate += len(rest)
            uncertified = rest
            break
        survivors = level[~done]
        pj = p**j
        lifted = (survivors[:, None] + pj * np.arange(p, dtype=np.int64)[None, :]).ravel()
        level = lifted[_horner_mod(fm, lifted, M) % (pj * p) == 0]
    if len(certs) == degree:
        inconclusive = 0
    else:
        outside = np.ones(len(uncertified), dtype=bool)
        for c, e in certs:
            outside &= (uncertified - c) % p ** (e + 1) != 0
        inconclusive = int(outside.sum())
    result = ZpRootCount(
        p, k, approximate, len(certs), inconclusive, tuple(sorted(certs)), degree
    )
    if strict and inconclusive:
        raise PrecisionTooLow(f"{inconclusive} residues mod {p}^{k} are not certified")
    return result


# explicit families

def shub_smale_family(n: int, p: int) -> SparsePoly:
    """``h_1 = x(1-x)`` and ``h_{k+1} = (p^(3^(k-1)) - h_k) h_k``; degree ``2^n``."""
    check_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    if n > SHUB_SMALE_MAX_N:
        raise TooLarge(f"h_{n} has degree 2^{n}; the cap is n <= {SHUB_SMALE_MAX_N}")
    h = [0, 1, -1]
    for k in range(1, n):
        c = p ** (3 ** (k - 1))
        left = [-a for a in h]
        left[0] += c
        h = _int_poly_mul(left, h)
    return SparsePoly.from_coeffs(h)


def _int_poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    nz = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            for j, y in nz:
                out[i + j] += x * y
    return out


# valuation vectors of the extremal family by elimination

def extremal_true_valuations(n: int, p: int) -> list:
    """Valuation vectors of the roots of the extremal family, by elimination.

    Substituting ``x_n = 1 + p^(2n-3) x1^2`` and ``x_l = g_l / x_{l+1}``
    backwards leaves one univariate equation in ``x1``; the valuation of
    each remaining coordinate then follows from the valuation of ``x1``
    unless two terms of some ``g_l`` tie, which raises ``ValueError``.
    Uses only direct elimination and the univariate valuation count.
    """
    from .newton import root_valuations

    check_prime(p)
    if n < 2:
        raise ValueError("the family starts at n = 2")
    x = SparsePoly.var(0, 1)
    one = SparsePoly.const(1)
    g = {l: one + p ** (2 * l - 3) * x**2 for l in range(2, n + 1)}
    num, den = g[n], one
    for l in range(n - 1, 1, -1):
        num, den = g[l] * den, num
    P = x * num - (p * one + x**2) * den
    out = []
    for w in root_valuations(P, p):
        val = {}
        for l in range(2, n + 1):
            a, b = Fraction(0), 2 * l - 3 + 2 * w
            if a == b:
                raise ValueError(f"valuation tie in g_{l} at ord x1 = {w}")
            val[l] = min(a, b)
        v = [None] * (n + 1)
        v[1] = w
        v[n] = val[n]
        for l in range(n - 1, 1, -1):
            v[l] = val[l] - v[l + 1]
        out.append(tuple(v[1:]))
    return sorted(set(out))


__all__ = [
    "PlantedPoly",
    "ZpRootCount",
    "poly_from_roots",
    "rational_roots",
    "squarefree_part",
    "zp_root_count",
    "shub_smale_family",
    "extremal_true_valuations",
]
