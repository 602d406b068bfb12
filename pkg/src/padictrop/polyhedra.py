"""Exact rational polyhedra by Fourier-Motzkin elimination.

Only what the candidate enumeration needs: feasibility with strict
inequalities, detection of implicit equalities, and the dimension of
``{v : E v = e, G v >= g}``.  Sizes stay tiny (dimension at most a handful),
so the doubly exponential worst case of elimination never bites.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_arith import as_rational, format_rational
from .exact_linalg import nullspace, rref


def _normalize(a, b, strict):
    lead = next((abs(x) for x in a if x), None)
    if lead is None:
        return tuple(a), b, strict
    return tuple(x / lead for x in a), b / lead, strict


def fm_feasible(rows: Sequence[tuple]) -> bool:
    """Is ``{z : a.z >= b (or > b when strict)}`` nonempty?

    ``rows`` holds ``(a, b, strict)`` triples with rational entries.
    """
    rows = {_normalize(tuple(as_rational(x) for x in a), as_rational(b), bool(s)) for a, b, s in rows}
    d = len(next(iter(rows))[0]) if rows else 0
    for k in range(d):
        pos, neg, rest = [], [], []
        for a, b, s in rows:
            (pos if a[k] > 0 else neg if a[k] < 0 else rest).append((a, b, s))
        new = set(rest)
        for ap, bp, sp in pos:
            for an, bn, sn in neg:
                cp, cn = ap[k], -an[k]
                a = tuple(cn * x + cp * y for x, y in zip(ap, an))
                new.add(_normalize(a, cn * bp + cp * bn, sp or sn))
        rows = new
    for a, b, s in rows:
        if any(a):
            continue
        if (s and not 0 > b) or (not s and not 0 >= b):
            return False
    return True


@dataclass(frozen=True)
class Polyhedron:
    """``{v in Q^n : E v = e, G v >= g}`` with rows stored as ``(vector, rhs)``."""

    n: int
    equalities: tuple = ()
    inequalities: tuple = ()

    def meet(self, equalities=(), inequalities=()) -> "Polyhedron":
        return Polyhedron(
            self.n,
            self.equalities + tuple(equalities),
            self.inequalities + tuple(inequalities),
        )

    def to_json(self) -> dict:
        fmt = lambda rows: [  # noqa: E731
            {"normal": [format_rational(x) for x in a], "rhs": format_rational(b)} for a, b in rows
        ]
        return {"n": self.n, "equalities": fmt(self.equalities), "inequalities": fmt(self.inequalities)}


@dataclass(frozen=True)
class Analysis:
    dim: int  # -1 when empty
    point: tuple | None  # the unique point when dim == 0
    polyhedron: Polyhedron  # with implicit equalities made explicit


def _affine_param(n, eqs):
    """``(v0, B)`` with ``{v : E v = e} = v0 + span(B)``, or None if inconsistent."""
    if not eqs:
        return [Fraction(0)] * n, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    aug = [list(a) + [b] for a, b in eqs]
    E, piv = rref(aug)
    if n in piv:
        return None
    v0 = [Fraction(0)] * n
    for r, c in enumerate(piv):
        v0[c] = E.entries[r][-1]
    B = nullspace([list(a) for a, _ in eqs])
    return v0, B


def analyze(P: Polyhedron) -> Analysis:
    """Dimension of ``P`` (implicit equalities included) and its point if zero-dimensional."""
    eqs = list(P.equalities)
    ineqs = list(P.inequalities)
    while True:
        param = _affine_param(P.n, eqs)
        if param is None:
            return Analysis(-1, None, P)
        v0, B = param
        d = len(B)
        local = []
        for a, b in ineqs:
            coeffs = tuple(sum(x * y for x, y in zip(a, col)) for col in B)
            rhs = b - sum(x * y for x, y in zip(a, v0))
            local.append((coeffs, rhs))
        if d == 0:
            if all(0 >= rhs for _, rhs in local):
                return Analysis(0, tuple(v0), Polyhedron(P.n, tuple(eqs), tuple(ineqs)))
            return Analysis(-1, None, P)
        base = [(c, r, False) for c, r in local]
        if not fm_feasible(base):
            return Analysis(-1, None, P)
        implicit = None
        for k, (c, r) in enumerate(local):
            if not any(c):
                continue
            trial = base[:k] + [(c, r, True)] + base[k + 1:]
            if not fm_feasible(trial):
                implicit = k
                break
        if implicit is None:
            return Analysis(d, None, Polyhedron(P.n, tuple(eqs), tuple(ineqs)))
        eqs.append(ineqs.pop(implicit))
