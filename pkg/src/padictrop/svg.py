"""SVG 1.1 figures for Newton polygons and plane tropical curves.

Geometry stays exact until :class:`Viewport` maps a rational point to
screen coordinates; that final step is the only rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .newton import NewtonPolygon
from .tropical import IntersectionReport, TropCurve

SIZE = 400
MARGIN = 30
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


@dataclass(frozen=True)
class Viewport:
    """Affine map from the box ``[x0, x1] x [y0, y1]`` to the drawing area (y pointing up)."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    @classmethod
    def around(cls, points: Sequence[tuple], pad: Fraction = Fraction(1)) -> "Viewport":
        if not points:
            points = [(Fraction(0), Fraction(0))]
        xs = [Fraction(p[0]) for p in points]
        ys = [Fraction(p[1]) for p in points]
        span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
        pad = pad * span / 4 + pad
        return cls(min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad)

    def contains(self, P) -> bool:
        return self.x0 <= P[0] <= self.x1 and self.y0 <= P[1] <= self.y1

    def screen(self, P) -> tuple:
        w = SIZE - 2 * MARGIN
        sx = MARGIN + float((Fraction(P[0]) - self.x0) / (self.x1 - self.x0)) * w
        sy = SIZE - MARGIN - float((Fraction(P[1]) - self.y0) / (self.y1 - self.y0)) * w
        return round(sx, 3), round(sy, 3)

    def clip_ray(self, P, d) -> tuple:
        """Exact point where the ray ``P + s d`` (``s >= 0``) leaves the box."""
        limits = []
        for k, (lo, hi) in enumerate(((self.x0, self.x1), (self.y0, self.y1))):
            if d[k] > 0:
                limits.append((hi - P[k]) / d[k])
            elif d[k] < 0:
                limits.append((lo - P[k]) / d[k])
        s = max(min(limits), Fraction(0))
        return (P[0] + s * d[0], P[1] + s * d[1])


def _doc(body: list, title: str) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">\n'
        f"<title>{escape(title)}</title>\n"
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _line(vp: Viewport, P, Q, color: str, width: float = 1.5) -> str:
    (x1, y1), (x2, y2) = vp.screen(P), vp.screen(Q)
    return f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{width}"/>'


def _dot(vp: Viewport, P, color: str, r: float = 3) -> str:
    x, y = vp.screen(P)
    return f'<circle cx="{x}" cy="{y}" r="{r}" fill="{color}"/>'


def polygon_svg(P: NewtonPolygon) -> str:
    pts = list(P.lifted_points) or list(P.vertices)
    vp = Viewport.around(pts)
    body = [_dot(vp, q, "#888888") for q in pts]
    body += [_line(vp, a, b, COLORS[0], 2) for a, b in zip(P.vertices, P.vertices[1:])]
    body += [_dot(vp, v, COLORS[1], 4) for v in P.vertices]
    return _doc(body, f"Newton polygon, p = {P.prime}")


def _curve_body(vp: Viewport, C: TropCurve, color: str) -> list:
    body = []
    for pc, m in C.pieces():
        a, b = pc.interval
        if a is not None and b is not None:
            P, Q = pc.endpoints
        elif a is not None:
            P = pc.endpoints[0]
            Q = vp.clip_ray(P, pc.direction)
        else:
            base = pc.point
            Q = vp.clip_ray(base, pc.direction)
            P = vp.clip_ray(base, tuple(-x for x in pc.direction))
        body.append(_line(vp, P, Q, color, 1.5 * m))
    body += [_dot(vp, v, color) for v in C.vertices]
    return body


def curves_svg(curves: Sequence[TropCurve], report: IntersectionReport | None = None) -> str:
    pts = [v for C in curves for v in C.vertices]
    pts += [pc.point for C in curves for pc, _ in C.pieces()]
    if report is not None:
        pts += list(report.point_set)
    vp = Viewport.around(pts)
    body = []
    for k, C in enumerate(curves):
        body += _curve_body(vp, C, COLORS[k % len(COLORS)])
    if report is not None:
        body += [_dot(vp, q, "black", 5) for q in sorted(report.point_set)]
    prime = next((C.prime for C in curves if C.prime is not None), None)
    return _doc(body, f"tropical curves, p = {prime}")
