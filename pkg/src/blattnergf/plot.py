"""SVG plots of rank-2 coefficient lattices.

The short simple root has length 1 and points to 3 o'clock; the other
simple root sits at its true angle and relative length.  Each lattice point
``mu = delta - k a_1 - l a_2`` in the window carries a text label with the
exact coefficient of ``e^mu``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from .blattner import BlattnerError, Gradation, b_series_rational
from .rootsys import inner

MAX_POINTS = 10**4


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


@dataclass(frozen=True)
class PlotSpec:
    gradation: Gradation
    delta: tuple
    window: tuple  # (K, L): 0 <= k <= K, 0 <= l <= L; negative caps give an empty window
    show_zeros: bool = False
    unit: float = 28.0
    title: str | None = None

    def __post_init__(self):
        if self.gradation.rank != 2:
            raise BlattnerError(
                f"plots are rank 2 only (got rank {self.gradation.rank}); use bseries --format csv instead"
            )
        if len(self.window) != 2:
            raise BlattnerError("window needs two exponent caps")
        npts = max(self.window[0] + 1, 0) * max(self.window[1] + 1, 0)
        if npts > MAX_POINTS:
            raise BlattnerError(f"window has {npts} points; at most {MAX_POINTS} allowed")


def simple_root_vectors(gr: Gradation) -> tuple[tuple[float, float], tuple[float, float]]:
    """Euclidean images of the two simple roots."""
    rs = gr.rs
    a, b = rs.simple_roots
    na, nb = inner(rs, a, a), inner(rs, b, b)
    # the short root (the later one on ties) points right
    anchor = 1 if nb <= na else 0
    short = min(na, nb)
    angle = math.acos(float(inner(rs, a, b)) / math.sqrt(float(na * nb)))
    la, lb = math.sqrt(float(na / short)), math.sqrt(float(nb / short))
    if anchor == 1:
        return (la * math.cos(angle), la * math.sin(angle)), (lb, 0.0)
    return (la, 0.0), (lb * math.cos(angle), lb * math.sin(angle))


def lattice_values(spec: PlotSpec) -> list[tuple[tuple[int, int], tuple, int]]:
    """(exponent, weight, coefficient) for every point of the window."""
    K, L = spec.window
    if K < 0 or L < 0:
        return []
    s = b_series_rational(spec.gradation, spec.delta, K + L)
    out = []
    for k in range(K + 1):
        for l in range(L + 1):
            out.append(((k, l), s.weight_of((k, l)), s.coefficient((k, l))))
    return out


def render_svg(spec: PlotSpec) -> str:
    va, vb = simple_root_vectors(spec.gradation)

    def embed(mu):
        x = float(mu[0]) * va[0] + float(mu[1]) * vb[0]
        y = float(mu[0]) * va[1] + float(mu[1]) * vb[1]
        return x, y

    values = lattice_values(spec)
    pts = [embed(mu) for _, mu, _ in values] + [(0.0, 0.0)]
    xmin = math.floor(min(p[0] for p in pts)) - 1
    xmax = math.ceil(max(p[0] for p in pts)) + 1
    ymin = math.floor(min(p[1] for p in pts)) - 1
    ymax = math.ceil(max(p[1] for p in pts)) + 1
    u = spec.unit
    margin = 40.0
    width = (xmax - xmin) * u + 2 * margin
    height = (ymax - ymin) * u + 2 * margin

    def px(x, y):
        return margin + (x - xmin) * u, margin + (ymax - y) * u

    gr = spec.gradation
    title = spec.title or (
        f"b(delta) for {gr.label}, compact {gr.compact_labels or '{}'}, delta=("
        + ",".join(str(Fraction(d)) for d in spec.delta)
        + ")"
    )
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}" font-family="monospace">',
        f"<title>{escape(title)}</title>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        '<g id="axes" stroke="#999999" stroke-width="1">',
    ]
    x0, y0 = px(xmin, 0)
    x1, _ = px(xmax, 0)
    lines.append(f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}"/>')
    cx, cy0 = px(0, ymax)
    _, cy1 = px(0, ymin)
    lines.append(f'<line x1="{_f(cx)}" y1="{_f(cy0)}" x2="{_f(cx)}" y2="{_f(cy1)}"/>')
    for name, v in (("a1", va), ("a2", vb)):
        ox, oy = px(0, 0)
        tx, ty = px(*v)
        lines.append(f'<line x1="{_f(ox)}" y1="{_f(oy)}" x2="{_f(tx)}" y2="{_f(ty)}" stroke="#3060c0"/>')
        lines.append(f'<text x="{_f(tx + 4)}" y="{_f(ty - 4)}" font-size="9" fill="#3060c0" stroke="none">{name}</text>')
    lines.append("</g>")
    lines.append('<g id="ticks" font-size="8" fill="#666666">')
    for t in range(xmin, xmax + 1):
        if t:
            tx, ty = px(t, 0)
            lines.append(f'<line x1="{_f(tx)}" y1="{_f(ty - 3)}" x2="{_f(tx)}" y2="{_f(ty + 3)}" stroke="#999999"/>')
            lines.append(f'<text x="{_f(tx)}" y="{_f(ty + 12)}" text-anchor="middle">{t}</text>')
    for t in range(ymin, ymax + 1):
        if t:
            tx, ty = px(0, t)
            lines.append(f'<line x1="{_f(tx - 3)}" y1="{_f(ty)}" x2="{_f(tx + 3)}" y2="{_f(ty)}" stroke="#999999"/>')
            lines.append(f'<text x="{_f(tx - 6)}" y="{_f(ty + 3)}" text-anchor="end">{t}</text>')
    lines.append("</g>")
    lines.append('<g id="coefficients" font-size="10" text-anchor="middle">')
    for (k, l), mu, c in values:
        if c == 0 and not spec.show_zeros:
            continue
        x, y = px(*embed(mu))
        fill = "#cccccc" if c == 0 else ("#c00000" if c < 0 else "#000000")
        mu_s = ",".join(str(Fraction(m)) for m in mu)
        lines.append(
            f'<text x="{_f(x)}" y="{_f(y + 3.5)}" fill="{fill}" data-k="{k}" data-l="{l}" '
            f'data-mu="{mu_s}" data-c="{c}">{c}</text>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
