"""Static SVG rendering of barcodes and ramification forests.

Plain string templates; no graphics library is needed.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _header(w, h):
    return [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" '
            f'font-family="sans-serif" font-size="11">',
            f'<rect width="{w}" height="{h}" fill="white"/>']


def _ticks(lo, hi, n=6):
    if hi <= lo:
        return [lo]
    step = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(step))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= step), default=step)
    t = math.ceil(lo / step) * step
    out = []
    while t <= hi + 1e-12:
        out.append(round(t, 10))
        t += step
    return out


def barcode_svg(barcode, width: int = 640, bar_height: int = 10, gap: int = 4) -> str:
    """Intervals stacked per homology degree against a horizontal scale axis.
    Infinite bars run to the right edge and end in an arrow."""
    pairs = list(barcode)
    if not pairs:
        return "\n".join(_header(width, 40) + ["<!-- empty barcode -->", "</svg>"]) + "\n"
    finite = [p.death for p in pairs if not math.isinf(p.death)] + [p.birth for p in pairs]
    lo, hi = 0.0, max(finite) if finite else 1.0
    hi = hi * 1.1 if hi > 0 else 1.0
    left, right, top = 60, 20, 20
    plot_w = width - left - right

    def x(v):
        return left + plot_w * (min(v, hi) - lo) / (hi - lo)

    rows = []
    y = top
    for d in sorted({p.dim for p in pairs}):
        rows.append(("label", d, y))
        y += 14
        for p in (q for q in pairs if q.dim == d):
            rows.append(("bar", p, y))
            y += bar_height + gap
        y += 8
    height = y + 30
    out = _header(width, height)
    for kind, obj, yy in rows:
        if kind == "label":
            out.append(f'<text x="4" y="{yy + 10}" font-weight="bold">H{obj}</text>')
            continue
        color = _COLORS[obj.dim % len(_COLORS)]
        x0, x1 = x(obj.birth), x(obj.death)
        out.append(f'<rect x="{x0:.2f}" y="{yy}" width="{max(x1 - x0, 1):.2f}" height="{bar_height}" fill="{color}">'
                   f'<title>{escape(obj.id)}: [{obj.birth:g}, {obj.death:g})</title></rect>')
        if math.isinf(obj.death):
            ym = yy + bar_height / 2
            out.append(f'<path d="M{x1:.2f},{ym - 5} L{x1 + 8:.2f},{ym} L{x1:.2f},{ym + 5} z" fill="{color}"/>')
    ay = height - 24
    out.append(f'<line x1="{left}" y1="{ay}" x2="{left + plot_w}" y2="{ay}" stroke="black"/>')
    for t in _ticks(lo, hi):
        out.append(f'<line x1="{x(t):.2f}" y1="{ay}" x2="{x(t):.2f}" y2="{ay + 4}" stroke="black"/>')
        out.append(f'<text x="{x(t):.2f}" y="{ay + 16}" text-anchor="middle">{t:g}</text>')
    out.append(f'<text x="{left + plot_w}" y="{ay - 4}" text-anchor="end">ε</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def forest_svg(forest, width: int = 640, height: int = 420) -> str:
    """Dendrogram with the scale axis vertical, increasing downwards.

    Shared subtrees are drawn once per parent.
    """
    roots = list(forest.roots)
    if not roots:
        return "\n".join(_header(width, 40) + ["<!-- empty forest -->", "</svg>"]) + "\n"

    def leaves(n):
        return 1 if not n.children else sum(leaves(c) for c in n.children)

    scales = []
    for r in roots:
        for n in r.walk():
            scales.append(n.birth)
            if n.ramification is not None:
                scales.append(n.ramification)
    lo, hi = min(scales), max(scales)
    hi = hi + max((hi - lo) * 0.15, 1.0)
    left, top, bottom = 60, 30, 30
    plot_h = height - top - bottom
    total = sum(leaves(r) for r in roots)
    slot = (width - left - 20) / total

    def y(v):
        return top + plot_h * (v - lo) / (hi - lo)

    out = _header(width, height)
    for t in _ticks(lo, hi):
        out.append(f'<line x1="{left - 4}" y1="{y(t):.2f}" x2="{width - 10}" y2="{y(t):.2f}" stroke="#ddd"/>')
        out.append(f'<text x="{left - 8}" y="{y(t) + 4:.2f}" text-anchor="end">{t:g}</text>')
    out.append(f'<text x="8" y="{top - 10}">ε</text>')

    def draw(n, x0):
        w = leaves(n) * slot
        if not n.children:
            cx = x0 + w / 2
        else:
            xs, cur = [], x0
            for c in n.children:
                xs.append(draw(c, cur))
                cur += leaves(c) * slot
            cx = (xs[0] + xs[-1]) / 2
            yr = y(n.ramification)
            out.append(f'<line x1="{xs[0]:.2f}" y1="{yr:.2f}" x2="{xs[-1]:.2f}" y2="{yr:.2f}" stroke="black"/>')
        end = y(n.ramification) if n.ramification is not None else y(hi)
        dash = "" if n.ramification is not None else ' stroke-dasharray="3,3"'
        out.append(f'<line x1="{cx:.2f}" y1="{y(n.birth):.2f}" x2="{cx:.2f}" y2="{end:.2f}" stroke="black"{dash}/>')
        out.append(f'<circle cx="{cx:.2f}" cy="{y(n.birth):.2f}" r="3"/>')
        out.append(f'<text x="{cx + 5:.2f}" y="{y(n.birth) - 4:.2f}">{escape(n.label)}</text>')
        return cx

    x0 = left
    for r in roots:
        draw(r, x0)
        x0 += leaves(r) * slot
    out.append("</svg>")
    return "\n".join(out) + "\n"
