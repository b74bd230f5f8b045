"""SVG barcode diagrams: one row of bars per degree, hollow dots at open endpoints."""
from __future__ import annotations

from .barcode import Barcode

_W, _MARGIN, _ROW, _GAP, _LABEL = 640, 40, 14, 24, 60


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def render_svg(B: Barcode) -> str:
    """Deterministic SVG document for ``B`` (infinite ends get arrowheads at the margins)."""
    bars = list(B.expanded())
    ends = [float(t) for b in bars for t in (b.interval.lo, b.interval.hi) if t.finite]
    lo, hi = (min(ends), max(ends)) if ends else (0.0, 1.0)
    if hi == lo:
        lo, hi = lo - 1, hi + 1
    pad = (hi - lo) * 0.1
    lo, hi = lo - pad, hi + pad
    left, right = _MARGIN + _LABEL, _W - _MARGIN

    def X(t):
        if not t.finite:
            return left if t.inf < 0 else right
        return left + (float(t) - lo) / (hi - lo) * (right - left)

    rows = []
    y = _MARGIN
    for d in sorted({b.degree for b in bars}, reverse=True):
        rows.append(f'<text x="{_MARGIN}" y="{_fmt(y + 4)}" font-size="12">deg {d}</text>')
        for b in (b for b in bars if b.degree == d):
            iv = b.interval
            x0, x1 = X(iv.lo), X(iv.hi)
            rows.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y)}" x2="{_fmt(x1)}" y2="{_fmt(y)}" '
                        f'stroke="black" stroke-width="2"/>')
            for t, xx, is_open, sgn in ((iv.lo, x0, iv.lo_open, -1), (iv.hi, x1, iv.hi_open, 1)):
                if not t.finite:
                    tip = xx + 6 * sgn
                    rows.append(f'<polygon points="{_fmt(tip)},{_fmt(y)} {_fmt(xx)},{_fmt(y - 4)} '
                                f'{_fmt(xx)},{_fmt(y + 4)}" fill="black"/>')
                else:
                    fill = "white" if is_open else "black"
                    rows.append(f'<circle cx="{_fmt(xx)}" cy="{_fmt(y)}" r="3" fill="{fill}" '
                                f'stroke="black"/>')
            y += _ROW
        y += _GAP
    height = max(y + _MARGIN, 2 * _MARGIN)
    axis = (f'<line x1="{left}" y1="{_fmt(height - _MARGIN / 2)}" x2="{right}" '
            f'y2="{_fmt(height - _MARGIN / 2)}" stroke="gray"/>'
            f'<text x="{left}" y="{_fmt(height - 4)}" font-size="10">{_fmt(lo)}</text>'
            f'<text x="{right - 30}" y="{_fmt(height - 4)}" font-size="10">{_fmt(hi)}</text>')
    body = "\n".join(rows)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_fmt(height)}" '
            f'viewBox="0 0 {_W} {_fmt(height)}">\n{body}\n{axis}\n</svg>\n')
