"""Minimal deterministic SVG line-plot writer (no plotting dependency)."""

from __future__ import annotations

__all__ = ["render_lines"]

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
)

_W, _H = 720, 460
_ML, _MR, _MT, _MB = 70, 170, 40, 55


def _ticks(lo: float, hi: float, n: int = 5):
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def render_lines(series: dict[str, list[tuple[float, float]]],
                 x_label: str, y_label: str, title: str) -> str:
    """Render one polyline per named series with shared axes and a legend."""
    pts = [p for line in series.values() for p in line]
    if not pts:
        raise ValueError("nothing to plot")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.04 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    iw = _W - _ML - _MR
    ih = _H - _MT - _MB

    def sx(x):
        return _ML + (x - x0) / (x1 - x0) * iw

    def sy(y):
        return _MT + ih - (y - y0) / (y1 - y0) * ih

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_ML + iw / 2:.1f}" y="22" text-anchor="middle" '
        f'font-size="15">{title}</text>',
    ]
    # axes
    out.append(
        f'<path d="M {_ML} {_MT} V {_MT + ih} H {_ML + iw}" fill="none" '
        f'stroke="black" stroke-width="1"/>'
    )
    for tx in _ticks(x0, x1):
        px = sx(tx)
        out.append(f'<line x1="{px:.1f}" y1="{_MT + ih}" x2="{px:.1f}" '
                   f'y2="{_MT + ih + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.1f}" y="{_MT + ih + 18}" '
                   f'text-anchor="middle">{tx:.4g}</text>')
    for ty in _ticks(y0, y1):
        py = sy(ty)
        out.append(f'<line x1="{_ML - 5}" y1="{py:.1f}" x2="{_ML}" '
                   f'y2="{py:.1f}" stroke="black"/>')
        out.append(f'<text x="{_ML - 8}" y="{py + 4:.1f}" '
                   f'text-anchor="end">{ty:.4g}</text>')
    out.append(f'<text x="{_ML + iw / 2:.1f}" y="{_H - 12}" '
               f'text-anchor="middle">{x_label}</text>')
    out.append(f'<text x="18" y="{_MT + ih / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {_MT + ih / 2:.1f})">{y_label}</text>')
    # series
    for i, (name, line) in enumerate(series.items()):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in line)
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                   f'stroke-width="1.8"/>')
        ly = _MT + 14 + 18 * i
        out.append(f'<line x1="{_W - _MR + 8}" y1="{ly - 4}" x2="{_W - _MR + 30}" '
                   f'y2="{ly - 4}" stroke="{color}" stroke-width="2.5"/>')
        out.append(f'<text x="{_W - _MR + 36}" y="{ly}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
