"""Hand-emitted SVG line/scatter plots.

No plotting library: the output must be byte-identical across runs given the
same data, so everything is formatted explicitly.
"""

from __future__ import annotations

import math

from .errors import DomainError

__all__ = ["emit_plot"]

_W, _H = 640.0, 480.0
_ML, _MR, _MT, _MB = 70.0, 20.0, 20.0, 50.0  # margins
_COLORS = ("#1f77b4", "#d62728", "#2ca02c")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    step = min(s for s in (mag, 2 * mag, 2.5 * mag, 5 * mag, 10 * mag) if s >= raw)
    start = math.ceil(lo / step) * step
    out = []
    t = start
    while t <= hi + 1e-9 * step:
        out.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return out


class _Canvas:
    def __init__(self, xlim, ylim, xlabel, ylabel):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        if self.x1 <= self.x0:
            self.x1 = self.x0 + 1.0
        if self.y1 <= self.y0:
            span = abs(self.y0) if self.y0 else 1.0
            self.y0, self.y1 = self.y0 - 0.05 * span - 1e-12, self.y1 + 0.05 * span + 1e-12
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W:.0f}" height="{_H:.0f}" '
            f'viewBox="0 0 {_W:.0f} {_H:.0f}">',
            f'<rect width="{_W:.0f}" height="{_H:.0f}" fill="white"/>',
        ]
        self._axes(xlabel, ylabel)

    def px(self, x):
        return _ML + (x - self.x0) / (self.x1 - self.x0) * (_W - _ML - _MR)

    def py(self, y):
        return _H - _MB - (y - self.y0) / (self.y1 - self.y0) * (_H - _MT - _MB)

    def _axes(self, xlabel, ylabel):
        p = self.parts
        p.append(f'<rect x="{_fmt(_ML)}" y="{_fmt(_MT)}" width="{_fmt(_W - _ML - _MR)}" '
                 f'height="{_fmt(_H - _MT - _MB)}" fill="none" stroke="black"/>')
        for t in _ticks(self.x0, self.x1):
            x = self.px(t)
            p.append(f'<line x1="{_fmt(x)}" y1="{_fmt(_H - _MB)}" x2="{_fmt(x)}" '
                     f'y2="{_fmt(_H - _MB + 5)}" stroke="black"/>')
            p.append(f'<text x="{_fmt(x)}" y="{_fmt(_H - _MB + 18)}" font-size="11" '
                     f'text-anchor="middle">{t:.4g}</text>')
        for t in _ticks(self.y0, self.y1):
            y = self.py(t)
            p.append(f'<line x1="{_fmt(_ML - 5)}" y1="{_fmt(y)}" x2="{_fmt(_ML)}" '
                     f'y2="{_fmt(y)}" stroke="black"/>')
            p.append(f'<text x="{_fmt(_ML - 8)}" y="{_fmt(y + 4)}" font-size="11" '
                     f'text-anchor="end">{t:.4g}</text>')
        p.append(f'<text x="{_fmt((_ML + _W - _MR) / 2)}" y="{_fmt(_H - 12)}" font-size="13" '
                 f'text-anchor="middle">{xlabel}</text>')
        p.append(f'<text x="16" y="{_fmt((_MT + _H - _MB) / 2)}" font-size="13" '
                 f'text-anchor="middle" transform="rotate(-90 16 {_fmt((_MT + _H - _MB) / 2)})">'
                 f'{ylabel}</text>')

    def polyline(self, xs, ys, color):
        pts = " ".join(f"{_fmt(self.px(x))},{_fmt(self.py(y))}" for x, y in zip(xs, ys))
        self.parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')

    def markers(self, xs, ys, color):
        for x, y in zip(xs, ys):
            self.parts.append(f'<circle cx="{_fmt(self.px(x))}" cy="{_fmt(self.py(y))}" '
                              f'r="3.5" fill="{color}"/>')

    def hline(self, y, color, label):
        yy = self.py(y)
        self.parts.append(f'<line x1="{_fmt(_ML)}" y1="{_fmt(yy)}" x2="{_fmt(_W - _MR)}" '
                          f'y2="{_fmt(yy)}" stroke="{color}" stroke-dasharray="6,4"/>')
        self.parts.append(f'<text x="{_fmt(_W - _MR - 4)}" y="{_fmt(yy - 5)}" font-size="11" '
                          f'text-anchor="end" fill="{color}">{label}</text>')

    def legend(self, names):
        for i, name in enumerate(names):
            y = _MT + 16 + 16 * i
            self.parts.append(f'<rect x="{_fmt(_ML + 10)}" y="{_fmt(y - 8)}" width="10" '
                              f'height="10" fill="{_COLORS[i % len(_COLORS)]}"/>')
            self.parts.append(f'<text x="{_fmt(_ML + 26)}" y="{_fmt(y + 1)}" '
                              f'font-size="11">{name}</text>')

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def emit_plot(kind: str, data, path) -> None:
    """Write one standalone SVG; raises on empty data without creating a file."""
    rows = list(data)
    if not rows:
        raise DomainError(f"no data for plot kind {kind!r}")
    if kind == "profile":
        xs = [r[1] for r in rows]
        ys = [r[2] for r in rows]
        cv = _Canvas((min(xs), max(xs)), (0.0, max(ys) * 1.05), "x", "z")
        cv.polyline(xs, ys, _COLORS[0])
    elif kind == "boundary_curve":
        xs = [r[0] for r in rows]
        ys = [r[2] for r in rows]
        ref = 8.0 * math.pi
        lo = min(min(ys), ref)
        hi = max(max(ys), ref)
        pad = 0.1 * (hi - lo) if hi > lo else 0.1 * ref
        cv = _Canvas((0.0, max(xs) * 1.1), (lo - pad, hi + pad), "eps", "gamma_c * eps")
        cv.hline(ref, _COLORS[1], "8 pi")
        cv.markers(xs, ys, _COLORS[0])
        if len(rows) > 1:
            cv.polyline(xs, ys, _COLORS[0])
    elif kind == "uniformity":
        names = ("riesz_gap", "cap_discrepancy")
        xs = [r["n"] for r in rows]
        ymax = max(max(r[name] for name in names) for r in rows)
        cv = _Canvas((0.0, max(xs) * 1.1), (0.0, ymax * 1.15), "n", "deviation")
        for i, name in enumerate(names):
            ys = [r[name] for r in rows]
            cv.polyline(xs, ys, _COLORS[i])
            cv.markers(xs, ys, _COLORS[i])
        cv.legend(names)
    else:
        raise DomainError(f"unknown plot kind {kind!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(cv.render())
