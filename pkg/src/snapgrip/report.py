"""Result serialization: CSV, run manifests, and standalone SVG plots.

Every number is written with 17 significant digits so a 64-bit float
round-trips losslessly, lines end with LF, and identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import hashlib
import math
from datetime import datetime, timezone
from pathlib import Path

from .errors import EmptyDataError


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return f"{value:.17g}"
    return str(value)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def write_key_value(path, pairs) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in pairs:
            fh.write(f"{key} = {fmt(value)}\n")


def write_manifest(path, config_text: str, version: str, command: str,
                   outputs) -> None:
    """Flat key-value run manifest, emitted beside every output set."""
    digest = hashlib.sha256(config_text.encode("utf-8")).hexdigest()
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    write_key_value(path, [
        ("config_sha256", digest),
        ("tool_version", version),
        ("command", command),
        ("timestamp", stamp),
        ("outputs", ";".join(str(o) for o in outputs)),
    ])


# ---------------------------------------------------------------------------
# Minimal deterministic SVG emission
# ---------------------------------------------------------------------------

_W, _H = 640, 420
_ML, _MR, _MT, _MB = 70, 20, 20, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _ticks(lo, hi, n=5):
    if hi == lo:
        hi = lo + 1.0
    span = hi - lo
    step = 10.0 ** math.floor(math.log10(span / n))
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= n:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + 1e-12 * span:
        out.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return out


def _svg_header(parts):
    parts.append('<?xml version="1.0" encoding="UTF-8"?>')
    parts.append(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                 f'width="{_W}" height="{_H}" '
                 f'viewBox="0 0 {_W} {_H}">')
    parts.append(f'<rect width="{_W}" height="{_H}" fill="white"/>')


def _axes(parts, xlabel, ylabel, xlo, xhi, ylo, yhi, sx, sy):
    parts.append(f'<g stroke="black" stroke-width="1" fill="none">'
                 f'<path d="M {_ML} {_MT} V {_H - _MB} H {_W - _MR}"/></g>')
    for t in _ticks(xlo, xhi):
        px = sx(t)
        parts.append(f'<line x1="{px:.2f}" y1="{_H - _MB}" x2="{px:.2f}" '
                     f'y2="{_H - _MB + 5}" stroke="black"/>')
        parts.append(f'<text x="{px:.2f}" y="{_H - _MB + 18}" '
                     f'font-size="11" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(ylo, yhi):
        py = sy(t)
        parts.append(f'<line x1="{_ML - 5}" y1="{py:.2f}" x2="{_ML}" '
                     f'y2="{py:.2f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{py + 4:.2f}" font-size="11" '
                     f'text-anchor="end">{t:.4g}</text>')
    parts.append(f'<text x="{(_ML + _W - _MR) / 2:.1f}" y="{_H - 12}" '
                 f'font-size="13" text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="16" y="{(_MT + _H - _MB) / 2:.1f}" font-size="13" '
                 f'text-anchor="middle" transform="rotate(-90 16 '
                 f'{(_MT + _H - _MB) / 2:.1f})">{ylabel}</text>')


def svg_line_plot(x, series: dict, xlabel: str, ylabel: str,
                  markers=()) -> str:
    """Polyline plot of one or more named series over a shared abscissa.

    ``markers`` is a sequence of (x, y, label) extrema annotations.
    """
    x = list(x)
    if not x or not series:
        raise EmptyDataError("nothing to plot")
    ys = {name: list(v) for name, v in series.items()}
    xlo, xhi = min(x), max(x)
    all_y = [v for vals in ys.values() for v in vals if math.isfinite(v)]
    if not all_y:
        raise EmptyDataError("no finite values to plot")
    ylo, yhi = min(all_y), max(all_y)
    if yhi == ylo:
        yhi = ylo + 1.0
    if xhi == xlo:
        xhi = xlo + 1.0

    def sx(v):
        return _ML + (v - xlo) / (xhi - xlo) * (_W - _ML - _MR)

    def sy(v):
        return _H - _MB - (v - ylo) / (yhi - ylo) * (_H - _MT - _MB)

    parts = []
    _svg_header(parts)
    _axes(parts, xlabel, ylabel, xlo, xhi, ylo, yhi, sx, sy)
    for idx, (name, vals) in enumerate(ys.items()):
        color = _COLORS[idx % len(_COLORS)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}"
                       for a, b in zip(x, vals) if math.isfinite(b))
        parts.append(f'<polyline points="{pts}" fill="none" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{_W - _MR - 6}" y="{_MT + 16 + 14 * idx}" '
                     f'font-size="12" text-anchor="end" '
                     f'fill="{color}">{name}</text>')
    for mx, my, label in markers:
        parts.append(f'<circle cx="{sx(mx):.2f}" cy="{sy(my):.2f}" r="4" '
                     f'fill="none" stroke="black" stroke-width="1.2"/>')
        parts.append(f'<text x="{sx(mx):.2f}" y="{sy(my) - 8:.2f}" '
                     f'font-size="10" text-anchor="middle">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def svg_grouped_bars(groups, series: dict, ylabel: str) -> str:
    """Grouped bar chart: one cluster per group, one bar per series."""
    groups = list(groups)
    if not groups or not series:
        raise EmptyDataError("nothing to plot")
    names = list(series)
    all_v = [v for vals in series.values() for v in vals
             if math.isfinite(v)]
    if not all_v:
        raise EmptyDataError("no finite values to plot")
    ylo, yhi = min(0.0, min(all_v)), max(0.0, max(all_v))
    if yhi == ylo:
        yhi = ylo + 1.0

    def sy(v):
        return _H - _MB - (v - ylo) / (yhi - ylo) * (_H - _MT - _MB)

    plot_w = _W - _ML - _MR
    cluster = plot_w / len(groups)
    bar = cluster * 0.8 / len(names)

    parts = []
    _svg_header(parts)
    parts.append(f'<g stroke="black" stroke-width="1" fill="none">'
                 f'<path d="M {_ML} {_MT} V {_H - _MB} H {_W - _MR}"/></g>')
    for t in _ticks(ylo, yhi):
        py = sy(t)
        parts.append(f'<line x1="{_ML - 5}" y1="{py:.2f}" x2="{_ML}" '
                     f'y2="{py:.2f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{py + 4:.2f}" font-size="11" '
                     f'text-anchor="end">{t:.4g}</text>')
    base_y = sy(0.0)
    for gi, group in enumerate(groups):
        x0 = _ML + gi * cluster + cluster * 0.1
        for si, name in enumerate(names):
            v = series[name][gi]
            if not math.isfinite(v):
                continue
            color = _COLORS[si % len(_COLORS)]
            top = min(sy(v), base_y)
            height = abs(sy(v) - base_y)
            parts.append(f'<rect x="{x0 + si * bar:.2f}" y="{top:.2f}" '
                         f'width="{bar * 0.9:.2f}" height="{height:.2f}" '
                         f'fill="{color}"/>')
        parts.append(f'<text x="{x0 + cluster * 0.4:.2f}" y="{_H - _MB + 16}" '
                     f'font-size="10" text-anchor="middle">{group}</text>')
    for si, name in enumerate(names):
        color = _COLORS[si % len(_COLORS)]
        parts.append(f'<text x="{_W - _MR - 6}" y="{_MT + 16 + 14 * si}" '
                     f'font-size="12" text-anchor="end" '
                     f'fill="{color}">{name}</text>')
    parts.append(f'<text x="16" y="{(_MT + _H - _MB) / 2:.1f}" font-size="13" '
                 f'text-anchor="middle" transform="rotate(-90 16 '
                 f'{(_MT + _H - _MB) / 2:.1f})">{ylabel}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
