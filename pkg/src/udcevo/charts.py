"""Deterministic SVG charts: nested ring charts and per-key line series.

Ring arcs start at 12 o'clock and run clockwise, keys in the order given.
All coordinates are written with four decimals so output is byte-stable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence
from xml.sax.saxutils import escape

from .notation import class_order

DEFAULT_PALETTE: dict[str, str] = {
    "0": "#1f77b4",
    "01": "#1f77b4",  # same color as class 0
    "1": "#ff7f0e",
    "2": "#2ca02c",
    "3": "#d62728",
    "4": "#9467bd",
    "5": "#8c564b",
    "6": "#e377c2",
    "7": "#7f7f7f",
    "8": "#bcbd22",
    "9": "#17becf",
    "AUX": "#aec7e8",
    "a": "#393b79", "b": "#5254a3", "c": "#6b6ecf", "d": "#9c9ede",
    "e": "#637939", "f": "#8ca252", "g": "#b5cf6b", "h": "#cedb9c",
    "k": "#8c6d31",
}
_FALLBACK = ("#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1")


class EmptyRing(ValueError):
    pass


class EmptySeries(ValueError):
    pass


def _f(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _color(palette: Mapping[str, str], key: str, i: int) -> str:
    return palette.get(key) or _FALLBACK[i % len(_FALLBACK)]


@dataclass
class RingChartSpec:
    """Rings listed innermost first; each maps key -> count."""

    rings: list[tuple[str, dict[str, int]]]
    palette: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    size: int = 400
    title: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.rings:
            raise EmptyRing("a ring chart needs at least one ring")
        for label, counts in self.rings:
            if sum(counts.values()) <= 0:
                raise EmptyRing(f"ring {label!r} has no counts")


@dataclass(frozen=True)
class Arc:
    ring: int
    key: str
    start_deg: float  # clockwise from 12 o'clock
    sweep_deg: float
    count: int


def ring_arcs(spec: RingChartSpec) -> list[Arc]:
    """Angular layout of every non-zero slice."""
    arcs = []
    for r, (_, counts) in enumerate(spec.rings):
        total = sum(counts.values())
        start = 0.0
        for key, n in counts.items():
            if n <= 0:
                continue
            sweep = 360.0 * n / total
            arcs.append(Arc(r, key, start, sweep, n))
            start += sweep
    return arcs


def _point(cx: float, cy: float, radius: float, deg: float) -> tuple[float, float]:
    rad = math.radians(deg)
    return cx + radius * math.sin(rad), cy - radius * math.cos(rad)


def _sector_path(cx, cy, r_in, r_out, start, sweep) -> str:
    end = start + sweep
    large = 1 if sweep > 180.0 else 0
    x0, y0 = _point(cx, cy, r_out, start)
    x1, y1 = _point(cx, cy, r_out, end)
    x2, y2 = _point(cx, cy, r_in, end)
    x3, y3 = _point(cx, cy, r_in, start)
    ro, ri = _f(r_out), _f(r_in)
    return (
        f"M {_f(x0)} {_f(y0)} A {ro} {ro} 0 {large} 1 {_f(x1)} {_f(y1)} "
        f"L {_f(x2)} {_f(y2)} A {ri} {ri} 0 {large} 0 {_f(x3)} {_f(y3)} Z"
    )


def _annulus_path(cx, cy, r_in, r_out) -> str:
    # two half-circle arcs per edge; evenodd fill leaves the hole
    def circle(r):
        top, bottom = _point(cx, cy, r, 0.0), _point(cx, cy, r, 180.0)
        rr = _f(r)
        return (
            f"M {_f(top[0])} {_f(top[1])} A {rr} {rr} 0 1 1 {_f(bottom[0])} {_f(bottom[1])} "
            f"A {rr} {rr} 0 1 1 {_f(top[0])} {_f(top[1])} Z"
        )

    return circle(r_out) + " " + circle(r_in)


def emit_ring_svg(spec: RingChartSpec) -> str:
    size = spec.size
    cx = cy = size / 2
    outer = size / 2 - 10
    hole = outer * 0.2
    width = (outer - hole) / len(spec.rings)
    arcs = ring_arcs(spec)
    keys_seen: list[str] = []

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
    ]
    if spec.title:
        parts.append(f"<title>{escape(spec.title)}</title>")
    for r, (label, _) in enumerate(spec.rings):
        r_in = hole + r * width
        r_out = r_in + width - 1
        parts.append(f'<g class="ring" data-ring="{r}" data-label="{escape(label)}">')
        for arc in (a for a in arcs if a.ring == r):
            if arc.key not in keys_seen:
                keys_seen.append(arc.key)
            color = _color(spec.palette, arc.key, keys_seen.index(arc.key))
            attrs = (
                f'data-key="{escape(arc.key)}" data-count="{arc.count}" '
                f'data-start="{_f(arc.start_deg)}" data-sweep="{_f(arc.sweep_deg)}" fill="{color}" '
                'stroke="#ffffff" stroke-width="0.5"'
            )
            if arc.sweep_deg >= 360.0:
                d = _annulus_path(cx, cy, r_in, r_out)
                parts.append(f'<path class="arc" {attrs} fill-rule="evenodd" d="{d}"/>')
            else:
                d = _sector_path(cx, cy, r_in, r_out, arc.start_deg, arc.sweep_deg)
                parts.append(f'<path class="arc" {attrs} d="{d}"/>')
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


class ValueKind(str, enum.Enum):
    COUNT = "count"
    PERCENTAGE = "percentage"


@dataclass
class SeriesChartSpec:
    x_labels: list[str]
    series: dict[str, list[float]]
    value_kind: ValueKind = ValueKind.COUNT
    palette: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    width: int = 640
    height: int = 400
    title: Optional[str] = None

    def __post_init__(self) -> None:
        self.value_kind = ValueKind(self.value_kind)
        if not self.x_labels or not self.series:
            raise EmptySeries("a series chart needs editions and at least one series")
        for key, values in self.series.items():
            if len(values) != len(self.x_labels):
                raise ValueError(f"series {key!r} has {len(values)} values for {len(self.x_labels)} editions")


_MARGIN = {"left": 56, "right": 90, "top": 24, "bottom": 40}


def series_geometry(spec: SeriesChartSpec) -> tuple[float, dict[str, list[tuple[float, float]]]]:
    """Y-axis maximum and pixel coordinates of every point."""
    if spec.value_kind is ValueKind.PERCENTAGE:
        y_max = 100.0
    else:
        y_max = max((v for vals in spec.series.values() for v in vals), default=0.0) or 1.0
    left, top = _MARGIN["left"], _MARGIN["top"]
    plot_w = spec.width - left - _MARGIN["right"]
    plot_h = spec.height - top - _MARGIN["bottom"]
    n = len(spec.x_labels)

    def x_at(i: int) -> float:
        return left + (plot_w / 2 if n == 1 else plot_w * i / (n - 1))

    points = {
        key: [(x_at(i), top + plot_h * (1 - v / y_max)) for i, v in enumerate(vals)]
        for key, vals in spec.series.items()
    }
    return y_max, points


def emit_series_svg(spec: SeriesChartSpec) -> str:
    y_max, points = series_geometry(spec)
    w, h = spec.width, spec.height
    left, top = _MARGIN["left"], _MARGIN["top"]
    plot_w = w - left - _MARGIN["right"]
    plot_h = h - top - _MARGIN["bottom"]
    bottom = top + plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">',
    ]
    if spec.title:
        parts.append(f"<title>{escape(spec.title)}</title>")
    parts.append('<g class="grid" stroke="#dddddd" stroke-width="1">')
    for i in range(5):
        frac = i / 4
        y = top + plot_h * (1 - frac)
        parts.append(
            f'<line class="gridline" data-value="{_f(y_max * frac)}" x1="{left}" y1="{_f(y)}" '
            f'x2="{left + plot_w}" y2="{_f(y)}"/>'
        )
    parts.append("</g>")
    parts.append('<g class="axis-labels" fill="#333333">')
    for i in range(5):
        frac = i / 4
        y = top + plot_h * (1 - frac)
        value = y_max * frac
        text = f"{value:.0f}%" if spec.value_kind is ValueKind.PERCENTAGE else f"{value:g}"
        parts.append(f'<text x="{left - 6}" y="{_f(y + 4)}" text-anchor="end">{text}</text>')
    xs = next(iter(points.values()))
    for (x, _), label in zip(xs, spec.x_labels):
        parts.append(f'<text x="{_f(x)}" y="{bottom + 18}" text-anchor="middle">{escape(label)}</text>')
    parts.append("</g>")
    for i, (key, pts) in enumerate(points.items()):
        color = _color(spec.palette, key, i)
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in pts)
        parts.append(
            f'<polyline class="series" data-key="{escape(key)}" fill="none" stroke="{color}" '
            f'stroke-width="2" points="{coords}"/>'
        )
        lx, ly = pts[-1]
        parts.append(f'<text x="{_f(lx + 6)}" y="{_f(ly + 4)}" fill="{color}">{escape(key)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def ring_spec_from_stats(stats: Sequence, palette: Optional[dict[str, str]] = None, size: int = 400) -> RingChartSpec:
    """One ring per edition (first edition innermost) over main classes."""
    rings = []
    for s in stats:
        order = [c for c in class_order(s.mode) if c in s.by_main_class]
        order += [c for c in s.by_main_class if c not in order]
        rings.append((s.label, {c: s.by_main_class[c] for c in order}))
    return RingChartSpec(rings, palette or dict(DEFAULT_PALETTE), size)
