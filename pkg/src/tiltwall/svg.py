"""Static SVG wall diagrams: beta horizontal, alpha vertical.

Everything upstream is exact; floats appear only when coordinates are
written out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .tilt import HyperbolaCurve, WallCurve, WallKind

HYPERBOLA_SAMPLES = 256


@dataclass(frozen=True)
class Viewport:
    beta_min: float
    beta_max: float
    alpha_max: float
    width: int = 640
    height: int = 400

    def __post_init__(self):
        if not self.beta_max > self.beta_min:
            raise ValueError("empty viewport: beta range has no width")
        if not self.alpha_max > 0:
            raise ValueError("empty viewport: alpha range has no height")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("empty viewport: pixel size must be positive")

    @property
    def sx(self) -> float:
        return self.width / (self.beta_max - self.beta_min)

    @property
    def sy(self) -> float:
        return self.height / self.alpha_max

    def x(self, beta) -> float:
        return (float(beta) - self.beta_min) * self.sx

    def y(self, alpha) -> float:
        return self.height - float(alpha) * self.sy


def _f(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _semicircle_path(wall: WallCurve, vp: Viewport) -> str:
    r = math.sqrt(wall.radius_sq)
    c = float(wall.center)
    y0 = _f(vp.y(0))
    return (
        f"M {_f(vp.x(c - r))} {y0} "
        f"A {_f(r * vp.sx)} {_f(r * vp.sy)} 0 0 1 {_f(vp.x(c + r))} {y0}"
    )


def _hyperbola_runs(hyp: HyperbolaCurve, vp: Viewport) -> list[list[tuple[float, float]]]:
    runs: list[list[tuple[float, float]]] = []
    cur: list[tuple[float, float]] = []
    for k in range(HYPERBOLA_SAMPLES + 1):
        beta = vp.beta_min + (vp.beta_max - vp.beta_min) * k / HYPERBOLA_SAMPLES
        a2 = hyp.alpha_sq_at(Fraction(beta))
        if a2 is None or a2 < 0:
            if cur:
                runs.append(cur)
            cur = []
            continue
        cur.append((vp.x(beta), vp.y(min(math.sqrt(a2), vp.alpha_max * 2))))
    if cur:
        runs.append(cur)
    return runs


def render_svg(
    walls: Sequence[WallCurve],
    hyperbola: Optional[HyperbolaCurve],
    bmt_disc: Optional[WallCurve],
    viewport: Viewport,
    vertical: Optional[Fraction] = None,
) -> str:
    vp = viewport
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{vp.width}" height="{vp.height}" '
        f'viewBox="0 0 {vp.width} {vp.height}">',
        '<defs><clipPath id="vp"><rect x="0" y="0" width="100%" height="100%"/></clipPath></defs>',
        '<g clip-path="url(#vp)">',
    ]
    if bmt_disc is not None and bmt_disc.kind is WallKind.SEMICIRCLE:
        d = _semicircle_path(bmt_disc, vp) + " Z"
        out.append(f'<path class="bmt" d="{d}" fill="#d8d8d8" stroke="none"/>')
    # axes
    ya = _f(vp.y(0))
    out.append(f'<line class="axis" x1="0" y1="{ya}" x2="{vp.width}" y2="{ya}" stroke="black"/>')
    if vp.beta_min <= 0 <= vp.beta_max:
        x0 = _f(vp.x(0))
        out.append(f'<line class="axis" x1="{x0}" y1="0" x2="{x0}" y2="{vp.height}" stroke="black"/>')
    for k in range(math.ceil(vp.beta_min), math.floor(vp.beta_max) + 1):
        xk = _f(vp.x(k))
        out.append(f'<text class="tick" x="{xk}" y="{_f(vp.height - 2)}" font-size="10">{k}</text>')
    if vertical is not None and vp.beta_min <= float(vertical) <= vp.beta_max:
        xv = _f(vp.x(vertical))
        out.append(f'<line class="vertical-wall" x1="{xv}" y1="0" x2="{xv}" y2="{vp.height}" stroke="gray" stroke-dasharray="4 3"/>')
    ordered = sorted(
        (w for w in walls if w.kind is WallKind.SEMICIRCLE),
        key=lambda w: (-w.radius_sq, w.center),
    )
    for w in ordered:
        out.append(f'<path class="wall" d="{_semicircle_path(w, vp)}" fill="none" stroke="blue"/>')
    if hyperbola is not None:
        for run in _hyperbola_runs(hyperbola, vp):
            pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in run)
            out.append(f'<polyline class="hyperbola" points="{pts}" fill="none" stroke="red"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def auto_viewport(walls: Sequence[WallCurve], extra: Sequence[WallCurve] = (), vertical: Optional[Fraction] = None) -> Viewport:
    """Smallest padded box showing every semicircle (and the vertical wall)."""
    lo, hi, top = math.inf, -math.inf, 0.0
    for w in list(walls) + list(extra):
        if w.kind is WallKind.SEMICIRCLE:
            a, b = w.extent()
            lo, hi = min(lo, a), max(hi, b)
            top = max(top, math.sqrt(w.radius_sq))
    if vertical is not None:
        lo, hi = min(lo, float(vertical)), max(hi, float(vertical))
    if lo > hi:
        lo, hi = -3.0, 3.0
    if top == 0:
        top = (hi - lo) / 2 or 1.0
    return Viewport(math.floor(lo - 1), math.ceil(hi + 1), top * 1.25)
