"""Potential tilt walls on a vertical line, and the closed-form wall bounds.

A destabilizing class F of E (class v) on the line beta = beta0 is described
in beta0-twisted coordinates (r, c', d'); (R', C', D') is the twisted class
of v and Delta = Q(v).  The necessary conditions are

    (C1) 0 < c' < C'
    (C2) (c'^2 - Delta)/2 <= r d' <= c'^2/2
    (C3) the same window for G = E - F
    (C4) Q(E, F) >= 0
    (C5) r C' - R' c' != 0
    (C6) alpha^2 = 2 (d' C' - D' c') / (r C' - R' c') > 0
    (L)  the untwisted class lies in the lattice: r, c in Z, c^2/2 - d in Z.
    (B)  when ch3(v) is known, the BMT inequality holds for v at the point
         where the wall meets the line.

The output is a list of *potential* walls; deciding which are actual walls is
sheaf theory and not attempted here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _kernels
from .chern import ChernCharacter, ChernTruncated, RationalLike, as_rational, format_rational, line_bundle_ch
from .tilt import (
    ClassLike,
    WallCurve,
    WallKind,
    bmt_expression,
    bmt_region,
    numerical_wall,
    q_tilt,
    truncate,
    twist_truncated,
    vertical_wall,
)

LEFT, RIGHT = "left", "right"


class WallFinderError(ValueError):
    pass


class OnVerticalWallError(WallFinderError):
    pass


class NonPositiveDegreeError(WallFinderError):
    pass


class NoWallsError(WallFinderError):
    """Rank and degree vanish: there are no walls at all."""


@dataclass(frozen=True)
class WallCandidate:
    twisted: ChernTruncated
    untwisted: ChernTruncated
    alpha_sq: Fraction
    wall: WallCurve

    def to_json(self) -> dict:
        return {
            "r": format_rational(self.untwisted.r),
            "c_twisted": format_rational(self.twisted.c),
            "d_twisted": format_rational(self.twisted.d),
            "c": format_rational(self.untwisted.c),
            "d": format_rational(self.untwisted.d),
        }


@dataclass(frozen=True)
class WallReport:
    wall: WallCurve
    witnesses: tuple[WallCandidate, ...]
    line: Fraction

    @property
    def alpha_sq_on_line(self) -> Fraction:
        return self.witnesses[0].alpha_sq

    def to_json(self) -> dict:
        return {
            "wall": self.wall.to_json(),
            "alpha_sq_on_line": format_rational(self.alpha_sq_on_line),
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def reports_to_json(line, reports: Sequence[WallReport]) -> dict:
    return {"line": None if line is None else format_rational(line), "walls": [r.to_json() for r in reports]}


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def in_truncated_lattice(r, c, d) -> bool:
    return _is_int(r) and _is_int(c) and _is_int(c * c / 2 - d)


def _check_preconditions(v: ClassLike, beta0: Fraction) -> ChernTruncated:
    R, C, D = truncate(v)
    if R == 0 and C == 0:
        raise NoWallsError("rank and degree vanish: no walls at all")
    vw = vertical_wall(v)
    if vw is not None and vw == beta0:
        raise OnVerticalWallError(f"beta0 = {beta0} is the vertical wall of v")
    tw = twist_truncated(v, beta0)
    if tw.c <= 0:
        raise NonPositiveDegreeError(f"twisted degree {tw.c} <= 0 at beta0 = {beta0}; pass -v instead")
    return tw


def passes_bmt(v: ClassLike, alpha_sq: Fraction, beta: Fraction) -> bool:
    if not isinstance(v, ChernCharacter):
        return True
    return bmt_expression(v, alpha_sq, beta) >= 0


def _group(candidates: Iterable[WallCandidate], beta0: Fraction, v: ClassLike) -> list[WallReport]:
    by_wall: dict[WallCurve, list[WallCandidate]] = {}
    for cand in candidates:
        if not passes_bmt(v, cand.alpha_sq, beta0):
            continue
        by_wall.setdefault(cand.wall, []).append(cand)
    reports = [
        WallReport(wall, tuple(sorted(ws, key=lambda w: tuple(w.twisted))), beta0)
        for wall, ws in by_wall.items()
    ]
    reports.sort(key=lambda rep: (-rep.wall.radius_sq, rep.wall.center))
    return reports


class _LineProblem:
    """Checks for one (v, beta0); shared by the case split of the enumerator."""

    def __init__(self, v: ClassLike, beta0: Fraction):
        self.v = truncate(v)
        self.beta0 = beta0
        self.tw = _check_preconditions(v, beta0)
        self.delta = q_tilt(self.v)

    def untwist(self, r, c_t, d_t):
        b = self.beta0
        c = c_t + b * r
        return c, d_t + b * c - b * b / 2 * r

    def window_f(self, c_t):
        return (c_t * c_t - self.delta) / 2, c_t * c_t / 2

    def window_g(self, c_t):
        cg = self.tw.c - c_t
        return (cg * cg - self.delta) / 2, cg * cg / 2

    def check(self, r, c, d) -> Optional[WallCandidate]:
        if not in_truncated_lattice(r, c, d):
            return None
        R, C, D = self.tw
        _, c_t, d_t = twist_truncated((r, c, d), self.beta0)
        if not 0 < c_t < C:
            return None
        lo, hi = self.window_f(c_t)
        if not lo <= r * d_t <= hi:
            return None
        lo, hi = self.window_g(c_t)
        if not lo <= (R - r) * (D - d_t) <= hi:
            return None
        den = r * C - R * c_t
        if den == 0:
            return None
        alpha_sq = 2 * (d_t * C - D * c_t) / den
        if alpha_sq <= 0:
            return None
        # Implied by the checks above (the pair lies on one ray of Z at the wall point).
        assert C * c_t - R * d_t - D * r >= 0
        wall = numerical_wall(self.v, (r, c, d))
        assert wall.kind is WallKind.SEMICIRCLE and wall.contains(alpha_sq, self.beta0)
        return WallCandidate(ChernTruncated(Fraction(r), c_t, d_t), ChernTruncated(Fraction(r), c, d), alpha_sq, wall)


def _int_range(lo: Fraction, hi: Fraction) -> range:
    return range(math.ceil(lo), math.floor(hi) + 1)


def _lattice_d_values(c: Fraction, d_lo: Fraction, d_hi: Fraction):
    """d in [d_lo, d_hi] with c^2/2 - d integral."""
    base = c * c / 2
    for k in _int_range(d_lo - base, d_hi - base):
        yield base + k


def _sorted_pair(a, b):
    return (a, b) if a <= b else (b, a)


def enumerate_walls_on_line(v: ClassLike, beta0: RationalLike) -> list[WallReport]:
    """All potential walls for v crossing the vertical line beta = beta0.

    Complete: every lattice class passing (C1)-(C6) and (L) is found.  Reports
    are sorted by radius, largest first; each carries every witness class,
    both F and its complement E - F.
    """
    b = as_rational(beta0)
    prob = _LineProblem(v, b)
    R, C, D = prob.tw
    q = b.denominator
    found: dict[tuple, WallCandidate] = {}

    def consider(r, c, d):
        cand = prob.check(Fraction(r), c, d)
        if cand is not None:
            found.setdefault(tuple(cand.twisted), cand)

    for k in range(1, math.ceil(C * q)):
        c_t = Fraction(k, q)
        if c_t >= C:
            break
        f_lo, f_hi = prob.window_f(c_t)
        g_lo, g_hi = prob.window_g(c_t)
        # (a) r = 0: then c = c' and the G-window bounds R (D' - d').
        if R != 0 and _is_int(c_t) and f_lo <= 0:
            lo, hi = _sorted_pair(g_lo / R, g_hi / R)
            for d in _lattice_d_values(c_t, D - hi + b * c_t, D - lo + b * c_t):
                consider(0, c_t, d)
        # (b) d' = 0, r != 0: the G-window bounds (R - r) D'.
        if D != 0 and f_lo <= 0:
            lo, hi = _sorted_pair(g_lo / D, g_hi / D)
            for r in _int_range(R - hi, R - lo):
                if r == 0:
                    continue
                c, d = prob.untwist(Fraction(r), c_t, Fraction(0))
                consider(r, c, d)
        # (c) r != 0, d' != 0: |d'| >= 1/(2 q^2) bounds |r| via the F-window.
        m = max(abs(f_lo), abs(f_hi))
        r_max = math.floor(2 * q * q * m)
        if D != 0:
            # r d' and (R - r)(D' - d') bounded => R d' + D' r bounded.
            strip = abs(R * D) + m + max(abs(g_lo), abs(g_hi))
            r_max = min(r_max, math.floor((strip + abs(R) * m) / abs(D)))
        for r in range(-r_max, r_max + 1):
            if r == 0:
                continue
            c = c_t + b * r
            if not _is_int(c):
                continue
            lo, hi = _sorted_pair(f_lo / r, f_hi / r)
            shift = b * c - b * b / 2 * r
            for d in _lattice_d_values(c, lo + shift, hi + shift):
                consider(r, c, d)

    return _group(found.values(), b, v)


def brute_force_walls(v: ClassLike, beta0: RationalLike, bound: int, backend: Optional[str] = None) -> list[WallReport]:
    """Exhaustive scan of untwisted classes with |r|, |c|, |d| <= bound.

    Independent of :func:`enumerate_walls_on_line`: all conditions are tested
    on the whole box by the integer kernel.  v must have integral rank and
    degree and ch2 in (1/2)Z.
    """
    b = as_rational(beta0)
    tw = _check_preconditions(v, b)
    R, C, D = truncate(v)
    if not (_is_int(R) and _is_int(C) and _is_int(2 * D)):
        raise WallFinderError("brute force scan needs ch0, ch1 integral and ch2 in (1/2)Z")
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    p, q = b.numerator, b.denominator
    CC = q * tw.c
    DD = 2 * q * q * tw.d
    delta = C * C - 2 * R * D
    mask = _kernels.box_mask(bound, p, q, int(R), int(CC), int(DD), int(delta), backend=backend)
    cands = []
    for i, j, k in zip(*mask.nonzero()):
        r, c, d = Fraction(int(i) - bound), Fraction(int(j) - bound), Fraction(int(k) - 2 * bound, 2)
        _, c_t, d_t = twist_truncated((r, c, d), b)
        alpha_sq = 2 * (d_t * tw.c - tw.d * c_t) / (r * tw.c - tw.r * c_t)
        cands.append(WallCandidate(ChernTruncated(r, c_t, d_t), ChernTruncated(r, c, d), alpha_sq, numerical_wall(v, (r, c, d))))
    return _group(cands, b, v)


def restrict_to_box(reports: Sequence[WallReport], bound: int) -> list[WallReport]:
    """Keep witnesses whose untwisted class lies in the box, dropping empty reports."""
    out = []
    for rep in reports:
        ws = tuple(w for w in rep.witnesses if all(abs(x) <= bound for x in w.untwisted))
        if ws:
            out.append(WallReport(rep.wall, ws, rep.line))
    return out


def two_line_bundle_class(m: int, n: int, i: int, j: int) -> ChernCharacter:
    """i ch(O(m)) - j ch(O(n))."""
    return i * line_bundle_ch(m) - j * line_bundle_ch(n)


def smallest_wall(m: int, n: int, i: int, j: int) -> WallCurve:
    """Smallest wall for i ch(O(m)) - j ch(O(n)): center (m+n)/2, radius (m-n)/2."""
    if n >= m:
        raise ValueError(f"need n < m, got m={m}, n={n}")
    if i <= 0 or j <= 0:
        raise ValueError("i and j must be positive")
    wall = WallCurve.from_coefficients(1, -(m + n), m * n)
    v = two_line_bundle_class(m, n, i, j)
    assert numerical_wall(v, line_bundle_ch(m)) == wall
    return wall


def largest_wall_bound(v: ChernCharacter, side: str = LEFT) -> WallCurve:
    """Semicircle nu(v) = nu(O(-1)) (left) or nu(O(1)) (right) bounding all walls on that side.

    Only for v = (1, 0, -d, e)."""
    if v.ch0 != 1 or v.ch1 != 0:
        raise ValueError(f"expected a class (1, 0, -d, e), got {v!r}")
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return numerical_wall(v, line_bundle_ch(-1 if side == LEFT else 1))


def _on_side(beta: Fraction, vw: Optional[Fraction], side: str) -> bool:
    if vw is None:
        return True
    return beta < vw if side == LEFT else beta > vw


def _grid_lines(wall: WallCurve, step: Fraction = Fraction(1, 2), inset: Fraction = Fraction(1, 8)) -> list[Fraction]:
    """Grid points strictly inside the beta-extent of wall, plus the endpoints moved inward."""
    lo, hi = wall.extent()
    out = set()
    k_lo, k_hi = math.floor(lo / step) - 1, math.ceil(hi / step) + 1
    out.update(k * step for k in range(k_lo, k_hi + 1))
    c, r2 = wall.center, wall.radius_sq
    root = Fraction(math.isqrt(r2.numerator), math.isqrt(r2.denominator))
    if root * root == r2:
        out.update((c - root + inset, c + root - inset))
    else:
        out.update((Fraction(math.ceil(lo / inset)) * inset, Fraction(math.floor(hi / inset)) * inset))
    return sorted(x for x in out if wall.crosses_line(x))


def _walls_on_line_any_orientation(v: ClassLike, beta: Fraction) -> list[WallReport]:
    tw = twist_truncated(v, beta)
    if tw.c == 0:
        return []
    w = v if tw.c > 0 else -v if isinstance(v, ChernCharacter) else ChernTruncated(*(-x for x in truncate(v)))
    return enumerate_walls_on_line(w, beta)


def default_scan_lines(v: ChernCharacter, side: str) -> Optional[list[Fraction]]:
    """Half-integer lines across the largest-wall bound, or None when no bound applies."""
    if v.ch0 == 1 and v.ch1 == 0:
        vw = vertical_wall(v)
        return [b for b in _grid_lines(largest_wall_bound(v, side)) if _on_side(b, vw, side)]
    return None


def scan_all_walls(
    v: ChernCharacter,
    side: str = LEFT,
    lines: Optional[Sequence[RationalLike]] = None,
    max_rounds: int = 12,
) -> list[WallReport]:
    """Union of the potential walls on a finite set of lines on one side of the vertical wall.

    Only walls crossing at least one scanned line can be found.  Without
    explicit lines, rank-one degree-zero classes use the grid across the
    largest-wall bound; other classes start from the BMT disc (or a line next
    to the vertical wall) and keep adding grid lines across every wall found
    until nothing new appears.
    """
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    R, C, _ = truncate(v)
    if R == 0 and C == 0:
        raise NoWallsError("rank and degree vanish: no walls at all")
    vw = vertical_wall(v)
    walls: dict[WallCurve, WallReport] = {}

    def run(line_set):
        for b in line_set:
            for rep in _walls_on_line_any_orientation(v, b):
                if _on_side(rep.wall.center, vw, side):
                    walls.setdefault(rep.wall, rep)

    if lines is not None:
        run(sorted({as_rational(b) for b in lines if _on_side(as_rational(b), vw, side) and as_rational(b) != vw}))
    else:
        grid = default_scan_lines(v, side)
        if grid is not None:
            run(grid)
        else:
            seen: set[Fraction] = set()
            bmt = bmt_region(v)
            if bmt.kind is WallKind.SEMICIRCLE and _on_side(bmt.center, vw, side):
                todo = set(_grid_lines(bmt))
            elif vw is not None:
                h = Fraction(1, 2)
                todo = {(math.ceil(vw / h) - 1) * h if side == LEFT else (math.floor(vw / h) + 1) * h}
            else:
                raise WallFinderError("no vertical wall and no BMT disc: pass explicit lines")
            for _ in range(max_rounds):
                todo = {b for b in todo - seen if _on_side(b, vw, side)}
                if not todo:
                    break
                seen |= todo
                run(sorted(todo))
                todo = set()
                for wall in walls:
                    todo.update(_grid_lines(wall))
    reports = list(walls.values())
    reports.sort(key=lambda rep: (-rep.wall.radius_sq, rep.wall.center))
    return reports
