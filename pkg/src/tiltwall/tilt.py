"""Slope functions, the Bogomolov form and numerical walls in tilt stability.

Points of the (alpha, beta) half plane are stored with alpha squared so that
everything stays rational.  Walls for a class (R, C, D) against (r, c, d) are

    x alpha^2 + x beta^2 + y beta + z = 0,
    x = Rc - Cr,  y = 2(Dr - Rd),  z = 2(Cd - Dc).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Optional, Union

from .chern import (
    ChernCharacter,
    ChernTruncated,
    RationalLike,
    as_rational,
    format_rational,
    twist,
)

INF = math.inf

ClassLike = Union[ChernCharacter, ChernTruncated, tuple]


class NumericallyTrivialError(ValueError):
    """Both numerator and denominator of a slope vanish at the given point."""


def truncate(v: ClassLike) -> ChernTruncated:
    if isinstance(v, ChernCharacter):
        return v.truncated()
    if isinstance(v, ChernTruncated):
        return v
    r, c, d = (as_rational(x) for x in tuple(v)[:3])
    return ChernTruncated(r, c, d)


def twist_truncated(v: ClassLike, beta: RationalLike) -> ChernTruncated:
    r, c, d = truncate(v)
    b = as_rational(beta)
    return ChernTruncated(r, c - b * r, d - b * c + b * b / 2 * r)


@dataclass(frozen=True)
class TiltPoint:
    alpha_sq: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha_sq", as_rational(self.alpha_sq))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.alpha_sq <= 0:
            raise ValueError(f"alpha must be positive, got alpha^2 = {self.alpha_sq}")

    @classmethod
    def from_alpha(cls, alpha: RationalLike, beta: RationalLike) -> "TiltPoint":
        a = as_rational(alpha)
        if a <= 0:
            raise ValueError("alpha must be positive")
        return cls(a * a, beta)


def mu_slope(v: ChernCharacter, beta: RationalLike = 0):
    """Twisted slope ch1/ch0 - beta, +inf in rank zero."""
    if v.ch0 == 0:
        return INF
    return v.ch1 / v.ch0 - as_rational(beta)


def nu_parts(v: ClassLike, p: TiltPoint) -> tuple[Fraction, Fraction]:
    """(numerator, denominator) of nu_{alpha,beta}(v)."""
    r, c, d = twist_truncated(v, p.beta)
    return d - p.alpha_sq / 2 * r, c


def nu_slope(v: ClassLike, p: TiltPoint):
    num, den = nu_parts(v, p)
    if den == 0:
        if num == 0:
            raise NumericallyTrivialError(f"nu slope of {v!r} is 0/0 at {p}")
        return INF
    return num / den


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def slope_cmp(v: ClassLike, w: ClassLike, p: TiltPoint) -> int:
    """Compare nu(v) with nu(w) at p.  Returns -1, 0 or 1."""
    nv, dv = nu_parts(v, p)
    nw, dw = nu_parts(w, p)
    if (nv, dv) == (0, 0) or (nw, dw) == (0, 0):
        raise NumericallyTrivialError("slope is 0/0 at this point")
    if dv == 0 and dw == 0:
        return 0
    if dv == 0:
        return 1
    if dw == 0:
        return -1
    return _sign(nv * dw - nw * dv) * _sign(dv * dw)


def q_tilt(v: ClassLike, w: Optional[ClassLike] = None) -> Fraction:
    """Bogomolov form Cc - Rd - Dr; with one argument, the discriminant c^2 - 2rd."""
    r, c, d = truncate(v)
    R, C, D = truncate(v if w is None else w)
    return C * c - R * d - D * r


def lemma22_window(v_e: ClassLike, v_f: ClassLike) -> bool:
    """Necessary condition on a destabilizing pair F -> E -> G = E - F."""
    e = truncate(v_e)
    f = truncate(v_f)
    g = ChernTruncated(*(a - b for a, b in zip(e, f)))
    qf, qg, qe = q_tilt(f), q_tilt(g), q_tilt(e)
    return qf >= 0 and qg >= 0 and qf + qg <= qe and q_tilt(e, f) >= 0


class WallKind(str, Enum):
    SEMICIRCLE = "semicircle"
    VERTICAL = "vertical"
    EVERYWHERE = "degenerate-everywhere"
    NOWHERE = "degenerate-nowhere"


def _normalize(x: Fraction, y: Fraction, z: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    coeffs = [Fraction(t) for t in (x, y, z)]
    if all(t == 0 for t in coeffs):
        return tuple(coeffs)
    den = reduce(math.lcm, (t.denominator for t in coeffs))
    ints = [int(t * den) for t in coeffs]
    g = reduce(math.gcd, (abs(t) for t in ints))
    lead = next(t for t in ints if t != 0)
    s = 1 if lead > 0 else -1
    return tuple(Fraction(s * t // g) for t in ints)


@dataclass(frozen=True)
class WallCurve:
    """The curve x alpha^2 + x beta^2 + y beta + z = 0, normalized."""

    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def from_coefficients(cls, x, y, z) -> "WallCurve":
        return cls(*_normalize(as_rational(x), as_rational(y), as_rational(z)))

    @property
    def kind(self) -> WallKind:
        if self.x != 0:
            if self.y * self.y - 4 * self.x * self.z > 0:
                return WallKind.SEMICIRCLE
            return WallKind.NOWHERE
        if self.y != 0:
            return WallKind.VERTICAL
        return WallKind.EVERYWHERE if self.z == 0 else WallKind.NOWHERE

    @property
    def center(self) -> Optional[Fraction]:
        if self.kind is not WallKind.SEMICIRCLE:
            return None
        return -self.y / (2 * self.x)

    @property
    def radius_sq(self) -> Optional[Fraction]:
        if self.kind is not WallKind.SEMICIRCLE:
            return None
        return self.y * self.y / (4 * self.x * self.x) - self.z / self.x

    @property
    def vertical_beta(self) -> Optional[Fraction]:
        if self.kind is not WallKind.VERTICAL:
            return None
        return -self.z / self.y

    def __call__(self, alpha_sq, beta) -> Fraction:
        a, b = Fraction(alpha_sq), Fraction(beta)
        return self.x * (a + b * b) + self.y * b + self.z

    def contains(self, alpha_sq, beta) -> bool:
        return self(alpha_sq, beta) == 0

    def crosses_line(self, beta) -> bool:
        """True iff the wall meets {beta = beta0} at some alpha > 0."""
        b = Fraction(beta)
        if self.kind is WallKind.SEMICIRCLE:
            return (b - self.center) ** 2 < self.radius_sq
        if self.kind is WallKind.VERTICAL:
            return self.vertical_beta == b
        return self.kind is WallKind.EVERYWHERE

    def alpha_sq_on_line(self, beta) -> Optional[Fraction]:
        if self.kind is not WallKind.SEMICIRCLE or not self.crosses_line(beta):
            return None
        b = Fraction(beta)
        return self.radius_sq - (b - self.center) ** 2

    def extent(self) -> tuple[float, float]:
        """Floating-point beta-extent, for display and line selection only."""
        r = math.sqrt(self.radius_sq)
        return float(self.center) - r, float(self.center) + r

    def disc_within(self, other: "WallCurve") -> bool:
        """Closed disc of self contained in the closed disc of other (both semicircles)."""
        ra2, rb2 = self.radius_sq, other.radius_sq
        if ra2 > rb2:
            return False
        dc2 = (self.center - other.center) ** 2
        s = rb2 + ra2 - dc2  # (rb - ra)^2 >= dc^2  <=>  s >= 2 ra rb
        return s >= 0 and s * s >= 4 * ra2 * rb2

    def nested_with(self, other: "WallCurve") -> bool:
        return self.disc_within(other) or other.disc_within(self)

    def intersection(self, other: "WallCurve") -> Optional[tuple[Fraction, Fraction]]:
        """A common point (alpha^2, beta) with alpha^2 >= 0, or None.

        Identical curves return the top point (or any point) of the curve."""
        if self == other:
            if self.kind is WallKind.SEMICIRCLE:
                return self.radius_sq, self.center
            if self.kind is WallKind.VERTICAL:
                return Fraction(1), self.vertical_beta
            return None
        # Eliminate alpha^2 + beta^2 between the two equations.
        a = self.y * other.x - other.y * self.x
        b = self.z * other.x - other.z * self.x
        if a == 0:
            return None
        beta = -b / a
        host = self if self.x != 0 else other
        if host.x == 0:
            return None
        alpha_sq = -(beta * beta + (host.y * beta + host.z) / host.x)
        if alpha_sq < 0:
            return None
        return alpha_sq, beta

    def equation(self) -> str:
        if self.kind is WallKind.SEMICIRCLE:
            c = self.center
            if c == 0:
                lhs = "alpha^2 + beta^2"
            else:
                lhs = f"alpha^2 + (beta {'+' if c < 0 else '-'} {format_rational(abs(c))})^2"
            return f"{lhs} = {format_rational(self.radius_sq)}"
        if self.kind is WallKind.VERTICAL:
            return f"beta = {format_rational(self.vertical_beta)}"
        return self.kind.value

    def to_json(self) -> dict:
        fmt = lambda t: None if t is None else format_rational(t)
        return {
            "x": fmt(self.x),
            "y": fmt(self.y),
            "z": fmt(self.z),
            "kind": self.kind.value,
            "center": fmt(self.center),
            "radius_sq": fmt(self.radius_sq),
        }

    @classmethod
    def from_json(cls, data: dict) -> "WallCurve":
        return cls.from_coefficients(data["x"], data["y"], data["z"])


def numerical_wall(v: ClassLike, w: ClassLike) -> WallCurve:
    """Locus nu(v) = nu(w)."""
    R, C, D = truncate(v)
    r, c, d = truncate(w)
    return WallCurve.from_coefficients(R * c - C * r, 2 * (D * r - R * d), 2 * (C * d - D * c))


@dataclass(frozen=True)
class HyperbolaCurve:
    """A alpha^2 - A beta^2 + B beta + C0 = 0, the locus nu(v) = 0."""

    a: Fraction
    b: Fraction
    c0: Fraction

    def __call__(self, alpha_sq, beta) -> Fraction:
        al, be = Fraction(alpha_sq), Fraction(beta)
        return self.a * al - self.a * be * be + self.b * be + self.c0

    def alpha_sq_at(self, beta) -> Optional[Fraction]:
        """alpha^2 of the curve over beta, or None when A = 0."""
        if self.a == 0:
            return None
        be = Fraction(beta)
        return (self.a * be * be - self.b * be - self.c0) / self.a

    @property
    def vertex(self) -> Optional[Fraction]:
        if self.a == 0:
            return None
        return self.b / (2 * self.a)


def hyperbola(v: ClassLike) -> HyperbolaCurve:
    R, C, D = truncate(v)
    return HyperbolaCurve(R, 2 * C, -2 * D)


def vertical_wall(v: ClassLike) -> Optional[Fraction]:
    """beta = C/R, the unique vertical numerical wall; None in rank zero."""
    R, C, _ = truncate(v)
    return C / R if R != 0 else None


def admits_walls(v: ClassLike) -> bool:
    """False when rank and degree both vanish: then no numerical walls exist."""
    R, C, _ = truncate(v)
    return not (R == 0 and C == 0)


def bmt_coefficients(v: ChernCharacter) -> tuple[Fraction, Fraction, Fraction]:
    """(Q, x, y) with BMT expression = Q alpha^2 + Q beta^2 + x beta + y."""
    r, c, d, e = v
    return c * c - 2 * r * d, 6 * r * e - 2 * c * d, 4 * d * d - 6 * c * e


def bmt_expression(v: ChernCharacter, alpha_sq, beta) -> Fraction:
    """alpha^2 Q(v) + 4 (ch2^beta)^2 - 6 ch1^beta ch3^beta, evaluated directly."""
    _, c1, c2, c3 = twist(v, beta)
    return as_rational(alpha_sq) * q_tilt(v) + 4 * c2 * c2 - 6 * c1 * c3


def bmt_region(v: ChernCharacter) -> WallCurve:
    """Boundary of the region excluded by the BMT inequality."""
    return WallCurve.from_coefficients(*bmt_coefficients(v))
