"""Bridgeland central charge, the form Q_{alpha,beta,K} and wall crossings along paths.

    Z_{alpha,beta,s}(v) = -ch3^beta + (s + 1/6) alpha^2 ch1^beta
                          + i (ch2^beta - alpha^2/2 ch0)

The numerical wall of v against w is the zero set of
Re Z(v) Im Z(w) - Re Z(w) Im Z(v), a polynomial of degree at most 4 in
(alpha, beta) with only even powers of alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chern import ChernCharacter, RationalLike, as_rational, format_rational, twist
from .tilt import INF, TiltPoint, hyperbola, nu_parts, q_tilt

DEFAULT_TOL = Fraction(1, 2**20)


class DegenerateHitError(ValueError):
    """A wall function vanishes exactly at a sample point of the path."""

    def __init__(self, pair_index: int, t: Fraction):
        super().__init__(f"wall function of pair {pair_index} vanishes at path parameter {t}; perturb the path")
        self.pair_index = pair_index
        self.t = t


@dataclass(frozen=True)
class BridgelandPoint:
    alpha_sq: Fraction
    beta: Fraction
    s: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("alpha_sq", "beta", "s"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.alpha_sq <= 0:
            raise ValueError("alpha must be positive")
        if self.s <= 0:
            raise ValueError("s must be positive")


def z_bridgeland(v: ChernCharacter, p: BridgelandPoint) -> tuple[Fraction, Fraction]:
    r, c, d, e = twist(v, p.beta)
    re = -e + (p.s + Fraction(1, 6)) * p.alpha_sq * c
    im = d - p.alpha_sq / 2 * r
    return re, im


def lambda_slope(v: ChernCharacter, p: BridgelandPoint):
    re, im = z_bridgeland(v, p)
    if im == 0:
        if re == 0:
            raise ValueError(f"Z({v!r}) = 0 at {p}")
        return INF
    return -re / im


def q_bridgeland(v: ChernCharacter, w: ChernCharacter, alpha_sq: RationalLike, beta: RationalLike, k: RationalLike = 1) -> Fraction:
    """Q_{alpha,beta,K}(v, w); K = 1 recovers the BMT quadratic form."""
    a2, b, k = as_rational(alpha_sq), as_rational(beta), as_rational(k)
    r, c, d, e = v
    R, C, D, E = w
    return (
        q_tilt(v, w) * (k * a2 + b * b)
        + (3 * E * r + 3 * R * e - C * d - D * c) * b
        - 3 * C * e
        - 3 * E * c
        + 4 * D * d
    )


class Poly:
    """Sparse polynomial in (alpha, beta) with rational coefficients.

    Keys are exponent pairs (i, j) for alpha^i beta^j.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def beta(cls) -> "Poly":
        return cls({(0, 1): 1})

    @classmethod
    def alpha_sq(cls) -> "Poly":
        return cls({(2, 0): 1})

    def __add__(self, other):
        other = other if isinstance(other, Poly) else Poly.const(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.const(-other))

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly({k: c * other for k, c in self.terms.items()})
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def __call__(self, alpha_sq, beta) -> Fraction:
        a2, b = Fraction(alpha_sq), Fraction(beta)
        total = Fraction(0)
        for (i, j), c in self.terms.items():
            if i % 2:
                raise ValueError("odd power of alpha; evaluate with alpha directly")
            total += c * a2 ** (i // 2) * b**j
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(s for s in (f"alpha^{i}" if i else "", f"beta^{j}" if j else "") if s)
            parts.append(format_rational(c) + ("*" + mono if mono else ""))
        return " + ".join(parts)


def twisted_polys(v: ChernCharacter) -> tuple[Poly, Poly, Poly, Poly]:
    """ch^beta(v) as polynomials in beta."""
    r, c, d, e = (Poly.const(x) for x in v)
    b = Poly.beta()
    b2 = b * b
    return (
        r,
        c - b * r,
        d - b * c + b2 * r * Fraction(1, 2),
        e - b * d + b2 * c * Fraction(1, 2) - b2 * b * r * Fraction(1, 6),
    )


def z_polys(v: ChernCharacter, s: RationalLike) -> tuple[Poly, Poly]:
    s = as_rational(s)
    t0, t1, t2, t3 = twisted_polys(v)
    a2 = Poly.alpha_sq()
    return -t3 + a2 * t1 * (s + Fraction(1, 6)), t2 - a2 * t0 * Fraction(1, 2)


@dataclass(frozen=True)
class QuarticWallFunction:
    poly: Poly
    s: Fraction
    v: ChernCharacter
    w: ChernCharacter

    def __call__(self, alpha_sq, beta) -> Fraction:
        return self.poly(alpha_sq, beta)

    def is_zero(self) -> bool:
        return self.poly.is_zero()


def bridgeland_wall_function(v: ChernCharacter, w: ChernCharacter, s: RationalLike = 1) -> QuarticWallFunction:
    s = as_rational(s)
    if s <= 0:
        raise ValueError("s must be positive")
    re_v, im_v = z_polys(v, s)
    re_w, im_w = z_polys(w, s)
    return QuarticWallFunction(re_v * im_w - re_w * im_v, s, v, w)


def hyperbola_offset_path(
    v: ChernCharacter,
    eps: RationalLike,
    beta_range: tuple[RationalLike, RationalLike],
    steps: int,
) -> list[TiltPoint]:
    """steps + 1 points with alpha^2 = (1 - eps)^2 times the hyperbola's alpha^2 over beta.

    Points run from beta_range[0] to beta_range[1].  Each point is checked to
    lie in P_v = {nu(v) > 0}; for positive rank that means the side of the
    branch left of the vertical wall.
    """
    eps = as_rational(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if steps < 1:
        raise ValueError("steps must be positive")
    b0, b1 = (as_rational(b) for b in beta_range)
    hyp = hyperbola(v)
    if hyp.a == 0:
        raise ValueError("rank zero class: nu(v) = 0 is not a hyperbola")
    # alpha^2 along the branch is quadratic in beta; check its minimum on the range.
    lo, hi = min(b0, b1), max(b0, b1)
    probes = [lo, hi]
    if lo < hyp.vertex < hi:
        probes.append(hyp.vertex)
    if any(hyp.alpha_sq_at(b) <= 0 for b in probes):
        raise ValueError(f"beta range [{lo}, {hi}] leaves the hyperbola branch")
    scale = (1 - eps) ** 2
    path = []
    for k in range(steps + 1):
        beta = b0 + (b1 - b0) * Fraction(k, steps)
        pt = TiltPoint(scale * hyp.alpha_sq_at(beta), beta)
        num, den = nu_parts(v, pt)
        if den == 0 or num * den <= 0:
            raise ValueError(f"path point {pt} is not in P_v")
        path.append(pt)
    return path


@dataclass(frozen=True)
class PathCrossing:
    pair_index: int
    t_lo: Fraction
    t_hi: Fraction
    beta_mid: Fraction
    alpha_sq_mid: Fraction

    def to_json(self) -> dict:
        return {
            "pair_index": self.pair_index,
            "t_lo": format_rational(self.t_lo),
            "t_hi": format_rational(self.t_hi),
            "beta_mid": format_rational(self.beta_mid),
            "alpha_sq_mid": format_rational(self.alpha_sq_mid),
        }


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class _Polyline:
    """Piecewise linear interpolation of path points in (alpha^2, beta), t in [0, 1]."""

    def __init__(self, path: Sequence[TiltPoint]):
        self.path = list(path)
        self.n = len(self.path) - 1

    def t_of(self, k: int, u: Fraction) -> Fraction:
        return (k + u) / self.n

    def point(self, k: int, u: Fraction) -> tuple[Fraction, Fraction]:
        p, q = self.path[k], self.path[min(k + 1, self.n)]
        return p.alpha_sq + u * (q.alpha_sq - p.alpha_sq), p.beta + u * (q.beta - p.beta)


def trace_path_crossings(
    v: ChernCharacter,
    pairs: Sequence[ChernCharacter],
    path: Sequence[TiltPoint],
    s: RationalLike = 1,
    tol: RationalLike = DEFAULT_TOL,
) -> list[PathCrossing]:
    """Sign changes of every wall function (v against each pair) along the path.

    Each crossing is bracketed by bisection on the path parameter until the
    bracket is at most tol wide.  A midpoint landing exactly on the wall
    closes the bracket to that point.
    """
    if len(path) < 2:
        raise ValueError("path needs at least two points")
    if len({(p.alpha_sq, p.beta) for p in path}) != len(path):
        raise ValueError("path points must be pairwise distinct")
    tol = as_rational(tol)
    line = _Polyline(path)
    out: list[PathCrossing] = []
    for idx, w in enumerate(pairs):
        f = bridgeland_wall_function(v, w, s)
        if f.is_zero():
            raise ValueError(f"wall function of pair {idx} is identically zero")
        signs = []
        for k, p in enumerate(path):
            sg = _sign(f(p.alpha_sq, p.beta))
            if sg == 0:
                raise DegenerateHitError(idx, Fraction(k, line.n))
            signs.append(sg)
        for k in range(line.n):
            if signs[k] == signs[k + 1]:
                continue
            u_lo, u_hi = Fraction(0), Fraction(1)
            s_lo = signs[k]
            while (u_hi - u_lo) / line.n > tol:
                mid = (u_lo + u_hi) / 2
                sm = _sign(f(*line.point(k, mid)))
                if sm == 0:
                    u_lo = u_hi = mid
                    break
                if sm == s_lo:
                    u_lo = mid
                else:
                    u_hi = mid
            a_mid, b_mid = line.point(k, (u_lo + u_hi) / 2)
            out.append(PathCrossing(idx, line.t_of(k, u_lo), line.t_of(k, u_hi), b_mid, a_mid))
    out.sort(key=lambda c: (c.t_lo, c.pair_index))
    return out


def crossings_to_json(s, eps, pairs: Sequence[ChernCharacter], crossings: Sequence[PathCrossing]) -> dict:
    return {
        "s": format_rational(as_rational(s)),
        "epsilon": None if eps is None else format_rational(as_rational(eps)),
        "pairs": [w.to_json() for w in pairs],
        "crossings": [c.to_json() for c in crossings],
    }
