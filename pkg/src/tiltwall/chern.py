"""Exact Chern character arithmetic on P^3.

All components are :class:`fractions.Fraction`.  The hyperplane class H
satisfies H^3 = 1, so H-contracted components and plain components agree.

The lattice test in :func:`validate_integrality` uses the Newton identities

    c1 = ch1
    c2 = ch1^2/2 - ch2
    c3 = 2 ch3 - c1^3/3 + c1 c2

and asks for ch0, c1, c2, c3 to be integers.  This is a necessary condition
for a rational vector to be the Chern character of an object of D^b(P^3);
:func:`in_grothendieck_lattice` is the exact test (integral Euler pairing
against O, O(1), O(2), O(3)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple, Union

RationalLike = Union[int, str, Fraction]

# Todd classes, lowest degree first.
TODD_P2 = (Fraction(1), Fraction(3, 2), Fraction(1))
TODD_P3 = (Fraction(1), Fraction(2), Fraction(11, 6), Fraction(1))


def as_rational(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings.  Floats are refused."""
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value {x!r}")
    if isinstance(x, str):
        return Fraction(x.strip().replace("−", "-"))
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    """Serialize as "p/q", or "p" when q = 1."""
    return str(Fraction(x))


class ChernTruncated(NamedTuple):
    """The (ch0, ch1, ch2) part seen by tilt stability."""

    r: Fraction
    c: Fraction
    d: Fraction


@dataclass(frozen=True)
class ChernCharacter:
    ch0: Fraction
    ch1: Fraction
    ch2: Fraction
    ch3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("ch0", "ch1", "ch2", "ch3"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def of(cls, *components: RationalLike) -> "ChernCharacter":
        """Build from 3 or 4 components; a missing ch3 is taken to be 0."""
        if len(components) == 1 and not isinstance(components[0], (int, str, Fraction)):
            components = tuple(components[0])
        if len(components) not in (3, 4):
            raise ValueError(f"expected 3 or 4 components, got {len(components)}")
        return cls(*components)

    @classmethod
    def parse(cls, text: str) -> "ChernCharacter":
        """Parse "a,b,c,d" with each entry an integer or "p/q"."""
        parts = [p for p in text.split(",") if p.strip()]
        return cls.of(*parts)

    def __iter__(self):
        return iter((self.ch0, self.ch1, self.ch2, self.ch3))

    def __len__(self):
        return 4

    def __getitem__(self, i):
        return (self.ch0, self.ch1, self.ch2, self.ch3)[i]

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(*(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "ChernCharacter":
        return ChernCharacter(*(-a for a in self))

    def __mul__(self, k: RationalLike) -> "ChernCharacter":
        k = as_rational(k)
        return ChernCharacter(*(k * a for a in self))

    __rmul__ = __mul__

    def truncated(self) -> ChernTruncated:
        return ChernTruncated(self.ch0, self.ch1, self.ch2)

    def to_json(self) -> list[str]:
        return [format_rational(a) for a in self]

    @classmethod
    def from_json(cls, data: Iterable[str]) -> "ChernCharacter":
        return cls.of(*list(data))

    def __repr__(self):
        return "ChernCharacter(" + ", ".join(format_rational(a) for a in self) + ")"


def chern_classes(v: ChernCharacter) -> tuple[Fraction, Fraction, Fraction]:
    """Return (c1, c2, c3) from (ch1, ch2, ch3)."""
    c1 = v.ch1
    c2 = c1 * c1 / 2 - v.ch2
    c3 = 2 * v.ch3 - c1**3 / 3 + c1 * c2
    return c1, c2, c3


def validate_integrality(v: ChernCharacter) -> bool:
    """True iff ch0, c1, c2 and c3 are all integers."""
    return all(x.denominator == 1 for x in (v.ch0, *chern_classes(v)))


def euler_characteristic(v: ChernCharacter) -> Fraction:
    """Hirzebruch-Riemann-Roch on P^3: integral of ch(v) td(P^3)."""
    t0, t1, t2, t3 = TODD_P3
    return v.ch3 * t0 + v.ch2 * t1 + v.ch1 * t2 + v.ch0 * t3


def in_grothendieck_lattice(v: ChernCharacter) -> bool:
    """True iff v lies in ch(K(P^3)), i.e. chi(v(-k)) is integral for k = 0..3."""
    return all(euler_characteristic(twist(v, k)).denominator == 1 for k in range(4))


def twist(v: ChernCharacter, beta: RationalLike) -> ChernCharacter:
    """Multiply by exp(-beta H)."""
    b = as_rational(beta)
    r, c, d, e = v
    return ChernCharacter(
        r,
        c - b * r,
        d - b * c + b * b / 2 * r,
        e - b * d + b * b / 2 * c - b**3 / 6 * r,
    )


def untwist(v: ChernCharacter, beta: RationalLike) -> ChernCharacter:
    return twist(v, -as_rational(beta))


def line_bundle_ch(n: int) -> ChernCharacter:
    """ch(O(n)) = (1, n, n^2/2, n^3/6)."""
    n = Fraction(n)
    return ChernCharacter(Fraction(1), n, n * n / 2, n**3 / 6)


def structure_sheaf_ch() -> ChernCharacter:
    return line_bundle_ch(0)


def _times_todd(a: tuple[Fraction, ...], todd: tuple[Fraction, ...]) -> list[Fraction]:
    n = len(todd)
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        for j in range(n - i):
            out[i + j] += x * todd[j]
    return out


def grr_plane_pushforward(ch_v) -> ChernCharacter:
    """Chern character on P^3 of i_* E for a class ch_v = (a0, a1, a2) on a plane.

    Solves i_*(ch_V(E) td(P^2)) = ch(i_* E) td(P^3).  In closed form the
    result is (0, a0, a1 - a0/2, a2 - a1/2 + a0/6).
    """
    a = tuple(as_rational(x) for x in ch_v)
    if len(a) != 3:
        raise ValueError("plane character must have 3 components")
    lhs = [Fraction(0)] + _times_todd(a, TODD_P2)  # i_* raises degree by one
    # Solve lhs = b * TODD_P3 degree by degree (b0 = 0).
    b = [Fraction(0)] * 4
    for k in range(1, 4):
        b[k] = lhs[k] - sum(b[j] * TODD_P3[k - j] for j in range(1, k))
    return ChernCharacter(*b)


def grr_plane_restrict(v: ChernCharacter) -> tuple[Fraction, Fraction, Fraction]:
    """Inverse of :func:`grr_plane_pushforward`.

    For (0, 1, d, e) this gives (1, d + 1/2, d/2 + e + 1/12).
    """
    if v.ch0 != 0:
        raise ValueError(f"a sheaf pushed forward from a plane has rank 0, got {v.ch0}")
    _, b1, b2, b3 = v
    a0 = b1
    a1 = b2 + b1 / 2
    a2 = b3 + b2 / 2 + b1 / 12
    return (a0, a1, a2)


def hom_line_bundles_dim(n: int, m: int) -> int:
    """dim Hom(O(n), O(m)) on P^3."""
    return comb(m - n + 3, 3) if m >= n else 0


def kronecker_moduli_dim(i: int, j: int, arrows: int) -> int:
    """Dimension of the moduli of Kronecker representations with dimension vector (j, i)."""
    if i <= 0 or j <= 0 or arrows <= 0:
        raise ValueError("dimension vector entries and arrow count must be positive")
    return arrows * i * j - i * i - j * j + 1
