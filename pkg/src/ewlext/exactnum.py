"""Exact scalars and angles.

All discrete strategy parameters in this package live on lattices of
rational multiples of pi.  Squared payoff amplitudes built from such angles
stay inside the quadratic field Q(sqrt(2)), so an exact pair-of-Fractions
number type is enough to avoid floating point everywhere it matters.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DomainError, ExactnessError

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)

RationalLike = Union[int, Fraction]


class Q2:
    """Number a + b*sqrt(2) with rational a, b.  Immutable, hashable, ordered."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", a if isinstance(a, Fraction) else Fraction(a))
        object.__setattr__(self, "b", b if isinstance(b, Fraction) else Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("Q2 is immutable")

    # -- conversions ------------------------------------------------------

    @staticmethod
    def coerce(x) -> "Q2":
        if isinstance(x, Q2):
            return x
        if isinstance(x, (int, Fraction)):
            return Q2(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Q2")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ExactnessError(f"{self} has an irrational sqrt(2) part")
        return self.a

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(2.0)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = Q2.coerce(other)
        return Q2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = Q2.coerce(other)
        return Q2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = Q2.coerce(other)
        return Q2(o.a - self.a, o.b - self.b)

    def __neg__(self):
        return Q2(-self.a, -self.b)

    def __mul__(self, other):
        o = Q2.coerce(other)
        # (a + b r)(c + d r) = ac + 2bd + (ad + bc) r, with r = sqrt(2)
        return Q2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Q2.coerce(other)
        n = o.a * o.a - 2 * o.b * o.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q2")
        # 1/(c + d r) = (c - d r)/(c^2 - 2 d^2)
        return self * Q2(o.a / n, -o.b / n)

    def __rtruediv__(self, other):
        return Q2.coerce(other) / self

    # -- comparisons ------------------------------------------------------

    def _sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare |a| with |b| sqrt(2) exactly
        if a > 0:  # b < 0
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def __eq__(self, other):
        try:
            o = Q2.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - Q2.coerce(other))._sign() < 0

    def __le__(self, other):
        return (self - Q2.coerce(other))._sign() <= 0

    def __gt__(self, other):
        return (self - Q2.coerce(other))._sign() > 0

    def __ge__(self, other):
        return (self - Q2.coerce(other))._sign() >= 0

    def __abs__(self):
        return -self if self._sign() < 0 else self

    def __repr__(self):
        return f"Q2({self.a!r}, {self.b!r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt(2)"
        sep = "+" if self.b > 0 else "-"
        return f"{self.a}{sep}{abs(self.b)}*sqrt(2)"


Q2_ZERO = Q2(0)
Q2_ONE = Q2(1)
Q2_HALF_SQRT2 = Q2(0, _HALF)  # sqrt(2)/2 == cos(pi/4)


# -- exact trigonometry on rational multiples of pi ------------------------


@lru_cache(maxsize=4096)
def exact_cos(k: Fraction) -> Q2:
    """cos(k*pi) for rational k, exact in Q(sqrt(2)) when representable.

    Defined for k with denominator 1, 2, 3 or 4; anything else (e.g. pi/6 or
    pi/8 multiples, whose cosines need sqrt(3) or nested radicals) raises
    ExactnessError.
    """
    k = k % 2
    q = k.denominator
    p = k.numerator
    if q == 1:
        return Q2_ONE if p % 2 == 0 else Q2(-1)
    if q == 2:
        return Q2_ZERO
    if q == 3:
        return Q2(_HALF) if p % 6 in (1, 5) else Q2(-_HALF)
    if q == 4:
        return Q2_HALF_SQRT2 if p % 8 in (1, 7) else Q2(0, -_HALF)
    raise ExactnessError(f"cos({k}*pi) is not representable in Q(sqrt(2))")


def exact_sin(k: Fraction) -> Q2:
    """sin(k*pi), exact in Q(sqrt(2)) when representable."""
    return exact_cos(_HALF - k)


# -- angles -----------------------------------------------------------------

_ANGLE_RE = re.compile(
    r"""^\s*(?P<sign>[+-])?\s*
        (?:(?P<num>\d+)\s*(?:/\s*(?P<den>\d+))?\s*)?
        (?P<pi>pi|π)\s*$""",
    re.VERBOSE | re.IGNORECASE,
)


@dataclass(frozen=True)
class Angle:
    """An angle, stored exactly as a rational multiple of pi or as float radians."""

    value: Union[Fraction, float]

    @staticmethod
    def pi_frac(k) -> "Angle":
        """Angle k*pi for rational k."""
        return Angle(Fraction(k))

    @staticmethod
    def radians(x: float) -> "Angle":
        return Angle(float(x))

    @staticmethod
    def parse(text) -> "Angle":
        """Parse '1/2 pi', 'pi', '0', '3/4pi' or a float-radian literal."""
        if isinstance(text, Angle):
            return text
        if isinstance(text, (int, Fraction)):
            return Angle.pi_frac(text)
        if isinstance(text, float):
            return Angle.radians(text)
        s = str(text).strip()
        m = _ANGLE_RE.match(s)
        if m:
            num = int(m.group("num")) if m.group("num") else 1
            den = int(m.group("den")) if m.group("den") else 1
            k = Fraction(num, den)
            if m.group("sign") == "-":
                k = -k
            return Angle.pi_frac(k)
        try:
            if "/" in s:
                return Angle.pi_frac(Fraction(s))  # bare rational means k*pi
            f = float(s)
        except ValueError:
            raise DomainError(f"cannot parse angle {text!r}") from None
        if f == int(f) and "." not in s and "e" not in s.lower():
            return Angle.pi_frac(int(f))  # bare integer means k*pi
        return Angle.radians(f)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, Fraction)

    @property
    def frac(self) -> Fraction:
        if not self.is_exact:
            raise ExactnessError(f"angle {self} is not an exact multiple of pi")
        return self.value

    def to_radians(self) -> float:
        if self.is_exact:
            return float(self.value) * math.pi
        return self.value

    def mod_2pi(self) -> "Angle":
        if self.is_exact:
            return Angle(self.value % 2)
        r = math.fmod(self.value, 2.0 * math.pi)
        if r < 0:
            r += 2.0 * math.pi
        if r >= 2.0 * math.pi:  # fmod rounding at the boundary
            r = 0.0
        return Angle(r)

    def __add__(self, other: "Angle") -> "Angle":
        if self.is_exact and other.is_exact:
            return Angle(self.value + other.value)
        return Angle(self.to_radians() + other.to_radians())

    def __sub__(self, other: "Angle") -> "Angle":
        if self.is_exact and other.is_exact:
            return Angle(self.value - other.value)
        return Angle(self.to_radians() - other.to_radians())

    def __neg__(self) -> "Angle":
        return Angle(-self.value)

    def format(self) -> str:
        """Inverse of parse: 'k/m pi' for exact angles, repr-float otherwise."""
        if not self.is_exact:
            return repr(self.value)
        k = self.value
        if k == 0:
            return "0"
        if k == 1:
            return "pi"
        if k.denominator == 1:
            return f"{k.numerator} pi"
        return f"{k.numerator}/{k.denominator} pi"

    def __str__(self):
        return self.format()


ANGLE_ZERO = Angle.pi_frac(0)
ANGLE_PI = Angle.pi_frac(1)
