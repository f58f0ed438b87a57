"""Exact dyadic rational scalars.

A dyadic rational is mantissa / 2**exponent with integer mantissa and
nonnegative exponent.  All construction coordinates (cell breakpoints,
step heights, box corners) live in this ring, so containment checks and
length sums are exact.  Addition, subtraction, multiplication and
comparison are closed; division is deliberately absent.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

from .errors import DyadicPrecisionError

#: Hard ceiling on the exponent; exceeding it raises, never rounds.
MAX_EXPONENT = 128


@total_ordering
class Dyadic:
    """Immutable mantissa / 2**exponent in canonical form.

    Canonical form: exponent == 0, or the mantissa is odd.
    """

    __slots__ = ("_m", "_e")

    def __init__(self, mantissa: int, exponent: int = 0) -> None:
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        if mantissa == 0:
            exponent = 0
        else:
            while exponent > 0 and mantissa % 2 == 0:
                mantissa //= 2
                exponent -= 1
        if exponent > MAX_EXPONENT:
            raise DyadicPrecisionError(
                f"dyadic exponent {exponent} exceeds limit {MAX_EXPONENT}"
            )
        self._m = mantissa
        self._e = exponent

    @property
    def mantissa(self) -> int:
        return self._m

    @property
    def exponent(self) -> int:
        return self._e

    @classmethod
    def from_float(cls, x: float) -> Dyadic:
        """Exact conversion; every finite binary64 is dyadic."""
        if not math.isfinite(x):
            raise ValueError(f"cannot convert {x!r} to Dyadic")
        man, exp = math.frexp(x)  # x = man * 2**exp, 0.5 <= |man| < 1
        m = int(man * (1 << 53))
        e = 53 - exp
        if e < 0:
            return cls(m << -e, 0)
        return cls(m, e)

    @classmethod
    def pow4(cls, k: int) -> Dyadic:
        """4**k for integer k (negative k gives an exact fraction)."""
        if k >= 0:
            return cls(1 << (2 * k), 0)
        return cls(1, -2 * k)

    def mul_pow2(self, k: int) -> Dyadic:
        """self * 2**k, exact."""
        if k >= 0:
            if self._e >= k:
                return Dyadic(self._m, self._e - k)
            return Dyadic(self._m << (k - self._e), 0)
        return Dyadic(self._m, self._e - k)

    def __add__(self, other: Dyadic | int) -> Dyadic:
        other = _coerce(other)
        e = max(self._e, other._e)
        m = (self._m << (e - self._e)) + (other._m << (e - other._e))
        return Dyadic(m, e)

    def __radd__(self, other: int) -> Dyadic:
        return self + other

    def __neg__(self) -> Dyadic:
        return Dyadic(-self._m, self._e)

    def __sub__(self, other: Dyadic | int) -> Dyadic:
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> Dyadic:
        return (-self) + other

    def __mul__(self, other: Dyadic | int) -> Dyadic:
        other = _coerce(other)
        return Dyadic(self._m * other._m, self._e + other._e)

    def __rmul__(self, other: int) -> Dyadic:
        return self * other

    def __abs__(self) -> Dyadic:
        return Dyadic(abs(self._m), self._e)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self._m == other._m and self._e == other._e

    def __lt__(self, other: Dyadic | int) -> bool:
        other = _coerce(other)
        e = max(self._e, other._e)
        return (self._m << (e - self._e)) < (other._m << (e - other._e))

    def __hash__(self) -> int:
        # integral dyadics compare equal to ints and must hash like them
        if self._e == 0:
            return hash(self._m)
        return hash((self._m, self._e))

    def __bool__(self) -> bool:
        return self._m != 0

    def __float__(self) -> float:
        if abs(self._m) < (1 << 53):
            return math.ldexp(self._m, -self._e)
        return self._m / (1 << self._e)

    def __repr__(self) -> str:
        return f"Dyadic({self._m}, {self._e})"

    def __str__(self) -> str:
        if self._e == 0:
            return str(self._m)
        return f"{self._m}/2^{self._e}"

    def as_fraction(self) -> Fraction:
        return Fraction(self._m, 1 << self._e)

    def as_pair(self) -> tuple[int, int]:
        """(mantissa, log2 denominator) for serialization."""
        return (self._m, self._e)

    def floor(self) -> int:
        """Largest integer <= self (arithmetic shift floors negatives too)."""
        return self._m >> self._e


ZERO = Dyadic(0)
ONE = Dyadic(1)
THREE_QUARTERS = Dyadic(3, 2)


def _coerce(x: Dyadic | int) -> Dyadic:
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, int):
        return Dyadic(x)
    raise TypeError(f"cannot mix Dyadic with {type(x).__name__}")
