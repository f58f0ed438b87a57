"""Scale schedules: the exponents m_1 < m_2 < ... driving the construction.

Each m_k is the minimal integer exceeding m_{k-1} such that the separation
constant clears both adjacent displacements:

    c_sep * 4**-m_k <= a_k   * 4**-m_{k-1}
    c_sep * 4**-m_k <= a_{k-1} * 4**-m_{k-1}   (k >= 2)

Increments are stored as exact dyadics (binary64 inputs embed exactly), so
the constraint checks and everything downstream are integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .dyadic import Dyadic
from .errors import BudgetError, ConfigError

#: the separation constant used in the original analysis
DEFAULT_C_SEP = 1000


@dataclass(frozen=True)
class ScheduleParams:
    increments: tuple[Dyadic, ...]
    scales: tuple[int, ...]
    c_sep: int

    def __post_init__(self) -> None:
        if len(self.increments) != len(self.scales):
            raise ConfigError("increments and scales must have equal length")
        for a in self.increments:
            if not (Dyadic(0) < a <= Dyadic(1)):
                raise ConfigError("increments must lie in (0, 1]")
        prev = 0
        for m in self.scales:
            if m <= prev:
                raise ConfigError("scales must be strictly increasing positive integers")
            prev = m

    @property
    def depth(self) -> int:
        return len(self.scales)

    def scale(self, k: int) -> int:
        """m_k with m_0 = 0."""
        if k == 0:
            return 0
        return self.scales[k - 1]

    def increment(self, k: int) -> Dyadic:
        """a_k with the implicit a_0 = 1 for the base step."""
        if k == 0:
            return Dyadic(1)
        return self.increments[k - 1]

    def increment_floats(self) -> list[float]:
        return [float(a) for a in self.increments]

    def segment_count(self, n: int) -> int:
        return 2 * 4 ** self.scale(n)

    def cell_width(self, k: int) -> Dyadic:
        """4**-m_k as an exact dyadic."""
        return Dyadic.pow4(-self.scale(k))


def _sep_ok(c_sep: int, m: int, a: Dyadic, m_prev: int) -> bool:
    # c_sep * 4^-m <= a * 4^-m_prev  <=>  c_sep * 2^e * 4^m_prev <= mant * 4^m
    mant, e = a.as_pair()
    return c_sep * (1 << e) * (1 << (2 * m_prev)) <= mant * (1 << (2 * m))


def derive_schedule(
    increments: Iterable[float | Dyadic],
    c_sep: int = DEFAULT_C_SEP,
    m_budget: int = 40,
) -> ScheduleParams:
    """Minimal valid schedule; errors name the level that blew the budget."""
    if c_sep < 2:
        raise ConfigError("c_sep must be at least 2")
    incs: list[Dyadic] = []
    for a in increments:
        d = a if isinstance(a, Dyadic) else Dyadic.from_float(float(a))
        if not (Dyadic(0) < d <= Dyadic(1)):
            raise ConfigError("increments must lie in (0, 1]")
        incs.append(d)
    scales: list[int] = []
    prev = 0
    for k, a_k in enumerate(incs, start=1):
        m = prev + 1
        while True:
            ok = _sep_ok(c_sep, m, a_k, prev)
            if ok and k >= 2:
                ok = _sep_ok(c_sep, m, incs[k - 2], prev)
            if ok:
                break
            m += 1
            if m > m_budget:
                raise BudgetError(
                    f"schedule exponent budget {m_budget} exceeded at level k={k}"
                )
        scales.append(m)
        prev = m
    return ScheduleParams(tuple(incs), tuple(scales), c_sep)
