"""Per-tau counts: spine factors, Spines, twist factor and Top.

Everything here is evaluated directly from the defining formulas for a
single tau-function. The enumeration kernels compute the same numbers
incrementally; these functions are the reference they are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List

from .extension import (
    ExtensionChoice,
    TailDecomposition,
    admissible_extensions,
    delta,
    tail_decomposition,
    with_factor,
)
from .tau import TauFunction, as_tau, marked_levels, ord_

__all__ = [
    "DyadicRational",
    "CountRecord",
    "IntegrityError",
    "symmetry",
    "nested_factor",
    "spine_factor",
    "side_component_count",
    "extensions_with_factors",
    "spines",
    "moduli_sum",
    "twist_period",
    "twist_factor",
    "top",
    "count_record",
]


class IntegrityError(ArithmeticError):
    """A count that must be a positive integer was not."""


@dataclass(frozen=True)
class DyadicRational:
    """numerator / 2**exponent, always in lowest terms."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        if self.numerator < 0 or self.exponent < 0:
            raise ValueError("DyadicRational is nonnegative with exponent >= 0")
        num, exp = self.numerator, self.exponent
        if num == 0:
            exp = 0
        else:
            tz = min((num & -num).bit_length() - 1, exp)
            num >>= tz
            exp -= tz
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @property
    def denominator(self) -> int:
        return 1 << self.exponent

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        e = max(self.exponent, other.exponent)
        return DyadicRational(
            (self.numerator << (e - self.exponent)) + (other.numerator << (e - other.exponent)), e
        )

    def __lt__(self, other: "DyadicRational") -> bool:
        return self.to_fraction() < other.to_fraction()

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class CountRecord:
    spines: int
    L: int
    T: int
    twist_factor: Fraction
    top: int


def symmetry(tau) -> int:
    """Steps from l_0 = tau(N) to the first marked level on its orbit."""
    tau = as_tau(tau)
    marked = set(marked_levels(tau))
    x = tau[len(tau)]
    s = 0
    while x not in marked:
        x = tau[x]
        s += 1
    return s


def nested_factor(tau, td: TailDecomposition, i: int) -> int:
    """2^{n_1}(2^{n_2}(...(2^{n_{i-1}} - d(i-1,i))...) - d(2,i)) - d(1,i).

    Empty (= 1) for i = 1.
    """
    if not 1 <= i <= td.k + 1:
        raise ValueError(f"choice index {i} outside 1..{td.k + 1}")
    if i == 1:
        return 1
    value = (1 << td.n[i - 1]) - delta(tau, td, i - 1, i)
    for j in range(i - 2, 0, -1):
        value = (value << td.n[j]) - delta(tau, td, j, i)
    return value


def side_component_count(tau, td: TailDecomposition, i: int) -> int:
    """Side components at level l_0 that realize choice index i >= 1.

    Also evaluated for the excluded zero choice, where it is 0.
    """
    return nested_factor(tau, td, i) << td.n[0]


def spine_factor(tau, choice: ExtensionChoice, td: TailDecomposition | None = None) -> int:
    tau = as_tau(tau)
    if td is None:
        td = tail_decomposition(tau)
    allowed = admissible_extensions(tau, td)
    if not any(c.index == choice.index and c.value == choice.value for c in allowed):
        raise ValueError(f"{choice} is not an admissible extension of {tau}")
    if choice.index == 0:
        return 1
    s = symmetry(tau)
    return nested_factor(tau, td, choice.index) << (td.n[0] - s)


def extensions_with_factors(tau) -> List[ExtensionChoice]:
    tau = as_tau(tau)
    td = tail_decomposition(tau)
    return [with_factor(c, spine_factor(tau, c, td)) for c in admissible_extensions(tau, td)]


def spines(tau) -> int:
    """Product of the spine factors along the chain tau|1, tau|2, ..., tau."""
    tau = as_tau(tau)
    total = 1
    for j in range(2, len(tau) + 1):
        prefix = tau.restrict(j - 1)
        for c in extensions_with_factors(prefix):
            if c.value == tau[j]:
                total *= c.spine_factor
                break
        else:
            raise ValueError(f"{tau} is not admissible at level {j}")
    return total


def _require_marked(tau: TauFunction, l: int):
    if l not in marked_levels(tau):
        raise ValueError(f"level {l} is not marked for {tau}")


def moduli_sum(tau, l: int) -> DyadicRational:
    """mod(l) = sum_{i=1}^{l} 2^{-ord(i)}."""
    tau = as_tau(tau)
    _require_marked(tau, l)
    total = DyadicRational(0)
    for i in range(1, l + 1):
        total = total + DyadicRational(1, ord_(tau, i))
    return total


def twist_period(tau, l: int) -> int:
    """Least n > 0 with n * mod(l) integral; 1 for level 0."""
    return moduli_sum(tau, l).denominator


def _nonzero_marked(tau):
    return [l for l in marked_levels(tau) if l]


def twist_factor(tau) -> Fraction:
    """2^L / T, L and T taken over the nonzero marked levels."""
    tau = as_tau(tau)
    levels = _nonzero_marked(tau)
    T = max((twist_period(tau, l) for l in levels), default=1)
    return Fraction(1 << len(levels), T)


def top(tau, spine_count: int | None = None) -> int:
    tau = as_tau(tau)
    if spine_count is None:
        spine_count = spines(tau)
    value = spine_count * twist_factor(tau)
    if value.denominator != 1 or value <= 0:
        raise IntegrityError(f"Top({tau}) = {value} is not a positive integer")
    return int(value)


def count_record(tau) -> CountRecord:
    tau = as_tau(tau)
    levels = _nonzero_marked(tau)
    T = max((twist_period(tau, l) for l in levels), default=1)
    sp = spines(tau)
    return CountRecord(sp, len(levels), T, Fraction(1 << len(levels), T), top(tau, sp))
