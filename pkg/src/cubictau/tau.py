"""Yoccoz tau-functions: orbits, markers, marked levels and admissibility.

A tau-function of length N is stored as a tuple ``(tau(1), ..., tau(N))``.
All public functions take 1-based level indices; level 0 is the root of
every orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "TauFunction",
    "OrbitView",
    "Violation",
    "parse_tau",
    "format_tau",
    "ord_",
    "orbit",
    "is_admissible",
    "first_violation",
    "markers",
    "marked_levels",
]


class TauParseError(ValueError):
    pass


@dataclass(frozen=True)
class TauFunction:
    """Immutable finite tau-function; ``tau[n]`` is tau(n) for 1 <= n <= N."""

    values: tuple

    def __init__(self, values: Iterable[int]):
        object.__setattr__(self, "values", tuple(int(v) for v in values))
        if not self.values:
            raise ValueError("a tau-function needs length N >= 1")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        if n == 0:
            # tau^0(0) = 0; convenient when walking an orbit through 0
            return 0
        if not 1 <= n <= len(self.values):
            raise IndexError(f"level {n} outside 1..{len(self.values)}")
        return self.values[n - 1]

    def __iter__(self):
        return iter(self.values)

    def __str__(self) -> str:
        return format_tau(self)

    @property
    def length(self) -> int:
        return len(self.values)

    def extend(self, value: int) -> "TauFunction":
        return TauFunction(self.values + (value,))

    def restrict(self, n: int) -> "TauFunction":
        """The prefix tau|_{1..n}."""
        return TauFunction(self.values[:n])


def as_tau(tau) -> TauFunction:
    if isinstance(tau, TauFunction):
        return tau
    if isinstance(tau, str):
        return parse_tau(tau)
    return TauFunction(tau)


def parse_tau(text: str) -> TauFunction:
    """Parse ``"0,1,0,1,0"``. Whitespace around tokens is ignored."""
    tokens = [t.strip() for t in text.strip().split(",")]
    try:
        values = [int(t, 10) for t in tokens]
    except ValueError:
        raise TauParseError(f"not a comma-separated list of integers: {text!r}") from None
    if any(v < 0 for v in values):
        raise TauParseError(f"negative entry in {text!r}")
    return TauFunction(values)


def format_tau(tau) -> str:
    return ",".join(str(v) for v in as_tau(tau))


@dataclass(frozen=True)
class OrbitView:
    start: int
    chain: tuple

    @property
    def ord(self) -> int:
        return len(self.chain) - 1


def orbit(tau, n: int) -> OrbitView:
    """The chain n, tau(n), tau^2(n), ..., 0."""
    tau = as_tau(tau)
    if not 0 <= n <= len(tau):
        raise IndexError(f"level {n} outside 0..{len(tau)}")
    chain = [n]
    while n:
        nxt = tau[n]
        if nxt >= n:
            raise ValueError(f"tau({n}) = {nxt} is not below {n}; orbit never reaches 0")
        n = nxt
        chain.append(n)
    return OrbitView(chain[0], tuple(chain))


def ord_(tau, n: int) -> int:
    """Least m >= 0 with tau^m(n) = 0 (so ord(0) = 0)."""
    return orbit(tau, n).ord


def _iterate(tau: TauFunction, n: int, k: int) -> int:
    for _ in range(k):
        n = tau[n]
    return n


@dataclass(frozen=True)
class Violation:
    """Why a candidate sequence fails admissibility.

    ``prop`` is one of ``"range"``, ``"A"`` ... ``"E"``; ``index`` is the
    offending level n (for C-E this is the n in the rule, i.e. the value at
    fault is tau(n+1)); ``k`` is the iterate count for rules C and D.
    """

    prop: str
    index: int
    k: Optional[int] = None

    def __str__(self) -> str:
        extra = f", k={self.k}" if self.k is not None else ""
        return f"property {self.prop} at n={self.index}{extra}"


def _check_range(vals: Sequence[int]) -> Optional[Violation]:
    for n, v in enumerate(vals, 1):
        if v < 0:
            return Violation("range", n)
    return None


def _check_a(vals):
    if vals[0] != 0:
        return Violation("A", 1)
    return None


def _check_b(vals):
    for n in range(1, len(vals)):
        if vals[n] > vals[n - 1] + 1:
            return Violation("B", n)
    return None


def _check_c(tau: TauFunction):
    for n in range(1, len(tau)):
        nxt = tau[n + 1]
        ordn = ord_(tau, n)
        for k in range(1, ordn):
            tk = _iterate(tau, n, k)
            if nxt < tk + 1 and not nxt <= tau[tk] + 1:
                return Violation("C", n, k)
    return None


def _check_d(tau: TauFunction):
    for n in range(1, len(tau)):
        nxt = tau[n + 1]
        ordn = ord_(tau, n)
        for k in range(1, ordn):
            tk = _iterate(tau, n, k)
            tk1 = tau[tk]
            if nxt < tk + 1 and tau[tk + 1] == tk1 + 1 and not nxt < tk1 + 1:
                return Violation("D", n, k)
    return None


def _check_e(tau: TauFunction):
    for n in range(1, len(tau)):
        ordn = ord_(tau, n)
        if ordn > 1:
            last = _iterate(tau, n, ordn - 1)
            if ord_(tau, last + 1) == 1 and tau[n + 1] == 0:
                return Violation("E", n)
    return None


def first_violation(values: Iterable[int]) -> Optional[Violation]:
    """First failed property, checked in the order range, A, B, C, D, E.

    Each property is scanned over n ascending before the next one is tried,
    so C-E are only evaluated once A and B guarantee tau(n) < n.
    """
    vals = tuple(values)
    if not vals:
        raise ValueError("empty sequence")
    for check in (_check_range, _check_a, _check_b):
        v = check(vals)
        if v:
            return v
    tau = TauFunction(vals)
    for check in (_check_c, _check_d, _check_e):
        v = check(tau)
        if v:
            return v
    return None


def is_admissible(values: Iterable[int]) -> bool:
    return first_violation(values) is None


def markers(tau) -> tuple:
    """Levels m in 1..N-1 with tau(m+1) < tau(m) + 1, ascending."""
    tau = as_tau(tau)
    return tuple(m for m in range(1, len(tau)) if tau[m + 1] < tau[m] + 1)


def marked_levels(tau) -> tuple:
    """0 together with every level in the strict forward orbit of a marker."""
    tau = as_tau(tau)
    marked = {0}
    for m in markers(tau):
        x = tau[m]
        while x not in marked:
            marked.add(x)
            x = tau[x]
    return tuple(sorted(marked))
