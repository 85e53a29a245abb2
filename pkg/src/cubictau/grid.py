"""Branner-Hubbard marked grids (tableaux) of finite size.

Coordinates follow the usual picture: ``j`` is depth (rows, downward) and
``k`` is time (columns, rightward). A grid of size N holds M(j, k) for all
j, k >= 0 with j + k <= N, packed into the bits of a single int.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, List, NamedTuple, Optional

from .tau import TauFunction, as_tau

__all__ = [
    "MarkedGrid",
    "RuleViolation",
    "InvalidGridError",
    "tau_to_grid",
    "grid_to_tau",
    "validate_grid",
    "iter_candidate_grids",
    "valid_grids",
]


def _offset(size: int, j: int, k: int) -> int:
    # rows of length size+1, size, ..., 1 laid out consecutively
    return j * (size + 1) - j * (j - 1) // 2 + k


def _cells(size: int) -> int:
    return (size + 1) * (size + 2) // 2


@dataclass(frozen=True)
class MarkedGrid:
    size: int
    bits: int = 0

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("grid size must be >= 1")
        if self.bits < 0 or self.bits >> _cells(self.size):
            raise ValueError("bit pattern does not fit the triangle")

    def __getitem__(self, jk) -> int:
        j, k = jk
        if j < 0 or k < 0 or j + k > self.size:
            raise IndexError(f"({j},{k}) outside the size-{self.size} triangle")
        return (self.bits >> _offset(self.size, j, k)) & 1

    def get(self, j: int, k: int) -> int:
        return self[j, k]

    @classmethod
    def from_rows(cls, rows) -> "MarkedGrid":
        rows = [list(r) for r in rows]
        size = len(rows) - 1
        bits = 0
        for j, row in enumerate(rows):
            if len(row) != size - j + 1:
                raise ValueError(f"row {j} should have {size - j + 1} entries, got {len(row)}")
            for k, v in enumerate(row):
                if int(v) not in (0, 1):
                    raise ValueError(f"entry ({j},{k}) is not 0/1")
                if int(v):
                    bits |= 1 << _offset(size, j, k)
        return cls(size, bits)

    @classmethod
    def parse(cls, text: str) -> "MarkedGrid":
        """Inverse of :meth:`to_text`."""
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        return cls.from_rows([[int(c) for c in ln] for ln in lines])

    def rows(self) -> List[List[int]]:
        return [[self[j, k] for k in range(self.size - j + 1)] for j in range(self.size + 1)]

    def to_text(self) -> str:
        """N+1 lines; line j is M(j,0)...M(j,N-j) with no separators."""
        return "\n".join("".join(str(v) for v in row) for row in self.rows())

    def with_entry(self, j: int, k: int, value: int) -> "MarkedGrid":
        self[j, k]
        bit = 1 << _offset(self.size, j, k)
        return MarkedGrid(self.size, (self.bits | bit) if value else (self.bits & ~bit))

    def __str__(self) -> str:
        return self.to_text()


class RuleViolation(NamedTuple):
    rule: str
    j: int
    k: int
    aux: Optional[int] = None

    def __str__(self) -> str:
        aux = ""
        if self.aux is not None:
            aux = f", {'m' if self.rule == 'M3' else 'i'}={self.aux}"
        return f"{self.rule} at ({self.j},{self.k}){aux}"


class InvalidGridError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid marked grid: " + "; ".join(map(str, self.violations)))


def tau_to_grid(tau) -> MarkedGrid:
    """M(j,k) = 1 iff j = k = 0 or j lies on the tau-orbit of j + k."""
    tau = as_tau(tau)
    size = len(tau)
    bits = 1  # (0,0)
    for n in range(1, size + 1):
        x = n
        while True:
            bits |= 1 << _offset(size, x, n - x)
            if x == 0:
                break
            x = tau[x]
    return MarkedGrid(size, bits)


def grid_to_tau(grid: MarkedGrid, check: bool = True) -> TauFunction:
    """tau(n) = max{j < n : M(j, n-j) = 1}, the first mark northeast of (n,0)."""
    if check:
        bad = validate_grid(grid)
        if bad:
            raise InvalidGridError(bad)
    vals = []
    for n in range(1, grid.size + 1):
        j = n - 1
        while j > 0 and not grid[j, n - j]:
            j -= 1
        vals.append(j)
    return TauFunction(vals)


def validate_grid(grid: MarkedGrid) -> List[RuleViolation]:
    """All violations of rules M0-M4 over the whole triangle."""
    N = grid.size
    M = grid.get
    out: List[RuleViolation] = []

    for n in range(N + 1):
        if not M(n, 0):
            out.append(RuleViolation("M0", n, 0))
        if n and not M(0, n):
            out.append(RuleViolation("M0", 0, n))

    for k in range(N + 1):
        for j in range(N - k + 1):
            if M(j, k):
                for l in range(j):
                    if not M(l, k):
                        out.append(RuleViolation("M1", l, k, j))

    for j in range(N + 1):
        for k in range(N - j + 1):
            if not M(j, k):
                continue
            for i in range(j + 1):
                if M(j - i, k + i) != M(j - i, i):
                    out.append(RuleViolation("M2", j, k, i))

    for j in range(N + 1):
        for k in range(N - j):
            if not M(j, k) or M(j + 1, k):
                continue
            # m <= j keeps the conclusion below depth 0, where M0 marks everything
            for m in range(1, j + 1):
                if any(M(j - i, i) for i in range(1, m)):
                    break
                if M(j - m + 1, m) and M(j - m + 1, k + m):
                    out.append(RuleViolation("M3", j, k, m))

    # M4 in the form equivalent to tau-property E: if j is the last nonzero
    # mark on diagonal j+k, tau(j+1) = 0 and j+1 is not marked at time k,
    # then M(1, j+k) must be 1.
    for j in range(1, N + 1):
        for k in range(N - j):
            if not M(j, k) or M(j + 1, k) or M(1, j):
                continue
            if any(M(j - i, k + i) for i in range(1, j)):
                continue
            if not M(1, j + k):
                out.append(RuleViolation("M4", j, k))
    return out


def iter_candidate_grids(size: int, exhaustive: bool = False) -> Iterator[MarkedGrid]:
    """Yield the grids searched by :func:`valid_grids`.

    With ``exhaustive`` every 0/1 filling of the triangle is produced
    (2^((N+1)(N+2)/2) of them, so only for tiny N). Otherwise only grids
    already satisfying M0 and M1 are produced: column k is then fixed by
    its depth d in 0..N-k, giving N! grids. Every grid dropped by the
    reduction violates M0 or M1, so the valid ones are the same.
    """
    if exhaustive:
        for bits in range(1 << _cells(size)):
            yield MarkedGrid(size, bits)
        return
    col0 = 0
    for j in range(size + 1):
        col0 |= 1 << _offset(size, j, 0)
    column_bits = []
    for k in range(1, size + 1):
        choices = []
        acc = 0
        for d in range(size - k + 1):
            acc |= 1 << _offset(size, d, k)
            choices.append(acc)
        column_bits.append(choices)
    for combo in product(*column_bits):
        bits = col0
        for c in combo:
            bits |= c
        yield MarkedGrid(size, bits)


def valid_grids(size: int, exhaustive: bool = False) -> List[MarkedGrid]:
    return [g for g in iter_candidate_grids(size, exhaustive) if not validate_grid(g)]
