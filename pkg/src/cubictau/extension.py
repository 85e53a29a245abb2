"""Tail decomposition of a tau-function and its admissible one-step extensions."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from .tau import TauFunction, as_tau, markers

__all__ = [
    "TailDecomposition",
    "ExtensionChoice",
    "tail_decomposition",
    "admissible_extensions",
    "delta",
]


@dataclass(frozen=True)
class TailDecomposition:
    """Markers on the orbit of N and the orbit steps between them.

    ``l_prime[0] = N`` and ``l_prime[1:]`` are the k markers met along
    N -> tau(N) -> ... -> 0 in descending order; ``l[i] = tau(l_prime[i])``;
    ``n[i]`` is the number of tau-steps from ``l[i]`` to ``l[i+1]`` (to 0
    for the last one).
    """

    l_prime: Tuple[int, ...]
    l: Tuple[int, ...]
    n: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.l_prime) - 1

    def level(self, i: int) -> int:
        """l_i, with the convention l_{k+1} = -1."""
        return -1 if i == self.k + 1 else self.l[i]


@dataclass(frozen=True)
class ExtensionChoice:
    index: int
    value: int
    spine_factor: Optional[int] = None


def tail_decomposition(tau) -> TailDecomposition:
    tau = as_tau(tau)
    N = len(tau)
    is_marker = set(markers(tau))
    l_prime = [N]
    l = [tau[N]]
    n = []
    steps = 0
    x = tau[N]
    while x:
        if x in is_marker:
            n.append(steps + 1)
            l_prime.append(x)
            l.append(tau[x])
            steps = 0
        else:
            steps += 1
        x = tau[x]
    n.append(steps)
    return TailDecomposition(tuple(l_prime), tuple(l), tuple(n))


def delta(tau, td: TailDecomposition, i: int, j: int) -> int:
    """1 iff tau(l_i' + 1) = l_j + 1, for 0 < i < j <= k+1."""
    if not 0 < i < j <= td.k + 1:
        raise ValueError(f"delta({i},{j}) needs 0 < i < j <= k+1 = {td.k + 1}")
    tau = as_tau(tau)
    return int(tau[td.l_prime[i] + 1] == td.level(j) + 1)


def admissible_extensions(tau, td: Optional[TailDecomposition] = None) -> List[ExtensionChoice]:
    """Values allowed for tau(N+1), highest first.

    ``tau(N+1) = l_i + 1`` for 0 <= i <= k, plus 0 (as index k+1) when
    k = 0 or l_k > 0. Spine factors are left unset; see
    :func:`cubictau.counting.extensions_with_factors`.
    """
    tau = as_tau(tau)
    if td is None:
        td = tail_decomposition(tau)
    out = [ExtensionChoice(i, td.l[i] + 1) for i in range(td.k + 1)]
    if td.k == 0 or td.l[td.k] > 0:
        out.append(ExtensionChoice(td.k + 1, 0))
    return out


def with_factor(choice: ExtensionChoice, factor: int) -> ExtensionChoice:
    return replace(choice, spine_factor=factor)
