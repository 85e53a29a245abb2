"""Depth-first enumeration of admissible tau-functions with per-level totals."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from . import kernel as _kernel
from .counting import spines as spines_of
from .counting import top as top_of
from .counting import twist_factor
from .tau import TauFunction, first_violation, format_tau, is_admissible

__all__ = [
    "LevelSummary",
    "EnumerationNode",
    "enumerate_levels",
    "walk",
    "brute_force_taus",
    "brute_force_enumerate",
    "ratios",
    "format_ratio",
    "export_prefix_tree",
    "BRUTE_FORCE_CAP",
    "TREE_CAP",
]

BRUTE_FORCE_CAP = 10
TREE_CAP = 8
DEFAULT_SPLIT_DEPTH = 8

Visitor = Callable[[Tuple[int, ...], int, int], None]


@dataclass(frozen=True)
class LevelSummary:
    level: int
    tau_count: int
    spine_count: int
    class_count: int

    def as_row(self) -> Tuple[int, int, int, int]:
        return (self.level, self.tau_count, self.spine_count, self.class_count)


@dataclass(frozen=True)
class EnumerationNode:
    tau: TauFunction
    spines: int
    top: int

    @property
    def depth(self) -> int:
        return len(self.tau)


class LimitExceeded(ValueError):
    """A requested level is above a configured safety cap."""


def _summaries(first_level: int, taus, sps, tops) -> List[LevelSummary]:
    return [
        LevelSummary(first_level + i, taus[i], sps[i], tops[i]) for i in range(len(taus))
    ]


def _frontier(depth: int):
    """Totals for levels 1..depth and the (tau, spines) nodes at ``depth``."""
    nodes = []

    def grab(values, sp, _top):
        if len(values) == depth:
            nodes.append((values, sp))

    totals = _kernel.python_kernel.count_subtree([0], 1, depth, visitor=grab)
    return totals, nodes


def enumerate_levels(
    max_level: int,
    visitor: Optional[Visitor] = None,
    threads: int = 1,
    split_depth: int = DEFAULT_SPLIT_DEPTH,
    kernel: Optional[str] = None,
    debug: bool = False,
) -> List[LevelSummary]:
    """Per-level totals of tau-functions, truncated spines and classes.

    ``visitor(values, spines, top)`` sees every admissible tau of length
    <= max_level once; within a level the visits are in lexicographic
    order. Visitors and ``debug`` (re-check each tau with
    :func:`is_admissible`) force the serial pure-Python kernel.

    With ``threads > 1`` the subtrees below each node at ``split_depth``
    are independent tasks whose totals are added; the result does not
    depend on scheduling.
    """
    if max_level < 1:
        raise ValueError("max_level must be >= 1")

    if visitor is not None or debug:
        user = visitor

        def visit(values, sp, top):
            if debug:
                bad = first_violation(values)
                assert bad is None, f"visited inadmissible {values}: {bad}"
            if user is not None:
                user(values, sp, top)

        totals = _kernel.python_kernel.count_subtree([0], 1, max_level, visitor=visit)
        return _summaries(1, *totals)

    k = _kernel.get(kernel)
    if threads <= 1 or max_level <= split_depth:
        return _summaries(1, *k.count_subtree([0], 1, max_level))

    (taus, sps, tops), nodes = _frontier(split_depth)
    taus, sps, tops = list(taus), list(sps), list(tops)
    # the frontier level itself is counted by the tasks
    taus[-1] = sps[-1] = tops[-1] = 0
    width = max_level - split_depth
    taus += [0] * width
    sps += [0] * width
    tops += [0] * width

    def task(node):
        prefix, sp = node
        return k.count_subtree(list(prefix), sp, max_level)

    off = split_depth - 1
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for t, s, c in pool.map(task, nodes):
            for i in range(len(t)):
                taus[off + i] += t[i]
                sps[off + i] += s[i]
                tops[off + i] += c[i]
    return _summaries(1, taus, sps, tops)


def walk(max_level: int) -> Iterator[EnumerationNode]:
    """Every admissible tau up to ``max_level`` with its Spines and Top."""
    nodes: List[EnumerationNode] = []
    enumerate_levels(
        max_level, visitor=lambda v, sp, top: nodes.append(EnumerationNode(TauFunction(v), sp, top))
    )
    return iter(nodes)


def brute_force_taus(level: int, exhaustive: bool = False) -> List[TauFunction]:
    """Admissible tau of one length, found without the extension theorem.

    Candidates are all sequences with tau(1) = 0 and tau(n) <= n - 1,
    kept when :func:`is_admissible` accepts them. By default a candidate
    prefix that already fails is not extended (each property at n only
    reads tau(1..n+1), so failures persist); ``exhaustive`` filters the
    full product instead. Output is lexicographic.
    """
    if exhaustive:
        ranges = [range(n) for n in range(1, level + 1)]
        return [TauFunction(c) for c in product(*ranges) if is_admissible(c)]
    found: List[TauFunction] = []

    def grow(prefix: List[int]):
        if len(prefix) == level:
            found.append(TauFunction(prefix))
            return
        n = len(prefix) + 1
        for v in range(n):
            cand = prefix + [v]
            if is_admissible(cand):
                grow(cand)

    grow([0])
    return found


def brute_force_enumerate(
    max_level: int,
    cap: int = BRUTE_FORCE_CAP,
    visitor: Optional[Visitor] = None,
) -> List[LevelSummary]:
    """Oracle for :func:`enumerate_levels` from the A-E filter and the per-tau formulas."""
    if max_level > cap:
        raise LimitExceeded(f"brute force limited to level {cap} (asked {max_level})")
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    out = []
    for level in range(1, max_level + 1):
        nt = ns = nc = 0
        for tau in brute_force_taus(level):
            sp = spines_of(tau)
            tp = top_of(tau, sp)
            nt += 1
            ns += sp
            nc += tp
            if visitor is not None:
                visitor(tau.values, sp, tp)
        out.append(LevelSummary(level, nt, ns, nc))
    return out


def format_ratio(num: int, den: int, places: int = 3) -> str:
    """num/den rounded half-up to ``places`` decimals, exactly."""
    scale = 10**places
    q = (2 * num * scale + den) // (2 * den)
    whole, frac = divmod(q, scale)
    return f"{whole}.{frac:0{places}d}" if places else str(whole)


def ratios(summaries: Sequence[LevelSummary]) -> List[Tuple[int, str]]:
    """(N, classes(N)/classes(N-1)) for each consecutive pair of levels."""
    out = []
    for prev, cur in zip(summaries, summaries[1:]):
        if cur.level != prev.level + 1:
            raise ValueError(f"levels {prev.level} and {cur.level} are not consecutive")
        out.append((cur.level, format_ratio(cur.class_count, prev.class_count)))
    return out


def _tree_nodes(max_level: int):
    nodes = []
    enumerate_levels(max_level, visitor=lambda v, sp, top: nodes.append((v, sp, top)))
    return nodes


def export_prefix_tree(max_level: int, fmt: str = "dot", cap: int = TREE_CAP) -> str:
    """The tau-extension tree to ``max_level`` as DOT or node-link JSON.

    Nodes carry the tau sequence, Spines, twist factor and Top; edges
    point from tau|N to its extensions.
    """
    if max_level > cap:
        raise LimitExceeded(f"tree export limited to level {cap} (asked {max_level})")
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    nodes = _tree_nodes(max_level)
    nodes.sort(key=lambda n: (len(n[0]), n[0]))
    ids: Dict[Tuple[int, ...], str] = {v: f"n{i}" for i, (v, _, _) in enumerate(nodes)}
    records = []
    for v, sp, top in nodes:
        tf = twist_factor(v)
        records.append(
            {
                "id": ids[v],
                "tau": format_tau(v),
                "level": len(v),
                "spines": sp,
                "twist_factor": str(tf),
                "top": top,
                "parent": ids[v[:-1]] if len(v) > 1 else None,
            }
        )
    if fmt == "json":
        edges = [{"source": r["parent"], "target": r["id"]} for r in records if r["parent"]]
        return json.dumps({"directed": True, "nodes": records, "edges": edges}, indent=2) + "\n"
    if fmt != "dot":
        raise ValueError(f"unknown tree format {fmt!r} (use dot or json)")
    lines = ["digraph tau_prefix_tree {", "  node [shape=box];"]
    for r in records:
        label = f"{r['tau']}\\nSpines={r['spines']} TF={r['twist_factor']} Top={r['top']}"
        lines.append(f'  {r["id"]} [label="{label}"];')
    for r in records:
        if r["parent"]:
            lines.append(f"  {r['parent']} -> {r['id']};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def summaries_to_dicts(summaries: Sequence[LevelSummary]):
    return [asdict(s) for s in summaries]
