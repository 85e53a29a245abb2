"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch (or an inadmissible tau for
``tau validate``), 2 usage error or a safety cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional, Sequence, Tuple

from . import kernel as _kernel
from . import reference
from .counting import (
    count_record,
    extensions_with_factors,
    moduli_sum,
    symmetry,
    twist_period,
)
from .enumerator import (
    BRUTE_FORCE_CAP,
    TREE_CAP,
    LevelSummary,
    LimitExceeded,
    brute_force_enumerate,
    brute_force_taus,
    enumerate_levels,
    export_prefix_tree,
    ratios,
    walk,
)
from .extension import tail_decomposition
from .grid import tau_to_grid
from .tau import TauParseError, first_violation, marked_levels, markers, orbit, parse_tau

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def render_csv(summaries: Sequence[LevelSummary]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(reference.COLUMNS)
    for s in summaries:
        w.writerow(s.as_row())
    return buf.getvalue()


def render_json(summaries: Sequence[LevelSummary]) -> str:
    rows = [dict(zip(reference.COLUMNS, s.as_row())) for s in summaries]
    return json.dumps(rows, indent=2) + "\n"


def compare_to_reference(
    summaries: Sequence[LevelSummary], table
) -> Tuple[bool, List[str], Optional[str]]:
    """Per-level PASS/FAIL lines and a description of the first differing cell."""
    expected = {row[0]: row for row in table}
    lines = []
    first = None
    for s in summaries:
        want = expected.get(s.level)
        if want is None:
            lines.append(f"level {s.level}: FAIL (no reference row)")
            first = first or f"level {s.level}: no reference row"
            continue
        got = s.as_row()
        bad = [
            f"{reference.COLUMNS[c]} expected {want[c]} got {got[c]}"
            for c in range(1, 4)
            if want[c] != got[c]
        ]
        if bad:
            lines.append(f"level {s.level}: FAIL ({'; '.join(bad)})")
            first = first or f"level {s.level} {bad[0]}"
        else:
            lines.append(f"level {s.level}: PASS {got[1]} {got[2]} {got[3]}")
    return first is None, lines, first


def load_table(path: str):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = []
        for rec in reader:
            if not rec or rec[0].strip().lower() == "level":
                continue
            rows.append(tuple(int(x) for x in rec[:4]))
    return tuple(rows)


def cmd_count(args) -> int:
    summaries = enumerate_levels(args.max_level, threads=args.threads, kernel=args.kernel)
    out = render_csv(summaries) if args.format == "csv" else render_json(summaries)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_verify(args) -> int:
    table = load_table(args.reference) if args.reference else reference.TABLE
    if not args.reference and args.max_level > reference.MAX_LEVEL:
        raise UsageError(f"reference data only covers levels 1..{reference.MAX_LEVEL}")
    summaries = enumerate_levels(args.max_level, threads=args.threads, kernel=args.kernel)
    ok, lines, first = compare_to_reference(summaries, table)
    for ln in lines:
        print(ln)
    if ok:
        print(f"PASS: levels 1..{args.max_level} match the reference table")
        return EXIT_OK
    print(f"FAIL: first mismatch at {first}")
    return EXIT_MISMATCH


def _parse(text: str):
    try:
        return parse_tau(text)
    except (TauParseError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _require_admissible(tau):
    bad = first_violation(tau)
    if bad is not None:
        raise UsageError(f"{tau} is not admissible: {bad}")


def cmd_tau(args) -> int:
    tau = _parse(args.tau)
    if args.action == "validate":
        bad = first_violation(tau)
        if bad is None:
            print(f"ADMISSIBLE {tau}")
            return EXIT_OK
        print(f"INADMISSIBLE {tau}: {bad}")
        return EXIT_MISMATCH
    _require_admissible(tau)
    if args.action == "extend":
        N = len(tau)
        for c in extensions_with_factors(tau):
            print(f"tau({N + 1})={c.value} index={c.index} SF={c.spine_factor}")
    elif args.action == "grid":
        print(tau_to_grid(tau).to_text())
    else:
        print(_info(tau))
    return EXIT_OK


def _info(tau) -> str:
    rec = count_record(tau)
    td = tail_decomposition(tau)
    mk = markers(tau)
    ml = marked_levels(tau)
    N = len(tau)
    lines = [
        f"tau={tau}",
        f"N={N}",
        f"markers={','.join(map(str, mk)) or '-'}",
        f"marked_levels={','.join(map(str, ml))}",
        f"orbit({N})={'->'.join(map(str, orbit(tau, N).chain))}",
        f"ord={','.join(str(orbit(tau, n).ord) for n in range(1, N + 1))}",
        f"k={td.k} l'={','.join(map(str, td.l_prime))} l={','.join(map(str, td.l))} "
        f"n={','.join(map(str, td.n))} s={symmetry(tau)}",
    ]
    for lv in ml:
        if lv:
            lines.append(f"mod({lv})={moduli_sum(tau, lv)} t({lv})={twist_period(tau, lv)}")
    lines += [
        f"Spines={rec.spines}",
        f"L={rec.L}",
        f"T={rec.T}",
        f"TF={rec.twist_factor}",
        f"Top={rec.top}",
    ]
    return "\n".join(lines)


def cmd_ratios(args) -> int:
    if args.max_level < 2:
        raise UsageError("ratios need --max-level >= 2")
    start = args.from_level if args.from_level else max(2, args.max_level - 4)
    if not 2 <= start <= args.max_level:
        raise UsageError(f"--from-level must lie in 2..{args.max_level}")
    summaries = enumerate_levels(args.max_level, threads=args.threads, kernel=args.kernel)
    pairs = [(lvl, r) for lvl, r in ratios(summaries) if lvl >= start]
    heads = [f"Levels {lvl} / {lvl - 1}" for lvl, _ in pairs]
    widths = [len(h) for h in heads]
    print(" | ".join(heads))
    print(" | ".join(r.ljust(w) for (_, r), w in zip(pairs, widths)).rstrip())
    return EXIT_OK


def cmd_tree(args) -> int:
    try:
        doc = export_prefix_tree(args.level, args.format, cap=args.cap)
    except LimitExceeded as exc:
        raise UsageError(str(exc)) from None
    if args.out == "-":
        sys.stdout.write(doc)
    else:
        with open(args.out, "w") as fh:
            fh.write(doc)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.max_level > BRUTE_FORCE_CAP:
        raise UsageError(f"oracle limited to --max-level <= {BRUTE_FORCE_CAP}")
    fast = enumerate_levels(args.max_level, kernel=args.kernel)
    slow = brute_force_enumerate(args.max_level)
    by_level = {}
    for node in walk(args.max_level):
        by_level.setdefault(node.depth, set()).add(node.tau)
    sets_equal = all(
        by_level.get(lvl, set()) == set(brute_force_taus(lvl))
        for lvl in range(1, args.max_level + 1)
    )
    for a, b in zip(fast, slow):
        flag = "=" if a == b else "!="
        print(f"level {a.level}: extension {a.as_row()[1:]} {flag} brute force {b.as_row()[1:]}")
    if fast == slow and sets_equal:
        print("AGREE")
        return EXIT_OK
    print("DISAGREE" + ("" if sets_equal else " (tau sets differ)"))
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cubictau",
        description="Enumerate tau-functions, truncated spines and conjugacy classes "
        "of generic cubic polynomials.",
    )
    p.add_argument("--kernel", choices=["compiled", "python"], default=None,
                   help=f"traversal kernel (default: {_kernel.BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    threads_default = os.cpu_count() or 1

    c = sub.add_parser("count", help="per-level totals")
    c.add_argument("--max-level", type=_positive, required=True)
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.add_argument("--threads", type=_positive, default=threads_default)
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", help="compare totals with the embedded reference table")
    v.add_argument("--max-level", type=_positive, default=reference.MAX_LEVEL)
    v.add_argument("--threads", type=_positive, default=threads_default)
    v.add_argument("--reference", help="CSV file replacing the embedded table")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tau", help="inspect one tau-function, e.g. 0,1,0,1,0")
    t.add_argument("action", choices=["validate", "extend", "grid", "info"])
    t.add_argument("tau")
    t.set_defaults(func=cmd_tau)

    r = sub.add_parser("ratios", help="classes(N)/classes(N-1) to three decimals")
    r.add_argument("--max-level", type=_positive, default=reference.MAX_LEVEL)
    r.add_argument("--from-level", type=_positive, default=None)
    r.add_argument("--threads", type=_positive, default=threads_default)
    r.set_defaults(func=cmd_ratios)

    g = sub.add_parser("tree", help="export the tau prefix tree")
    g.add_argument("--level", type=_positive, required=True)
    g.add_argument("--out", required=True, help="output path, or - for stdout")
    g.add_argument("--format", choices=["dot", "json"], default="dot")
    g.add_argument("--cap", type=_positive, default=TREE_CAP, help=argparse.SUPPRESS)
    g.set_defaults(func=cmd_tree)

    o = sub.add_parser("oracle", help="check the extension theorem against brute force")
    o.add_argument("--max-level", type=_positive, required=True)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "kernel"):
        args.kernel = None
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cubictau: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        if "not available" in str(exc):
            print(f"cubictau: error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
