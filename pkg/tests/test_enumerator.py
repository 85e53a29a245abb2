import json

import pytest

from cubictau import kernel
from cubictau.counting import IntegrityError
from cubictau.enumerator import (
    LevelSummary,
    LimitExceeded,
    brute_force_enumerate,
    brute_force_taus,
    enumerate_levels,
    export_prefix_tree,
    format_ratio,
    ratios,
    walk,
)
from cubictau.reference import TABLE
from cubictau.tau import TauFunction, is_admissible

KERNELS = sorted(kernel.available())


def test_compiled_kernel_built():
    # the package is expected to be installed with the extension
    assert "compiled" in kernel.available()


@pytest.mark.parametrize("name", KERNELS)
def test_level_one(name):
    assert enumerate_levels(1, kernel=name) == [LevelSummary(1, 1, 1, 1)]


@pytest.mark.parametrize("name", KERNELS)
def test_table_rows_to_15(name):
    rows = [s.as_row() for s in enumerate_levels(15, kernel=name)]
    assert rows == list(TABLE[:15])


def test_level_17_row():
    assert enumerate_levels(17)[-1].as_row() == (17, 129940, 2668241, 4338715)


def test_kernels_agree_from_arbitrary_prefix():
    ks = kernel.available()
    if len(ks) < 2:
        pytest.skip("compiled kernel not built")
    for prefix, sp in [([0, 1, 0, 1], 2), ([0, 0, 1, 2, 0], 1), ([0, 1, 2, 3, 4, 5, 0], 1)]:
        a = ks["python"].count_subtree(prefix, sp, 13)
        b = ks["compiled"].count_subtree(prefix, sp, 13)
        assert a == b


def test_compiled_kernel_rejects_visitor():
    if "compiled" not in kernel.available():
        pytest.skip("compiled kernel not built")
    with pytest.raises(NotImplementedError):
        kernel.available()["compiled"].count_subtree([0], 1, 3, visitor=print)


def test_compiled_kernel_overflow_is_detected():
    if "compiled" not in kernel.available():
        pytest.skip("compiled kernel not built")
    with pytest.raises(OverflowError):
        kernel.available()["compiled"].count_subtree([0, 1], 2**63, 4)
    with pytest.raises(OverflowError):
        kernel.available()["compiled"].count_subtree([0], 1, 80)


@pytest.mark.parametrize("name", KERNELS)
@pytest.mark.parametrize("threads, split", [(1, 8), (3, 4), (4, 8), (2, 1)])
def test_threads_do_not_change_totals(name, threads, split):
    serial = enumerate_levels(12, kernel=name)
    assert enumerate_levels(12, threads=threads, split_depth=split, kernel=name) == serial


def test_visitor_order_is_lexicographic_per_level():
    seen = {}
    enumerate_levels(9, visitor=lambda v, sp, top: seen.setdefault(len(v), []).append(v))
    for level, vals in seen.items():
        assert vals == sorted(vals)
        assert len(vals) == len(set(vals)) == TABLE[level - 1][1]


def test_debug_mode_checks_admissibility():
    assert enumerate_levels(8, debug=True) == enumerate_levels(8)


def test_visitor_totals_match(taus_by_level):
    for level, nodes in taus_by_level.items():
        row = TABLE[level - 1]
        assert len(nodes) == row[1]
        assert sum(n.spines for n in nodes) == row[2]
        assert sum(n.top for n in nodes) == row[3]
        assert all(is_admissible(n.tau) for n in nodes)


def test_brute_force_examples():
    assert brute_force_taus(2) == [TauFunction((0, 0)), TauFunction((0, 1))]
    assert {t.values for t in brute_force_taus(3)} == {(0, 1, 2), (0, 1, 0), (0, 0, 1), (0, 0, 0)}
    assert brute_force_enumerate(6)[-1].tau_count == 33


@pytest.mark.parametrize("level", range(1, 8))
def test_pruned_brute_force_equals_exhaustive(level):
    assert brute_force_taus(level) == brute_force_taus(level, exhaustive=True)


def test_brute_force_cap():
    with pytest.raises(LimitExceeded):
        brute_force_enumerate(11)
    assert len(brute_force_enumerate(11, cap=11)) == 11


def test_enumerate_matches_brute_force_to_10():
    assert enumerate_levels(10) == brute_force_enumerate(10)
    by_level = {}
    for node in walk(10):
        by_level.setdefault(node.depth, []).append(node.tau)
    for level in range(1, 11):
        assert by_level[level] == brute_force_taus(level)


@pytest.mark.parametrize(
    "num, den, text",
    [(2, 1, "2.000"), (4338715, 1475478, "2.941"), (1, 8, "0.125"), (1, 16, "0.063"), (5, 2000, "0.003"), (1, 2000, "0.001")],
)
def test_format_ratio_half_up(num, den, text):
    assert format_ratio(num, den) == text


def test_ratios():
    summaries = [LevelSummary(*row) for row in TABLE]
    got = dict(ratios(summaries))
    assert got[2] == "2.000"
    assert [got[n] for n in range(17, 22)] == ["2.941", "2.947", "2.952", "2.956", "2.960"]
    with pytest.raises(ValueError):
        ratios([summaries[0], summaries[2]])


def test_tree_level_one():
    doc = export_prefix_tree(1)
    assert doc.count("->") == 0
    assert 'label="0\\nSpines=1 TF=1 Top=1"' in doc


def test_tree_level_two():
    data = json.loads(export_prefix_tree(2, "json"))
    assert len(data["nodes"]) == 3
    assert len(data["edges"]) == 2
    assert export_prefix_tree(2).count("->") == 2


def test_tree_level_five():
    data = json.loads(export_prefix_tree(5, "json"))
    parents = {e["source"] for e in data["edges"]}
    leaves = [n for n in data["nodes"] if n["id"] not in parents]
    assert len(leaves) == 16
    assert sum(n["top"] for n in leaves) == 19
    assert all(n["level"] == 5 for n in leaves)


def test_tree_cap_and_format():
    with pytest.raises(LimitExceeded):
        export_prefix_tree(9)
    with pytest.raises(ValueError):
        export_prefix_tree(2, "svg")


def test_bad_level():
    with pytest.raises(ValueError):
        enumerate_levels(0)


def test_integrity_error_propagates(monkeypatch):
    import cubictau._pykernel as pk

    monkeypatch.setattr(pk._State, "top_shift", lambda self, n: -60)
    with pytest.raises(IntegrityError):
        enumerate_levels(3, kernel="python")


def test_python_kernel_full_table():
    rows = [s.as_row() for s in enumerate_levels(21, kernel="python")]
    assert rows == list(TABLE)


def test_env_var_forces_fallback():
    import subprocess
    import sys

    code = "from cubictau import kernel; print(kernel.BACKEND)"
    env = dict(__import__("os").environ, CUBICTAU_KERNEL="python")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_kernel():
    with pytest.raises(ValueError):
        enumerate_levels(3, kernel="gpu")
