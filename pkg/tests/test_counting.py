from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubictau.counting import (
    DyadicRational,
    IntegrityError,
    count_record,
    extensions_with_factors,
    moduli_sum,
    side_component_count,
    spine_factor,
    spines,
    symmetry,
    top,
    twist_factor,
    twist_period,
)
from cubictau.extension import ExtensionChoice, admissible_extensions, tail_decomposition
from cubictau.tau import marked_levels, ord_

from oracles import mod_fraction


@pytest.mark.parametrize("tau, s", [((0, 1, 2, 3), 3), ((0, 1, 0, 1), 0), ((0, 0, 1), 1)])
def test_symmetry(tau, s):
    assert symmetry(tau) == s


def factor_for(tau, value):
    for c in extensions_with_factors(tau):
        if c.value == value:
            return c.spine_factor
    raise AssertionError(f"{value} not an extension of {tau}")


def test_central_choice_factor_is_one():
    for tau in [(0,), (0, 1, 0, 1), (0, 0, 1, 1), (0, 1, 2, 3)]:
        assert spine_factor(tau, admissible_extensions(tau)[0]) == 1


@pytest.mark.parametrize("tau, value, sf", [((0, 1, 0, 1), 0, 2), ((0, 0, 1, 1), 1, 2), ((0, 0, 1), 1, 1)])
def test_spine_factor_examples(tau, value, sf):
    assert factor_for(tau, value) == sf


def test_spine_factor_rejects_inadmissible_choice():
    with pytest.raises(ValueError):
        spine_factor((0, 0, 1), ExtensionChoice(2, 0))


@pytest.mark.parametrize("tau, n", [((0, 1, 0, 1, 0), 2), ((0, 0, 0, 0, 0), 1), ((0,), 1)])
def test_spines_examples(tau, n):
    assert spines(tau) == n


def test_moduli_sum_examples():
    assert moduli_sum((0, 1, 2, 0), 1) == DyadicRational(1, 1)
    assert moduli_sum((0, 1, 2, 0), 2) == DyadicRational(3, 2)
    assert moduli_sum((0, 0, 1, 2, 0), 2) == DyadicRational(1, 0)
    assert moduli_sum((0, 0, 1, 2, 0), 0) == DyadicRational(0)
    with pytest.raises(ValueError):
        moduli_sum((0, 1, 2), 2)


def test_twist_period_examples():
    assert twist_period((0, 1, 2, 0), 1) == 2
    assert twist_period((0, 1, 2, 0), 2) == 4
    assert twist_period((0, 0, 1, 2, 0), 2) == 1
    assert twist_period((0, 0, 1, 2, 0), 0) == 1


@pytest.mark.parametrize(
    "tau, tf", [((0, 1, 2, 3), 1), ((0, 0, 1, 2, 0), 2), ((0, 1, 0, 1, 0), 1)]
)
def test_twist_factor_examples(tau, tf):
    assert twist_factor(tau) == tf


@pytest.mark.parametrize("tau, n", [((0,), 1), ((0, 1, 0, 1, 0), 2), ((0, 0, 1, 2, 0), 2)])
def test_top_examples(tau, n):
    assert top(tau) == n


def test_count_record():
    rec = count_record((0, 1, 0, 1, 0))
    assert (rec.spines, rec.L, rec.T, rec.twist_factor, rec.top) == (2, 1, 2, Fraction(1), 2)


def test_top_integrity_error(monkeypatch):
    with pytest.raises(IntegrityError):
        top((0, 1, 2, 0), spine_count=0)
    import cubictau.counting as counting

    monkeypatch.setattr(counting, "twist_factor", lambda tau: Fraction(1, 2))
    with pytest.raises(IntegrityError):
        counting.top((0, 1, 0, 1, 0), spine_count=1)


@given(st.integers(0, 10**6), st.integers(0, 40), st.integers(0, 10**6), st.integers(0, 40))
def test_dyadic_matches_fraction(a, e, b, f):
    x, y = DyadicRational(a, e), DyadicRational(b, f)
    assert (x + y).to_fraction() == Fraction(a, 2**e) + Fraction(b, 2**f)
    z = x + y
    assert z.exponent == 0 or z.numerator % 2 == 1


def test_dyadic_lowest_terms():
    assert DyadicRational(4, 3) == DyadicRational(1, 1)
    assert DyadicRational(0, 5).exponent == 0
    assert str(DyadicRational(3, 2)) == "3/4"
    with pytest.raises(ValueError):
        DyadicRational(-1, 0)


def test_formulas_agree_with_kernel(taus_by_level):
    for nodes in taus_by_level.values():
        for node in nodes:
            assert spines(node.tau) == node.spines
            assert top(node.tau) == node.top


def test_counting_invariants(taus_by_level):
    for nodes in taus_by_level.values():
        for node in nodes:
            tau = node.tau
            td = tail_decomposition(tau)
            s = symmetry(tau)
            assert 0 <= s <= td.n[0]
            allowed = {c.index for c in admissible_extensions(tau)}
            counts = [side_component_count(tau, td, i) for i in range(1, td.k + 2)]
            assert sum(counts) == 2 ** ord_(tau, td.l[0])
            for i, c in enumerate(counts, 1):
                assert (c == 0) == (i not in allowed)
                if i in allowed:
                    assert c == (2**s) * spine_factor(tau, ExtensionChoice(i, td.level(i) + 1 if i <= td.k else 0), td)
            ml = [l for l in marked_levels(tau) if l]
            mods = [moduli_sum(tau, l) for l in ml]
            for l, m in zip(ml, mods):
                assert m.to_fraction() == mod_fraction(tau.values, l)
                t = twist_period(tau, l)
                assert t & (t - 1) == 0
                assert t * m.to_fraction() == int(t * m.to_fraction())
                assert all((n * m.to_fraction()).denominator != 1 for n in range(1, t))
            assert [m.to_fraction() for m in mods] == sorted({m.to_fraction() for m in mods})
