import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubictau.extension import admissible_extensions, delta, tail_decomposition
from cubictau.tau import TauFunction, is_admissible, markers, ord_, orbit


def values(tau):
    return [c.value for c in admissible_extensions(tau)]


@pytest.mark.parametrize(
    "tau, l_prime, l, n",
    [
        ((0, 1, 2), (3,), (2,), (2,)),
        ((0, 0, 1), (3, 1), (1, 0), (1, 0)),
        ((0, 1, 0, 1, 0), (5,), (0,), (0,)),
        ((0,), (1,), (0,), (0,)),
    ],
)
def test_tail_decomposition_examples(tau, l_prime, l, n):
    td = tail_decomposition(tau)
    assert (td.l_prime, td.l, td.n) == (l_prime, l, n)


@pytest.mark.parametrize(
    "tau, expected",
    [((0,), [1, 0]), ((0, 0, 1), [2, 1]), ((0, 1, 2), [3, 0])],
)
def test_extension_examples(tau, expected):
    assert values(tau) == expected


def test_zero_choice_index_when_k_is_zero():
    choices = admissible_extensions((0, 1, 2))
    assert [(c.index, c.value) for c in choices] == [(0, 3), (1, 0)]


def test_rejected_by_brute_force():
    assert not is_admissible((0, 1, 2, 1))
    assert not is_admissible((0, 1, 2, 2))
    assert not is_admissible((0, 0, 1, 0))


def test_delta_examples():
    tau = (0, 0, 1, 1)
    td = tail_decomposition(tau)
    assert td.k == 1
    assert delta(tau, td, 1, 2) == 1
    with pytest.raises(ValueError):
        delta(tau, td, 0, 1)
    with pytest.raises(ValueError):
        delta(tau, td, 1, 3)


def test_delta_negative_branch(taus_by_level):
    # some enumerated tau must have a delta(i,j) = 0 with j <= k
    for nodes in taus_by_level.values():
        for node in nodes:
            td = tail_decomposition(node.tau)
            for i in range(1, td.k):
                for j in range(i + 1, td.k + 1):
                    if delta(node.tau, td, i, j) == 0:
                        return
    pytest.fail("no delta = 0 witness found")


def check_decomposition(tau):
    td = tail_decomposition(tau)
    k = td.k
    assert td.l_prime[0] == len(tau)
    assert list(td.l_prime) == sorted(td.l_prime, reverse=True)
    assert list(td.l) == sorted(set(td.l), reverse=True)
    for i in range(k + 1):
        assert td.l[i] == tau[td.l_prime[i]]
    chain = orbit(tau, len(tau)).chain
    mk = set(markers(tau))
    assert set(td.l_prime[1:]) == set(chain) & mk
    for i in range(k + 1):
        x = td.l[i]
        for _ in range(td.n[i]):
            x = tau[x]
        assert x == (td.l[i + 1] if i < k else 0)
    assert sum(td.n) == ord_(tau, td.l[0])
    if k:
        assert delta(tau, td, k, k + 1) == 1
    return td


def test_decomposition_invariants(taus_by_level):
    for nodes in taus_by_level.values():
        for node in nodes:
            check_decomposition(node.tau)


@pytest.mark.parametrize("N", range(1, 11))
def test_extension_theorem_matches_brute_force(taus_by_level, N):
    for node in taus_by_level[N]:
        tau = node.tau
        brute = sorted((v for v in range(N + 1) if is_admissible(tau.values + (v,))), reverse=True)
        got = values(tau)
        assert got == brute, tau
        td = tail_decomposition(tau)
        assert 1 <= len(got) <= td.k + 2
        if td.k == 0:
            assert len(got) >= 2
        assert got[0] == tau[N] + 1


@st.composite
def admissible_taus(draw, max_len=25):
    tau = TauFunction((0,))
    length = draw(st.integers(1, max_len))
    while len(tau) < length:
        options = admissible_extensions(tau)
        tau = tau.extend(options[draw(st.integers(0, len(options) - 1))].value)
    return tau


@settings(max_examples=200)
@given(admissible_taus())
def test_random_deep_taus(tau):
    check_decomposition(tau)
    for c in admissible_extensions(tau):
        assert is_admissible(tau.values + (c.value,))
