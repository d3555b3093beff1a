from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.arrangement import intersection_lattice
from zariski.character import (
    XI5,
    GAMMA_5_6_11,
    Character,
    CharacterError,
    TriangleCycle,
    character_pushforward,
    is_inner_cyclic,
    validate_character,
    zero_character,
)
from zariski.combinatorics import SIGMA_K, Permutation, builtin_combinatorics

from _shared import arrangement

K = builtin_combinatorics("K")


def test_paper_character_values():
    assert XI5.order == 5
    assert XI5.exponents == (1, 4, 3, 2, 0, 0, 1, 2, 3, 4, 0)
    assert sum(XI5.exponents) == 20


def test_validate_character():
    assert validate_character(K, XI5).ok
    assert validate_character(K, zero_character(11, 5)).ok
    assert not validate_character(K, Character(5, (1,) + (0,) * 10)).ok
    with pytest.raises(CharacterError):
        validate_character(K, Character(5, (0,) * 10))


def test_xi_gamma_triple_is_inner_cyclic():
    report = is_inner_cyclic(K, XI5, GAMMA_5_6_11)
    assert report.ok
    assert report.condition1.ok and report.condition2.ok and report.condition3.ok


def test_cycle_123_fails_condition_one_at_line_one():
    report = is_inner_cyclic(K, XI5, TriangleCycle(1, 2, 3))
    assert not report.ok
    assert not report.condition1.ok
    assert report.condition1.failures[0] == "line 1 has exponent 1"


def test_zero_character_is_always_inner_cyclic():
    for cycle in [(1, 2, 3), (5, 6, 11), (7, 8, 9)]:
        assert is_inner_cyclic(K, zero_character(11, 5), TriangleCycle(*cycle)).ok


@pytest.mark.parametrize("name", ["N+", "N-", "M+", "M-"])
def test_verdict_only_depends_on_combinatorics(name):
    C = intersection_lattice(arrangement(name))
    assert is_inner_cyclic(C, XI5, GAMMA_5_6_11).ok
    assert not is_inner_cyclic(C, XI5, TriangleCycle(1, 2, 3)).ok


def test_extended_character_on_k12():
    K12 = builtin_combinatorics("K12")
    assert is_inner_cyclic(K12, XI5.extended(0), GAMMA_5_6_11).ok


def test_condition_two_implies_condition_three_on_cycle_points():
    # a point of the cycle with all exponents zero has exponent sum zero
    xi = Character(5, (1, 4, 3, 2, 0, 0, 1, 2, 3, 4, 0))
    for cycle in [(5, 6, 11), (6, 11, 5), (11, 5, 6)]:
        gamma = TriangleCycle(*cycle)
        report = is_inner_cyclic(K, xi, gamma)
        assert report.condition2.ok and report.condition3.ok


def test_pushforward():
    assert character_pushforward(XI5, Permutation.identity(11)) == XI5
    pushed = character_pushforward(XI5, SIGMA_K)
    # sigma(1) = 3 and sigma(4) = 1
    assert pushed(3) == 1 and pushed(1) == 2
    assert all(pushed(SIGMA_K(i)) == XI5(i) for i in range(1, 12))
    assert character_pushforward(pushed, SIGMA_K.inverse()) == XI5


def test_cycle_parsing():
    assert TriangleCycle.parse("5,6,11") == GAMMA_5_6_11
    assert TriangleCycle.parse(" 5, 6 ,11 ").lines == (5, 6, 11)
    with pytest.raises(CharacterError):
        TriangleCycle.parse("5,6")
    with pytest.raises(CharacterError):
        TriangleCycle(5, 5, 6)


def test_json_formats():
    assert XI5.to_json() == {"order": 5, "exponents": [1, 4, 3, 2, 0, 0, 1, 2, 3, 4, 0]}
    assert Character.from_json(XI5.to_json()) == XI5
    assert GAMMA_5_6_11.to_json() == {"cycle": [5, 6, 11]}
    with pytest.raises(CharacterError):
        Character.from_json({"order": 5})


@settings(max_examples=60, deadline=None)
@given(
    st.permutations(list(range(1, 12))),
    st.lists(st.integers(0, 4), min_size=11, max_size=11),
    st.sampled_from([(5, 6, 11), (1, 2, 3), (7, 8, 5), (11, 6, 5)]),
)
def test_inner_cyclic_is_equivariant(images, exps, cycle):
    phi = Permutation(tuple(images))
    xi = Character(5, tuple(exps))
    gamma = TriangleCycle(*cycle)
    before = is_inner_cyclic(K, xi, gamma)
    after = is_inner_cyclic(K.relabel(phi), character_pushforward(xi, phi), gamma.relabel(phi))
    assert before.ok == after.ok
    for k in ("condition1", "condition2", "condition3"):
        assert getattr(before, k).ok == getattr(after, k).ok
