from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.arrangement import (
    BUILTIN_NAMES,
    CYCLIC_PROJECTIVITY,
    Arrangement,
    ArrangementError,
    NonGenericError,
    ProjLine,
    ProjPoint,
    apply_projectivity,
    builtin_arrangement,
    concurrent_by_det,
    concurrent_by_meet,
    conjugate,
    extend_with_L12,
    galois_conjugate,
    intersection_lattice,
    is_ordered_realization,
    load_arrangement,
    mat_inverse,
    matrix,
    meet,
)
from zariski.combinatorics import SIGMA_K, Permutation, builtin_combinatorics
from zariski.cyclotomic import CycNum, Embedding, to_complex

from _shared import arrangement

K = builtin_combinatorics("K")
K12 = builtin_combinatorics("K12")


@pytest.mark.parametrize("name", ["N+", "N-", "M+", "M-"])
def test_realizes_k(name):
    A = arrangement(name)
    assert intersection_lattice(A) == K
    assert is_ordered_realization(A, K)


@pytest.mark.parametrize("name", ["FN+", "FN-", "FM+", "FM-"])
def test_extended_realizes_k12(name):
    A = arrangement(name)
    assert len(A) == 12
    assert intersection_lattice(A) == K12


def test_swapping_two_lines_breaks_the_ordered_realization():
    A = arrangement("N+")
    swapped = A.permuted(Permutation.from_cycles(11, [(1, 2)]))
    assert not is_ordered_realization(swapped, K)


def test_two_lines_meet_in_one_point():
    n = 10
    A = Arrangement((ProjLine.parse(["1", "0", "0"], n), ProjLine.parse(["0", "1", "0"], n)), Embedding(n, 1))
    assert intersection_lattice(A).points == ((1, 2),)


def test_quadruple_point_of_n_plus():
    A = arrangement("N+")
    p = ProjPoint.of((CycNum.zero(10), CycNum.one(10), CycNum.zero(10)))
    assert [i for i in A.labels() if A.line(i).contains(p)] == [1, 3, 5, 7]


def test_alpha_values_of_builtins():
    alpha = CycNum.gen(10)
    near = {"N+": -0.31 + 0.95j, "N-": -0.31 - 0.95j, "M+": 0.81 + 0.59j, "M-": 0.81 - 0.59j}
    for name, z in near.items():
        assert abs(to_complex(alpha, arrangement(name).embedding) - z) < 0.01


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_det_and_meet_concurrency_agree_on_all_triples(name):
    A = arrangement(name)
    count = 0
    for i, j, k in itertools.combinations(A.labels(), 3):
        assert concurrent_by_det(A.line(i), A.line(j), A.line(k)) == concurrent_by_meet(A.line(i), A.line(j), A.line(k))
        count += 1
    assert count == (165 if len(A) == 11 else 220)


def test_conjugation():
    assert conjugate(arrangement("N+")).embedding == arrangement("N-").embedding
    assert conjugate(arrangement("M+")).embedding == arrangement("M-").embedding
    assert conjugate(arrangement("N+")).embedding.root_index == 7
    for name in ("N+", "M-", "FN+"):
        A = arrangement(name)
        assert conjugate(conjugate(A)) == A


def test_projectivity_relabels_k_by_sigma():
    A = arrangement("N+")
    B = apply_projectivity(A, matrix(CYCLIC_PROJECTIVITY, 10))
    assert intersection_lattice(B) == K.relabel(SIGMA_K)
    # line i of the image is line sigma(i) of the Galois conjugate a -> a^7 = -a^2
    G = galois_conjugate(A, 7)
    assert all(B.line(i) == G.line(SIGMA_K(i)) for i in A.labels())
    # and under the N+ embedding that conjugate is M+
    assert A.embedding.compose(7) == arrangement("M+").embedding


def test_projectivity_cycles_the_four_realizations():
    m = matrix(CYCLIC_PROJECTIVITY, 10)
    A = arrangement("N+")
    images = []
    B = A
    for _ in range(4):
        B = apply_projectivity(B, m)
        images.append(B)
    # four applications send each line back to itself
    assert all(images[-1].line(i) == A.line(i) for i in A.labels())


def test_projectivity_then_inverse_is_identity():
    A = arrangement("M+")
    m = matrix(CYCLIC_PROJECTIVITY, 10)
    assert apply_projectivity(apply_projectivity(A, m), mat_inverse(m)).lines == A.lines


def test_meet_is_on_both_lines():
    A = arrangement("N+")
    for i, j in itertools.combinations(A.labels(), 2):
        p = meet(A.line(i), A.line(j))
        assert A.line(i).contains(p) and A.line(j).contains(p)


def test_extend_with_l12():
    A = arrangement("N+")
    assert intersection_lattice(extend_with_L12(A, 2)) == K12
    with pytest.raises(NonGenericError, match="L3"):
        extend_with_L12(A, 0)
    with pytest.raises(NonGenericError, match="L5"):
        extend_with_L12(A, 1)


def test_unknown_builtin():
    with pytest.raises(ArrangementError):
        builtin_arrangement("X")


def test_builtin_fm_plus():
    A = load_arrangement("builtin:FM+")
    assert len(A) == 12 and intersection_lattice(A) == K12


def test_json_roundtrip(tmp_path):
    for name in ("N+", "FM-"):
        A = arrangement(name)
        data = A.to_json()
        assert data["field"] == {"cyclotomic": 10, "root_index": A.embedding.root_index}
        path = tmp_path / "a.json"
        path.write_text(json.dumps(data))
        assert load_arrangement(str(path)).lines == A.lines


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_lattice_is_projectively_invariant(entries):
    m = matrix([entries[0:3], entries[3:6], entries[6:9]], 10)
    try:
        mat_inverse(m)
    except ArrangementError:
        return
    A = arrangement("N-")
    assert intersection_lattice(apply_projectivity(A, m)) == K
