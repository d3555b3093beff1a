from __future__ import annotations

import itertools
import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zariski.combinatorics import (
    SEARCH_LIMIT,
    SIGMA_K,
    AutGroup,
    Combinatorics,
    CombinatoricsError,
    Permutation,
    automorphism_group,
    builtin_combinatorics,
    generic_combinatorics,
    graph_automorphism_count,
    incidence_graph,
    is_automorphism,
    load_combinatorics,
    orbits,
    validate_combinatorics,
)

K = builtin_combinatorics("K")
K12 = builtin_combinatorics("K12")


def _brute_force_automorphisms(C: Combinatorics) -> set[tuple[int, ...]]:
    """All line permutations fixing P, searched inside the product of symmetric
    groups on the classes of lines with equal point-size profiles."""
    profile = {
        i: tuple(sorted(len(p) for p in C.points if i in p)) for i in C.lines
    }
    classes: dict[tuple[int, ...], list[int]] = {}
    for i in C.lines:
        classes.setdefault(profile[i], []).append(i)
    blocks = list(classes.values())
    target = {frozenset(p) for p in C.points}
    found = set()
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        images = [0] * C.n_lines
        for block, img in zip(blocks, choice):
            for a, b in zip(block, img):
                images[a - 1] = b
        if {frozenset(images[i - 1] for i in p) for p in C.points} == target:
            found.add(tuple(images))
    return found


def test_k_is_valid_with_23_points():
    assert validate_combinatorics(K).ok
    assert len(K.points) == 23


def test_k12_is_valid_with_30_points():
    assert validate_combinatorics(K12).ok
    assert len(K12.points) == 30


def test_pair_in_two_points_is_reported():
    C = Combinatorics(3, ((1, 2), (1, 2, 3)))
    report = validate_combinatorics(C)
    assert not report.ok
    assert any("(1, 2)" in v and "2 points" in v for v in report.violations)


def test_missing_pair_is_reported():
    C = Combinatorics(3, ((1, 2),))
    assert not validate_combinatorics(C).ok


def test_incidence_graph_generic_three_lines_is_hexagon():
    G = incidence_graph(generic_combinatorics(3)).to_networkx()
    assert nx.is_isomorphic(G, nx.cycle_graph(6))


def test_incidence_graph_counts_for_k():
    G = incidence_graph(K)
    assert len(G.line_vertices) == 11
    assert len(G.point_vertices) == 23
    # one edge per incidence, so the sum of the point sizes
    assert len(G.edges) == sum(len(p) for p in K.points) == 60


def test_incidence_graph_single_point_is_path():
    G = incidence_graph(Combinatorics(2, ((1, 2),))).to_networkx()
    assert nx.is_isomorphic(G, nx.path_graph(3))


def test_incidence_graph_rejects_invalid():
    with pytest.raises(CombinatoricsError):
        incidence_graph(Combinatorics(3, ((1, 2),)))


def test_aut_k_is_cyclic_of_order_4():
    G = automorphism_group(K)
    assert G.order == 4
    assert len(G.generators) == 1
    g = G.generators[0]
    assert g.order() == 4
    powers = {Permutation.identity(11), g, g * g, g * g * g}
    assert set(G.elements) == powers


def test_aut_k_generator_is_sigma():
    assert automorphism_group(K).generators[0] == SIGMA_K


def test_aut_k_matches_brute_force():
    assert {g.images for g in automorphism_group(K).elements} == _brute_force_automorphisms(K)


def test_aut_k12_is_trivial():
    G = automorphism_group(K12)
    assert G.order == 1
    assert _brute_force_automorphisms(K12) == {tuple(range(1, 13))}


def test_aut_generic_is_symmetric_group():
    assert automorphism_group(generic_combinatorics(4)).order == 24


def test_graph_automorphisms_agree_with_line_automorphisms():
    assert graph_automorphism_count(incidence_graph(K)) == 4
    # the hexagon has 12 symmetries, 6 of which keep lines on lines
    hexagon = incidence_graph(generic_combinatorics(3))
    assert graph_automorphism_count(hexagon) == 6
    assert graph_automorphism_count(hexagon, respect_bipartition=False) == 12


def test_search_limit():
    with pytest.raises(CombinatoricsError):
        automorphism_group(generic_combinatorics(SEARCH_LIMIT + 1))


def test_orbits_of_k():
    orb = orbits(K, automorphism_group(K))
    assert orb.lines == ((1, 2, 3, 4), (5, 6), (7, 8, 9, 10), (11,))
    quadruple = [o for o in orb.points if len(o[0]) == 4]
    assert quadruple == [((1, 3, 5, 7), (1, 4, 6, 8), (2, 3, 6, 9), (2, 4, 5, 10))]


def test_orbits_reject_non_automorphism():
    bogus = Permutation.from_cycles(11, [(1, 2)])
    with pytest.raises(CombinatoricsError):
        orbits(K, AutGroup(11, (bogus,), (bogus, Permutation.identity(11))))


def test_permutation_parse_and_print():
    p = Permutation.parse(11, "(1 3 2 4)(5 6)(7 9 10 8)")
    assert p == SIGMA_K
    assert p(1) == 3 and p(4) == 1 and p(8) == 7
    assert (p * p.inverse()).is_identity()


def test_json_roundtrip(tmp_path):
    path = tmp_path / "k.json"
    path.write_text(json.dumps(K.to_json()))
    assert load_combinatorics(str(path)) == K
    assert K.to_json()["points"] == sorted(K.to_json()["points"])


@settings(max_examples=40, deadline=None)
@given(st.permutations(list(range(1, 12))))
def test_aut_is_equivariant_under_relabelling(images):
    phi = Permutation(tuple(images))
    C = K.relabel(phi)
    G = automorphism_group(C)
    assert G.order == 4
    conj = {phi * g * phi.inverse() for g in automorphism_group(K).elements}
    assert set(G.elements) == conj
    assert all(is_automorphism(C, g) for g in G.elements)
