from __future__ import annotations

import itertools
import json
from collections import Counter
from fractions import Fraction
from pathlib import Path
from xml.etree import ElementTree

import pytest

from zariski.arrangement import intersection_lattice
from zariski.cyclotomic import CycNum, Embedding
from zariski.svg import render_svg
from zariski.wiring import (
    AffineArrangement,
    Crossing,
    GenericityError,
    Node,
    Wire,
    WiringDiagram,
    WiringError,
    build_path,
    compute_diagram,
    default_perturbation,
    order_at,
    perturb_to_generic,
    resolve_chart,
    singular_values,
    to_affine,
    wiring_diagram,
)

from _shared import arrangement

GOLDEN = Path(__file__).parent / "golden"


def _two_wires() -> AffineArrangement:
    one, zero = CycNum.one(4), CycNum.zero(4)
    return AffineArrangement((Wire(1, one, zero), Wire(2, -one, zero)), (), Embedding(4, 1), 3)


def _pair_sums(W: WiringDiagram) -> dict[frozenset[int], int]:
    c: Counter = Counter()
    for e in W.crossings():
        c[frozenset((e.over, e.under))] += e.sign
    return {k: v for k, v in c.items() if v}


def test_two_wires_meeting_on_the_real_axis():
    aff = _two_wires()
    nu = build_path(aff)
    W = wiring_diagram(aff, nu)
    assert W.events == (Node(1, (2, 1)),)
    assert W.initial_order == (2, 1)
    assert W.final_order() == [1, 2]


def test_no_singular_values_is_an_error():
    one, zero = CycNum.one(4), CycNum.zero(4)
    aff = AffineArrangement((Wire(1, one, zero),), (), Embedding(4, 1), 3)
    assert singular_values(aff) == []
    with pytest.raises(WiringError):
        build_path(aff)


def test_lambda_chart_of_n_plus_has_three_vertical_lines():
    A = arrangement("N+")
    aff = to_affine(A, 5, resolve_chart(A, 5, "paper"))
    assert sorted(label for label, _ in aff.verticals) == [1, 3, 7]
    assert len(aff.wires) == 7


def test_lambda_chart_requires_l5_at_infinity():
    A = arrangement("N+")
    with pytest.raises(WiringError):
        resolve_chart(A, 6, "paper")


def test_default_perturbation_is_order_faithful_power_of_two():
    A = arrangement("N+")
    aff = to_affine(A, 5, resolve_chart(A, 5, "paper"))
    gen, eps = default_perturbation(aff)
    assert eps == Fraction(-1, 16)
    assert gen.is_generic()
    with pytest.raises(WiringError):
        perturb_to_generic(aff, 0)


def test_perturbation_can_be_non_generic():
    # slope 1 becomes vertical for epsilon = -1
    one, zero = CycNum.one(4), CycNum.zero(4)
    aff = AffineArrangement((Wire(1, one, zero), Wire(2, zero, one)), ((3, zero),), Embedding(4, 1), 4)
    with pytest.raises(GenericityError):
        perturb_to_generic(aff, -1)


CASES = [("N+", "paper"), ("N+", "standard"), ("M+", "paper"), ("N-", "standard"), ("M-", "standard"), ("FN+", "standard")]


@pytest.mark.parametrize("name,chart", CASES)
def test_diagram_is_consistent_and_pairs_meet_once(name, chart):
    A = arrangement(name)
    dr = compute_diagram(A, 5, chart)
    W = dr.diagram
    W.replay()
    # every pair of affine lines meets in exactly one node, unless they meet on L5
    affine_pairs = Counter()
    for node in W.nodes():
        for pair in itertools.combinations(sorted(node.wires), 2):
            affine_pairs[pair] += 1
    assert set(affine_pairs.values()) == {1}
    at_infinity = set()
    for p in intersection_lattice(A).points:
        if 5 in p:
            at_infinity |= {pair for pair in itertools.combinations(sorted(set(p) - {5}), 2)}
    expected = {pair for pair in itertools.combinations(sorted(set(A.labels()) - {5}), 2)} - at_infinity
    assert set(affine_pairs) == expected


@pytest.mark.parametrize("name,chart", CASES)
def test_final_order_matches_direct_sort_at_path_end(name, chart):
    dr = compute_diagram(arrangement(name), 5, chart)
    assert dr.diagram.final_order() == order_at(dr.affine, dr.path.vertices[-1])
    assert list(dr.diagram.initial_order) == order_at(dr.affine, dr.path.vertices[0])


@pytest.mark.parametrize("name,chart", [("N+", "paper"), ("N+", "standard"), ("M+", "standard")])
def test_conjugation_flips_crossings_and_keeps_nodes(name, chart):
    dr = compute_diagram(arrangement(name), 5, chart)
    W = dr.diagram
    Wc = wiring_diagram(dr.affine.conjugate(), dr.path)
    assert Wc.initial_order == W.initial_order
    assert [n.wires for n in Wc.nodes()] == [n.wires for n in W.nodes()]
    assert _pair_sums(Wc) == {k: -v for k, v in _pair_sums(W).items()}


def test_depth_conventions_are_mirror_images():
    A = arrangement("N+")
    W = compute_diagram(A, 5, "standard", depth="neg-imag").diagram
    G = compute_diagram(A, 5, "standard", depth="pos-imag").diagram
    assert [n.wires for n in G.nodes()] == [n.wires for n in W.nodes()]
    assert _pair_sums(G) == {k: -v for k, v in _pair_sums(W).items()}


def test_events_json_roundtrip():
    W = compute_diagram(arrangement("N+"), 5, "paper").diagram
    data = json.loads(W.dumps())
    assert set(data) == {"initial_order", "events"}
    assert all(set(e) <= {"node", "cross"} for e in data["events"])
    back = WiringDiagram.from_json(data)
    assert back.initial_order == W.initial_order and back.events == W.events


def test_replay_rejects_inconsistent_events():
    W = WiringDiagram((1, 2, 3), (Crossing(1, 1, 2, 1),))
    with pytest.raises(WiringError):
        W.replay()
    W = WiringDiagram((1, 2, 3), (Node(2, (1, 2)),))
    with pytest.raises(WiringError):
        W.replay()


# -- svg ----------------------------------------------------------------------------------------


def test_svg_single_wire():
    svg = render_svg(WiringDiagram((1,), ()))
    root = ElementTree.fromstring(svg)
    lines = [e for e in root.iter() if e.tag.endswith("line")]
    assert len(lines) == 1
    assert ">L1<" in svg


def test_svg_two_wire_node():
    svg = render_svg(WiringDiagram((2, 1), (Node(1, (2, 1)),)))
    root = ElementTree.fromstring(svg)
    assert sum(e.tag.endswith("circle") for e in root.iter()) == 1


def test_svg_golden_n_plus():
    W = compute_diagram(arrangement("N+"), 5, "paper").diagram
    svg = render_svg(W, title="N+, L5 at infinity")
    assert svg == render_svg(W, title="N+, L5 at infinity")
    texts = [e.text for e in ElementTree.fromstring(svg).iter() if e.tag.endswith("text")]
    assert sorted(set(texts)) == sorted(f"L{i}" for i in range(1, 12) if i != 5)
    assert svg == (GOLDEN / "n_plus_paper.svg").read_text()


def test_events_golden_n_plus():
    W = compute_diagram(arrangement("N+"), 5, "paper").diagram
    assert W.dumps() == (GOLDEN / "n_plus_paper.json").read_text()


def test_former_verticals_become_parallel():
    A = arrangement("N+")
    aff = to_affine(A, 5, resolve_chart(A, 5, "paper"))
    gen = perturb_to_generic(aff, Fraction(-1, 1000))
    slopes = {gen.wire(label).slope for label in (1, 3, 7)}
    assert len(slopes) == 1 and gen.is_generic() and len(gen.wires) == 10


def test_parallel_wires_have_no_singular_value():
    one, zero = CycNum.one(4), CycNum.zero(4)
    aff = AffineArrangement((Wire(1, zero, zero), Wire(2, zero, one)), (), Embedding(4, 1), 3)
    assert singular_values(aff) == []
    aff = AffineArrangement((Wire(1, zero, zero), Wire(2, one, zero)), (), Embedding(4, 1), 3)
    [sv] = singular_values(aff)
    assert sv.u.is_zero() and sorted(sv.wires) == [1, 2]
