"""End-to-end acceptance checks, one per criterion.

Run with pytest (a summary line per criterion is printed at the end) or
directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _shared import arrangement  # noqa: E402
from test_combinatorics import _brute_force_automorphisms  # noqa: E402
from test_cyclotomic import _oracle as polynomial_oracle  # noqa: E402
from test_cyclotomic import _random_cyc  # noqa: E402

from zariski.arrangement import (  # noqa: E402
    BUILTIN_NAMES,
    CYCLIC_PROJECTIVITY,
    apply_projectivity,
    concurrent_by_det,
    concurrent_by_meet,
    conjugate,
    intersection_lattice,
    matrix,
)
from zariski.character import XI5, GAMMA_5_6_11, is_inner_cyclic  # noqa: E402
from zariski.cli import run  # noqa: E402
from zariski.combinatorics import SIGMA_K, Permutation, automorphism_group, builtin_combinatorics  # noqa: E402
from zariski.cyclotomic import cyc_arith  # noqa: E402
from zariski.invariant import invariant  # noqa: E402

K = builtin_combinatorics("K")
K12 = builtin_combinatorics("K12")
EXPECTED = {"N+": 1, "N-": 4, "M+": 2, "M-": 3}
RESULTS: dict[int, tuple[bool, str]] = {}


def _character_for(A):
    return XI5.extended(0) if len(A) == 12 else XI5


def check_1() -> str:
    t0 = time.perf_counter()
    G = automorphism_group(K)
    dt = time.perf_counter() - t0
    assert G.order == 4
    assert SIGMA_K in G.elements and G.generators == (SIGMA_K,)
    assert SIGMA_K == Permutation.parse(11, "(1 3 2 4)(5 6)(7 9 10 8)")
    assert run(["combi", "aut", "builtin:K"]) == 0
    assert dt < 1.0
    return f"Aut(K) cyclic of order 4 generated by {SIGMA_K} ({dt:.2f}s)"


def check_2() -> str:
    t0 = time.perf_counter()
    G = automorphism_group(K12)
    dt = time.perf_counter() - t0
    assert G.order == 1 and dt < 1.0
    return f"Aut(K12) trivial ({dt:.2f}s)"


def check_3() -> str:
    t0 = time.perf_counter()
    for name in ("N+", "N-", "M+", "M-"):
        L = intersection_lattice(arrangement(name))
        assert L == K and len(L.points) == 23
    for name in ("FN+", "FN-", "FM+", "FM-"):
        L = intersection_lattice(arrangement(name))
        assert L == K12 and len(L.points) == 30
    dt = time.perf_counter() - t0
    assert dt < 5.0
    return f"all 8 built-ins realize their combinatorics ({dt:.2f}s)"


def check_4() -> str:
    report = is_inner_cyclic(K, XI5, GAMMA_5_6_11)
    assert report.condition1.ok and report.condition2.ok and report.condition3.ok
    return "(K, xi, gamma(5,6,11)) satisfies conditions (1), (2), (3)"


def check_5() -> str:
    t0 = time.perf_counter()
    got = {n: invariant(arrangement(n), XI5, GAMMA_5_6_11).value.exponent for n in EXPECTED}
    dt = time.perf_counter() - t0
    assert got == EXPECTED, got
    assert dt < 60.0
    return f"exponents {tuple(got.values())} for (N+, N-, M+, M-) ({dt:.1f}s)"


def check_6() -> str:
    res = invariant(arrangement("N+"), XI5, GAMMA_5_6_11)
    a = res.counts
    word = res.braid.word
    ten_over_six = sorted(c.sign for c in word if (c.over, c.under) == (10, 6))
    nine_over_eleven = sorted(c.sign for c in word if (c.over, c.under) == (9, 11))
    assert ten_over_six == [-1, 1] and a(10, 6) == 0 and a(7, 6) == 1
    assert res.counts.column(6) == {7: 1}
    assert nine_over_eleven == [-1, 1, 1] and a(9, 11) == 1
    assert a(10, 11) == -1 and a(6, 11) == 0 and a(7, 11) == 1
    assert res.counts.column(11) == {7: 1, 9: 1, 10: -1}
    return "column 6 = {10: +1-1, 7: +1}, column 11 = {9: +1+1-1, 10: -1, 6: 0, 7: +1}"


def check_7() -> str:
    for name in BUILTIN_NAMES:
        A = arrangement(name)
        res = invariant(A, _character_for(A), GAMMA_5_6_11, paths=3)
        configs = [c for c, _ in res.per_config]
        assert len({(c.chart, c.epsilon, c.detour) for c in configs}) == 3
        assert res.value.exponent == EXPECTED[name.lstrip("F")]
    return f"3 configurations agree on all {len(BUILTIN_NAMES)} built-ins"


def check_8() -> str:
    for name in EXPECTED:
        A = arrangement(name)
        v = invariant(A, XI5, GAMMA_5_6_11).value
        w = invariant(conjugate(A), XI5, GAMMA_5_6_11).value
        assert w == v.inverse()
    return "I(conjugate(A)) = I(A)^-1 for N+, N-, M+, M-"


def check_9() -> str:
    B = apply_projectivity(arrangement("N+"), matrix(CYCLIC_PROJECTIVITY, 10))
    assert intersection_lattice(B) == K.relabel(SIGMA_K)
    return "(x,y,z) -> (z,x+y-z,y) maps N+ to a realization of sigma-relabelled K"


def check_10() -> str:
    triples = 0
    for name in BUILTIN_NAMES:
        A = arrangement(name)
        for i, j, k in itertools.combinations(A.labels(), 3):
            assert concurrent_by_det(A.line(i), A.line(j), A.line(k)) == concurrent_by_meet(A.line(i), A.line(j), A.line(k))
            triples += 1
    rng = random.Random(2024)
    kinds = ("add", "sub", "mul", "div")
    pairs = 0
    while pairs < 1000:
        a, b = _random_cyc(rng, 10), _random_cyc(rng, 10)
        kind = kinds[pairs % 4]
        if kind == "div" and b.is_zero():
            continue
        assert list(cyc_arith(kind, a, b).coeffs) == polynomial_oracle(kind, a, b, 10)
        pairs += 1
    assert {g.images for g in automorphism_group(K).elements} == _brute_force_automorphisms(K)
    return f"{triples} triples det = meet; {pairs} random pairs match Q[X]/Phi_10; Aut(K) = brute force"


CHECKS = {k: globals()[f"check_{k}"] for k in range(1, 11)}


@pytest.mark.parametrize("criterion", list(CHECKS))
def test_criterion(criterion):
    try:
        detail = CHECKS[criterion]()
    except Exception as exc:
        RESULTS[criterion] = (False, f"{type(exc).__name__}: {exc}")
        raise
    RESULTS[criterion] = (True, detail)


def summary_lines() -> list[str]:
    return [
        f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}" for k, (ok, detail) in sorted(RESULTS.items())
    ]


if __name__ == "__main__":
    failed = 0
    for k, fn in CHECKS.items():
        try:
            RESULTS[k] = (True, fn())
        except Exception as exc:  # noqa: BLE001
            RESULTS[k] = (False, f"{type(exc).__name__}: {exc}")
            failed += 1
        print(summary_lines()[-1], flush=True)
    sys.exit(1 if failed else 0)
