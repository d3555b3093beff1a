"""The invariant I(A, xi, gamma) from signed over-crossing counts of a wiring-diagram braid."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arrangement import Arrangement, builtin_arrangement, intersection_lattice
from .character import Character, TriangleCycle, is_inner_cyclic
from .combinatorics import automorphism_group
from .wiring import Crossing, DiagramResult, Node, WiringDiagram, WiringError, compute_diagram


class InvariantError(ValueError):
    pass


class NotInnerCyclicError(InvariantError):
    def __init__(self, failures: Sequence[str]):
        super().__init__("the triple is not inner-cyclic: " + "; ".join(failures))
        self.failures = tuple(failures)


class PathDependenceError(InvariantError):
    pass


@dataclass(frozen=True)
class Braid:
    """A positive/negative crossing word on labelled strands, positions 1-based from the top."""

    initial_order: tuple[int, ...]
    word: tuple[Crossing, ...]

    @property
    def n_strands(self) -> int:
        return len(self.initial_order)

    def replay(self) -> list[int]:
        """Final strand order; checks that every letter names its adjacent strands."""
        order = list(self.initial_order)
        for c in self.word:
            p = c.at - 1
            if not 0 <= p < len(order) - 1 or {order[p], order[p + 1]} != {c.over, c.under}:
                raise InvariantError(f"braid letter {c} does not match strands {order[p:p + 2]}")
            if (order[p] == c.over) != (c.sign == 1):
                raise InvariantError(f"braid letter {c} has an inconsistent sign")
            order[p], order[p + 1] = order[p + 1], order[p]
        return order

    def to_json(self) -> dict:
        return {"initial_order": list(self.initial_order), "word": [c.to_json()["cross"] for c in self.word]}


def half_twist(at: int, wires: Sequence[int]) -> list[Crossing]:
    """The positive half twist reversing ``wires`` (top to bottom, starting at position ``at``)."""
    cur = list(wires)
    out = []
    for done in range(len(cur) - 1):
        for q in range(len(cur) - 1 - done):
            up, lo = cur[q], cur[q + 1]
            out.append(Crossing(at + q, 1, up, lo))
            cur[q], cur[q + 1] = lo, up
    return out


def braid_for_cycle(W: WiringDiagram, s: int, t: int) -> Braid:
    """Prefix of ``W`` up to (excluding) the node of s and t, nodes made positive half twists."""
    word: list[Crossing] = []
    for ev in W.events:
        if isinstance(ev, Node):
            if s in ev.wires and t in ev.wires:
                return Braid(W.initial_order, tuple(word))
            word.extend(half_twist(ev.at, ev.wires))
        else:
            word.append(ev)
    raise InvariantError(f"the diagram has no node through wires {s} and {t}")


@dataclass(frozen=True)
class CrossingMatrix:
    labels: tuple[int, ...]
    counts: tuple[tuple[int, ...], ...]

    def __call__(self, i: int, j: int) -> int:
        """Signed number of times wire i passes over wire j."""
        try:
            return self.counts[self.labels.index(i)][self.labels.index(j)]
        except ValueError:
            return 0

    def column(self, j: int) -> dict[int, int]:
        return {i: self(i, j) for i in self.labels if self(i, j)}

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "a": [list(r) for r in self.counts]}


def crossing_counts(b: Braid, labels: Iterable[int] | None = None) -> CrossingMatrix:
    b.replay()
    labs = tuple(sorted(labels if labels is not None else b.initial_order))
    idx = {l: k for k, l in enumerate(labs)}
    a = [[0] * len(labs) for _ in labs]
    for c in b.word:
        a[idx[c.over]][idx[c.under]] += c.sign
    return CrossingMatrix(labs, tuple(tuple(r) for r in a))


@dataclass(frozen=True)
class InvariantValue:
    order: int
    exponent: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def inverse(self) -> InvariantValue:
        return InvariantValue(self.order, -self.exponent)

    def __str__(self) -> str:
        if self.exponent == 0:
            return "1"
        return "ζ" if self.exponent == 1 else f"ζ^{self.exponent}"


def invariant_from_braid(b: Braid, xi: Character, s: int, t: int) -> InvariantValue:
    a = crossing_counts(b)
    total = sum((a(i, s) - a(i, t)) * xi(i) for i in a.labels)
    return InvariantValue(xi.order, total)


@dataclass(frozen=True)
class PathConfig:
    """One way of drawing the diagram: chart, perturbation, sweep direction, detour side."""

    chart: str = "auto"
    epsilon: Fraction | None = None
    direction: int = 0
    detour: int = -1

    def describe(self) -> str:
        eps = "auto" if self.epsilon is None else str(self.epsilon)
        side = "right" if self.detour == -1 else "left"
        return f"chart={self.chart} eps={eps} direction={self.direction} detour={side}"


DEFAULT_CONFIGS = (
    PathConfig("auto", None, 0, -1),
    PathConfig("standard", None, 1, 1),
    PathConfig("auto", Fraction(-1, 2**10), 2, 1),
    PathConfig("standard", Fraction(-1, 3), 3, -1),
    PathConfig("auto", Fraction(1, 2**6), 0, 1),
)


@dataclass(frozen=True)
class InvariantResult:
    value: InvariantValue
    gamma: TriangleCycle
    braid: Braid
    counts: CrossingMatrix
    diagram: DiagramResult
    per_config: tuple[tuple[PathConfig, InvariantValue], ...] = field(default=())

    @property
    def paths_checked(self) -> int:
        return len(self.per_config)

    def crossing_columns(self) -> dict[str, dict[str, int]]:
        return {
            str(j): {str(i): v for i, v in sorted(self.counts.column(j).items())} for j in (self.gamma.s, self.gamma.t)
        }

    def to_json(self) -> dict:
        return {
            "value_exponent": self.value.exponent,
            "order": self.value.order,
            "paths_checked": self.paths_checked,
            "crossing_columns": self.crossing_columns(),
        }


def _chart_for(A: Arrangement, r: int, chart: str) -> str:
    if chart != "auto":
        return chart
    try:
        from .wiring import resolve_chart

        resolve_chart(A, r, "paper")
        return "paper"
    except WiringError:
        return "standard"


def compute_for_config(A: Arrangement, xi: Character, gamma: TriangleCycle, config: PathConfig) -> InvariantResult:
    r, s, t = gamma.lines
    dr = compute_diagram(A, r, _chart_for(A, r, config.chart), config.epsilon, config.direction, config.detour)
    b = braid_for_cycle(dr.diagram, s, t)
    a = crossing_counts(b, A.labels())
    if any(a(r, j) or a(j, r) for j in A.labels()):
        raise InvariantError(f"the line at infinity L{r} appears in the braid")
    value = InvariantValue(xi.order, sum((a(i, s) - a(i, t)) * xi(i) for i in a.labels))
    return InvariantResult(value, gamma, b, a, dr, ((config, value),))


def invariant(
    A: Arrangement,
    xi: Character,
    gamma: TriangleCycle,
    paths: int = 1,
    configs: Sequence[PathConfig] = DEFAULT_CONFIGS,
) -> InvariantResult:
    """I(A, xi, gamma), computed on ``paths`` different diagram configurations that must agree."""
    report = is_inner_cyclic(intersection_lattice(A), xi, gamma)
    if not report.ok:
        raise NotInnerCyclicError(report.failures())
    if not 1 <= paths <= len(configs):
        raise InvariantError(f"paths must be between 1 and {len(configs)}")
    first = compute_for_config(A, xi, gamma, configs[0])
    seen = [(configs[0], first.value)]
    for cfg in configs[1:paths]:
        seen.append((cfg, compute_for_config(A, xi, gamma, cfg).value))
    values = {v for _, v in seen}
    if len(values) > 1:
        detail = ", ".join(f"[{c.describe()}] -> {v}" for c, v in seen)
        raise PathDependenceError(f"configurations disagree: {detail}")
    return InvariantResult(first.value, gamma, first.braid, first.counts, first.diagram, tuple(seen))


# -- separation --------------------------------------------------------------------------


@dataclass(frozen=True)
class SeparationReport:
    values: tuple[tuple[str, InvariantValue], ...]
    conclusions: tuple[str, ...]

    def table(self) -> str:
        width = max(len(n) for n, _ in self.values)
        return "\n".join(f"{n.ljust(width)}  {v}" for n, v in self.values)

    def text(self) -> str:
        return self.table() + ("\n\n" + "\n".join(self.conclusions) if self.conclusions else "")

    def to_json(self) -> dict:
        return {
            "values": {n: {"exponent": v.exponent, "order": v.order} for n, v in self.values},
            "conclusions": list(self.conclusions),
        }


def separation_report(
    arrangements: Sequence[tuple[str, Arrangement]], xi: Character, gamma: TriangleCycle, paths: int = 1
) -> SeparationReport:
    values = tuple((name, invariant(A, xi, gamma, paths).value) for name, A in arrangements)
    conclusions: list[str] = []
    if len(values) >= 2:
        distinct = len({v for _, v in values}) == len(values)
        combi = {intersection_lattice(A) for _, A in arrangements}
        same = len(combi) == 1
        if not same:
            conclusions.append("The arrangements do not share one ordered combinatorics; no separation is claimed.")
        elif distinct:
            conclusions.append(
                "All invariant values are pairwise distinct. Since equal values are necessary for two "
                "arrangements with the same combinatorics to have the same oriented and ordered "
                f"topological type, the {len(values)} arrangements form an oriented and ordered Zariski "
                f"{_tuple_name(len(values))}."
            )
            names = [n for n, _ in values]
            for a, b in itertools.combinations(range(len(values)), 2):
                if values[a][1] == values[b][1].inverse():
                    conclusions.append(
                        f"{names[a]} and {names[b]} have inverse values, consistent with the invariant "
                        "commuting with complex conjugation."
                    )
            aut = automorphism_group(next(iter(combi)))
            if aut.order == 1:
                conclusions.append(
                    "The automorphism group of the combinatorics is trivial, so any homeomorphism between "
                    "two of them preserves the line ordering: they form a Zariski "
                    f"{_tuple_name(len(values))} for the unordered topological type as well."
                )
            else:
                conclusions.append(
                    f"The automorphism group of the combinatorics has order {aut.order}, so the conclusion "
                    "is about ordered types only; adding a line that kills these automorphisms upgrades it."
                )
        else:
            clashes = [
                f"{values[a][0]} = {values[b][0]}"
                for a, b in itertools.combinations(range(len(values)), 2)
                if values[a][1] == values[b][1]
            ]
            conclusions.append("Some values coincide (" + ", ".join(clashes) + "); the invariant does not separate them.")
    return SeparationReport(values, tuple(conclusions))


def _tuple_name(k: int) -> str:
    return {2: "pair", 3: "triple", 4: "4-tuple"}.get(k, f"{k}-tuple")


K_REALIZATIONS = ("N+", "N-", "M+", "M-")


def k_separation(paths: int = 1) -> SeparationReport:
    from .character import XI5, GAMMA_5_6_11

    return separation_report([(n, builtin_arrangement(n)) for n in K_REALIZATIONS], XI5, GAMMA_5_6_11, paths)
