"""Combinatorial types of line arrangements, their incidence graphs and symmetries."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx


def _fmt_point(p) -> str:
    return "{" + ", ".join(map(str, sorted(p))) + "}"


class CombinatoricsError(ValueError):
    pass


@dataclass(frozen=True)
class Combinatorics:
    """Lines ``1..n_lines`` and every intersection point as a set of line labels.

    Points are stored sorted, and the point list sorted lexicographically,
    so two equal combinatorics compare equal field by field.
    """

    n_lines: int
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        pts = tuple(sorted(tuple(sorted(set(p))) for p in self.points))
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, n_lines: int, points: Iterable[Iterable[int]]) -> Combinatorics:
        return cls(n_lines, tuple(tuple(p) for p in points))

    @property
    def lines(self) -> range:
        return range(1, self.n_lines + 1)

    def point_of(self, i: int, j: int) -> tuple[int, ...]:
        for p in self.points:
            if i in p and j in p:
                return p
        raise CombinatoricsError(f"no point contains lines {i} and {j}")

    def points_on(self, line: int) -> list[tuple[int, ...]]:
        return [p for p in self.points if line in p]

    def multiplicity_profile(self, line: int) -> tuple[int, ...]:
        return tuple(sorted(len(p) for p in self.points_on(line)))

    def relabel(self, perm: Permutation) -> Combinatorics:
        """Image under ``L_i -> L_perm(i)``."""
        if perm.degree != self.n_lines:
            raise CombinatoricsError("permutation degree differs from the number of lines")
        return Combinatorics(self.n_lines, tuple(tuple(perm(i) for i in p) for p in self.points))

    def restrict(self, lines: Sequence[int]) -> Combinatorics:
        """Sub-combinatorics on ``lines``, relabelled 1..len(lines) in the given order."""
        index = {l: k + 1 for k, l in enumerate(lines)}
        pts = set()
        for p in self.points:
            q = tuple(sorted(index[i] for i in p if i in index))
            if len(q) >= 2:
                pts.add(q)
        return Combinatorics(len(lines), tuple(pts))

    def to_json(self) -> dict:
        return {"lines": self.n_lines, "points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> Combinatorics:
        try:
            n = int(data["lines"])
            pts = [[int(i) for i in p] for p in data["points"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise CombinatoricsError(f"malformed combinatorics JSON: {exc}") from None
        return cls.from_points(n, pts)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_combinatorics(C: Combinatorics) -> ValidationReport:
    problems: list[str] = []
    for p in C.points:
        if len(p) < 2:
            problems.append(f"point {_fmt_point(p)} has fewer than 2 lines")
        bad = [i for i in p if not 1 <= i <= C.n_lines]
        if bad:
            problems.append(f"point {_fmt_point(p)} uses unknown line labels {bad}")
    seen: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for p in C.points:
        for pair in itertools.combinations(p, 2):
            seen.setdefault(pair, []).append(p)
    for pair in itertools.combinations(C.lines, 2):
        holders = seen.get(pair, [])
        if not holders:
            problems.append(f"pair {pair} lies in no point")
        elif len(holders) > 1:
            problems.append(f"pair {pair} lies in {len(holders)} points: {holders}")
    return ValidationReport(not problems, tuple(problems))


def require_valid(C: Combinatorics) -> None:
    report = validate_combinatorics(C)
    if not report.ok:
        raise CombinatoricsError("invalid combinatorics: " + "; ".join(report.violations))


# -- incidence graph ----------------------------------------------------------


@dataclass(frozen=True)
class IncidenceGraph:
    line_vertices: frozenset[str]
    point_vertices: frozenset[str]
    edges: frozenset[tuple[str, str]]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(self.line_vertices), kind="line")
        g.add_nodes_from(sorted(self.point_vertices), kind="point")
        g.add_edges_from(sorted(self.edges))
        return g


def line_vertex(i: int) -> str:
    return f"L{i}"


def point_vertex(p: Sequence[int]) -> str:
    return "P" + ",".join(map(str, p))


def incidence_graph(C: Combinatorics) -> IncidenceGraph:
    require_valid(C)
    lines = frozenset(line_vertex(i) for i in C.lines)
    pts = frozenset(point_vertex(p) for p in C.points)
    edges = frozenset((line_vertex(i), point_vertex(p)) for p in C.points for i in p)
    return IncidenceGraph(lines, pts, edges)


def graph_automorphism_count(G: IncidenceGraph, respect_bipartition: bool = True) -> int:
    """Number of automorphisms of the incidence graph (optionally class-preserving)."""
    g = G.to_networkx()
    match = (lambda a, b: a["kind"] == b["kind"]) if respect_bipartition else None
    matcher = nx.algorithms.isomorphism.GraphMatcher(g, g, node_match=match)
    return sum(1 for _ in matcher.isomorphisms_iter())


# -- permutations and groups --------------------------------------------------


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``1..n``; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise CombinatoricsError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, n: int, text: str) -> Permutation:
        """Parse cycle notation such as ``(1 3 2 4)(5 6)``."""
        cycles = []
        for chunk in text.replace(" ", ",").split(")"):
            chunk = chunk.strip().lstrip("(").strip(",")
            if chunk:
                cycles.append([int(t) for t in chunk.split(",") if t])
        return cls.from_cycles(n, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """``(self * other)(i) == self(other(i))``."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.degree + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def order(self) -> int:
        k, p = 1, self
        while not p.is_identity():
            p, k = p * self, k + 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


@dataclass(frozen=True)
class AutGroup:
    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements


def generate_group(degree: int, gens: Iterable[Permutation]) -> tuple[Permutation, ...]:
    gens = list(gens)
    ident = Permutation.identity(degree)
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s * g
                if h not in elems:
                    elems.add(h)
                    nxt.append(h)
        frontier = nxt
    return tuple(sorted(elems))


def _minimal_generators(degree: int, elements: Sequence[Permutation]) -> tuple[Permutation, ...]:
    # highest order first so cyclic groups get a single generator
    ranked = sorted((p for p in elements if not p.is_identity()), key=lambda p: (-p.order(), p.images))
    gens: list[Permutation] = []
    span = {Permutation.identity(degree)}
    for p in ranked:
        if p not in span:
            gens.append(p)
            span = set(generate_group(degree, gens))
        if len(span) == len(elements):
            break
    return tuple(gens)


def is_automorphism(C: Combinatorics, perm: Permutation) -> bool:
    return perm.degree == C.n_lines and set(C.relabel(perm).points) == set(C.points)


SEARCH_LIMIT = 20


def automorphism_group(C: Combinatorics, limit: int = SEARCH_LIMIT) -> AutGroup:
    """All line permutations preserving the point set, by pruned backtracking.

    Candidates for each line are restricted to lines with the same multiset
    of point multiplicities; a partial map is abandoned as soon as some pair
    of assigned lines meets in a point of a different multiplicity than its
    image pair.
    """
    require_valid(C)
    n = C.n_lines
    if n > limit:
        raise CombinatoricsError(f"automorphism search limited to {limit} lines, got {n}")
    profile = {i: C.multiplicity_profile(i) for i in C.lines}
    meet = {}
    for p in C.points:
        for i, j in itertools.permutations(p, 2):
            meet[i, j] = len(p)
    candidates = {i: [j for j in C.lines if profile[j] == profile[i]] for i in C.lines}
    # most constrained lines first
    order = sorted(C.lines, key=lambda i: (len(candidates[i]), i))
    point_set = set(C.points)
    found: list[Permutation] = []
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> None:
        if k == n:
            perm = Permutation(tuple(image[i] for i in range(1, n + 1)))
            if set(C.relabel(perm).points) == point_set:
                found.append(perm)
            return
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            if any(meet[i, a] != meet[j, image[a]] for a in image):
                continue
            image[i] = j
            used.add(j)
            extend(k + 1)
            del image[i]
            used.discard(j)

    extend(0)
    elements = tuple(sorted(found))
    return AutGroup(n, _minimal_generators(n, elements), elements)


def group_from_generators(C: Combinatorics, gens: Sequence[Permutation]) -> AutGroup:
    for g in gens:
        if not is_automorphism(C, g):
            raise CombinatoricsError(f"{g} is not an automorphism of the combinatorics")
    return AutGroup(C.n_lines, tuple(gens), generate_group(C.n_lines, gens))


@dataclass(frozen=True)
class Orbits:
    lines: tuple[tuple[int, ...], ...]
    points: tuple[tuple[tuple[int, ...], ...], ...]


def orbits(C: Combinatorics, G: AutGroup) -> Orbits:
    for g in G.generators:
        if not is_automorphism(C, g):
            raise CombinatoricsError(f"{g} is not an automorphism of the combinatorics")
    elements = G.elements or generate_group(C.n_lines, G.generators)
    line_orbits = sorted({tuple(sorted({g(i) for g in elements})) for i in C.lines})
    point_orbits = set()
    for p in C.points:
        point_orbits.add(tuple(sorted({tuple(sorted(g(i) for i in p)) for g in elements})))
    return Orbits(tuple(line_orbits), tuple(sorted(point_orbits)))


# -- built-ins ------------------------------------------------------------------

_K_POINTS = [
    (1, 2), (1, 3, 5, 7), (1, 4, 6, 8), (1, 9), (1, 10, 11), (2, 3, 6, 9), (2, 4, 5, 10),
    (2, 7, 11), (2, 8), (3, 4), (3, 8, 11), (3, 10), (4, 7), (4, 9, 11), (5, 6),
    (5, 8, 9), (5, 11), (6, 7, 10), (6, 11), (7, 8), (7, 9), (8, 10), (9, 10),
]

_K12_POINTS = [
    (1, 2), (1, 3, 5, 7, 12), (1, 4, 6, 8), (1, 9), (1, 10, 11), (2, 3, 6, 9),
    (2, 4, 5, 10), (2, 7, 11), (2, 8), (2, 12), (3, 4), (3, 8, 11), (3, 10), (4, 7),
    (4, 9, 11), (4, 12), (5, 6), (5, 8, 9), (5, 11), (6, 7, 10), (6, 11), (6, 12),
    (7, 8), (7, 9), (8, 10), (8, 12), (9, 10), (9, 12), (10, 12), (11, 12),
]

BUILTIN_COMBINATORICS = {
    "K": Combinatorics.from_points(11, _K_POINTS),
    "K12": Combinatorics.from_points(12, _K12_POINTS),
}

# generator of Aut(K)
SIGMA_K = Permutation.from_cycles(11, [(1, 3, 2, 4), (5, 6), (7, 9, 10, 8)])


def builtin_combinatorics(name: str) -> Combinatorics:
    try:
        return BUILTIN_COMBINATORICS[name]
    except KeyError:
        raise CombinatoricsError(
            f"unknown built-in combinatorics {name!r}; choose from {sorted(BUILTIN_COMBINATORICS)}"
        ) from None


def generic_combinatorics(n: int) -> Combinatorics:
    """n lines in general position: only double points."""
    return Combinatorics.from_points(n, itertools.combinations(range(1, n + 1), 2))


def load_combinatorics(spec: str) -> Combinatorics:
    if spec.startswith("builtin:"):
        return builtin_combinatorics(spec.split(":", 1)[1])
    return Combinatorics.from_json(json.loads(Path(spec).read_text()))
