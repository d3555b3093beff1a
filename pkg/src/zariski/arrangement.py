"""Projective line arrangements over cyclotomic fields.

Lines are ``a x + b y + c z = 0`` with coefficients in Q(zeta_n); an
:class:`Arrangement` also carries the complex embedding that turns the
exact equations into an actual configuration in CP^2.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Sequence

from .combinatorics import Combinatorics, Permutation
from .cyclotomic import CycNum, Embedding, FieldError, format_cyc, parse_cyc

Vec3 = tuple[CycNum, CycNum, CycNum]
Matrix3 = tuple[Vec3, Vec3, Vec3]


class ArrangementError(ValueError):
    pass


def _canonical(v: Sequence[CycNum], from_end: bool) -> Vec3:
    idx = range(2, -1, -1) if from_end else range(3)
    for k in idx:
        if not v[k].is_zero():
            s = v[k].inverse()
            return (v[0] * s, v[1] * s, v[2] * s)
    raise ArrangementError("the zero vector is not a projective point or line")


def cross(u: Sequence[CycNum], v: Sequence[CycNum]) -> Vec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence[CycNum], v: Sequence[CycNum]) -> CycNum:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(rows: Sequence[Sequence[CycNum]]) -> CycNum:
    return dot(rows[0], cross(rows[1], rows[2]))


@dataclass(frozen=True, eq=False)
class ProjLine:
    """``a x + b y + c z = 0``; equality is projective."""

    coeffs: Vec3
    key: Vec3 = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "key", _canonical(self.coeffs, from_end=False))

    @classmethod
    def parse(cls, texts: Sequence[str], n: int) -> ProjLine:
        if len(texts) != 3:
            raise ArrangementError(f"a line needs 3 coefficients, got {len(texts)}")
        a, b, c = (parse_cyc(t, n) for t in texts)
        return cls((a, b, c))

    @property
    def field_order(self) -> int:
        return self.coeffs[0].field_order

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProjLine) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def contains(self, p: ProjPoint) -> bool:
        return dot(self.coeffs, p.coords).is_zero()

    def transform(self, m: Matrix3) -> ProjLine:
        """Coefficients of the line under the substitution ``v -> m v``."""
        c = self.coeffs
        return ProjLine(tuple(sum((c[i] * m[i][j] for i in range(3)), CycNum.zero(c[0].field_order)) for j in range(3)))  # type: ignore[arg-type]

    def galois(self, k: int) -> ProjLine:
        return ProjLine(tuple(c.galois(k) for c in self.coeffs))  # type: ignore[arg-type]

    def text(self) -> list[str]:
        return [format_cyc(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for c, v in zip(self.coeffs, "xyz"):
            if c.is_zero():
                continue
            s = format_cyc(c)
            if s == "1":
                terms.append(v)
            elif s == "-1":
                terms.append(f"-{v}")
            else:
                terms.append(f"({s}){v}")
        return " + ".join(terms).replace("+ -", "- ") + " = 0"


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^2 scaled so that its last nonzero coordinate is 1."""

    coords: Vec3

    @classmethod
    def of(cls, v: Sequence[CycNum]) -> ProjPoint:
        return cls(_canonical(v, from_end=True))

    def __str__(self) -> str:
        return "[" + " : ".join(format_cyc(c) for c in self.coords) + "]"


def meet(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    v = cross(l1.coeffs, l2.coeffs)
    if all(c.is_zero() for c in v):
        raise ArrangementError(f"lines {l1} and {l2} coincide")
    return ProjPoint.of(v)


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[ProjLine, ...]
    embedding: Embedding
    name: str = ""
    metadata: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        for l in self.lines:
            if l.field_order != self.embedding.field_order:
                raise ArrangementError("line coefficients and embedding live in different fields")

    @property
    def field_order(self) -> int:
        return self.embedding.field_order

    def __len__(self) -> int:
        return len(self.lines)

    def line(self, label: int) -> ProjLine:
        return self.lines[label - 1]

    def labels(self) -> range:
        return range(1, len(self.lines) + 1)

    def with_lines(self, lines: Sequence[ProjLine], name: str = "") -> Arrangement:
        return Arrangement(tuple(lines), self.embedding, name, self.metadata)

    def permuted(self, perm: Permutation) -> Arrangement:
        """Arrangement whose line ``perm(i)`` is this arrangement's line ``i``."""
        new: list[ProjLine | None] = [None] * len(self.lines)
        for i in self.labels():
            new[perm(i) - 1] = self.line(i)
        return Arrangement(tuple(new), self.embedding, self.name, self.metadata)  # type: ignore[arg-type]

    def to_json(self) -> dict:
        out: dict = {
            "field": {"cyclotomic": self.field_order, "root_index": self.embedding.root_index},
            "lines": [l.text() for l in self.lines],
        }
        if self.name:
            out["name"] = self.name
        if self.metadata:
            out["metadata"] = dict(self.metadata)
        return out

    @classmethod
    def from_json(cls, data: dict) -> Arrangement:
        try:
            n = int(data["field"]["cyclotomic"])
            emb = Embedding(n, int(data["field"]["root_index"]))
            lines = tuple(ProjLine.parse(row, n) for row in data["lines"])
        except (KeyError, TypeError) as exc:
            raise ArrangementError(f"malformed arrangement JSON: missing {exc}") from None
        except FieldError as exc:
            raise ArrangementError(str(exc)) from None
        meta = tuple(sorted((str(k), str(v)) for k, v in data.get("metadata", {}).items()))
        return cls(lines, emb, data.get("name", ""), meta)


def check_distinct(A: Arrangement) -> None:
    seen: dict[ProjLine, int] = {}
    for i, l in enumerate(A.lines, start=1):
        if l in seen:
            raise ArrangementError(f"lines {seen[l]} and {i} coincide")
        seen[l] = i


def intersection_points(A: Arrangement) -> dict[ProjPoint, tuple[int, ...]]:
    """Every intersection point with the (sorted) labels of the lines through it."""
    check_distinct(A)
    groups: dict[ProjPoint, set[int]] = {}
    for i, j in itertools.combinations(A.labels(), 2):
        p = meet(A.line(i), A.line(j))
        groups.setdefault(p, set()).update((i, j))
    return {p: tuple(sorted(s)) for p, s in groups.items()}


def intersection_lattice(A: Arrangement) -> Combinatorics:
    return Combinatorics(len(A.lines), tuple(intersection_points(A).values()))


def is_ordered_realization(A: Arrangement, C: Combinatorics) -> bool:
    if len(A.lines) != C.n_lines:
        return False
    try:
        return intersection_lattice(A) == C
    except ArrangementError:
        return False


def concurrent_by_det(l1: ProjLine, l2: ProjLine, l3: ProjLine) -> bool:
    return det3((l1.coeffs, l2.coeffs, l3.coeffs)).is_zero()


def concurrent_by_meet(l1: ProjLine, l2: ProjLine, l3: ProjLine) -> bool:
    return meet(l1, l2) == meet(l1, l3)


# -- projectivities ---------------------------------------------------------------


def mat_mul(a: Matrix3, b: Matrix3) -> Matrix3:
    n = a[0][0].field_order
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(3)), CycNum.zero(n)) for j in range(3))
        for i in range(3)
    )  # type: ignore[return-value]


def mat_inverse(m: Matrix3) -> Matrix3:
    d = det3(m)
    if d.is_zero():
        raise ArrangementError("singular matrix")
    cols = (
        cross(m[1], m[2]),
        cross(m[2], m[0]),
        cross(m[0], m[1]),
    )
    inv_d = d.inverse()
    # inverse = adj / det, adj[i][j] = cols[j][i]
    return tuple(tuple(cols[j][i] * inv_d for j in range(3)) for i in range(3))  # type: ignore[return-value]


def matrix(rows: Sequence[Sequence[object]], n: int) -> Matrix3:
    def conv(x: object) -> CycNum:
        if isinstance(x, CycNum):
            return x
        if isinstance(x, str):
            return parse_cyc(x, n)
        return CycNum.from_rational(x, n)  # type: ignore[arg-type]

    return tuple(tuple(conv(x) for x in row) for row in rows)  # type: ignore[return-value]


def apply_projectivity(A: Arrangement, m: Matrix3) -> Arrangement:
    """Image of ``A`` under the point map ``v -> m v``.

    A line ``c`` (``c . v = 0``) maps to ``c m^-1``.
    """
    inv = mat_inverse(m)
    return A.with_lines([l.transform(inv) for l in A.lines], name=f"image of {A.name}" if A.name else "")


def conjugate(A: Arrangement) -> Arrangement:
    name = A.name
    if name.endswith("+"):
        name = name[:-1] + "-"
    elif name.endswith("-"):
        name = name[:-1] + "+"
    return Arrangement(A.lines, A.embedding.conjugate(), name, A.metadata)


def galois_conjugate(A: Arrangement, k: int) -> Arrangement:
    """Apply ``zeta -> zeta**k`` to every coefficient, keeping the embedding."""
    return A.with_lines([l.galois(k) for l in A.lines])


# -- built-in arrangements ------------------------------------------------------------

FIELD_ORDER = 10

# root indices zeta_10 -> exp(2 pi i k / 10) per built-in
ROOT_INDEX = {"N+": 3, "N-": 7, "M+": 1, "M-": 9}

_K_EQUATIONS = [
    ("0", "0", "1"),
    ("1", "1", "-1"),
    ("1", "0", "0"),
    ("0", "1", "0"),
    ("1", "0", "-1"),
    ("0", "1", "-1"),
    ("-a^3", "0", "1"),
    ("0", "1", "-a"),
    ("a-1", "-1", "1"),
    ("-a*(a-1)", "1", "a*(a-1)"),
    ("-a*(a-1)", "1", "-a"),
]

# (x, y, z) -> (z, x + y - z, y): realizes the order-4 automorphism of K
CYCLIC_PROJECTIVITY = ((0, 0, 1), (1, 1, -1), (0, 1, 0))


def k_lines(n: int = FIELD_ORDER) -> tuple[ProjLine, ...]:
    return tuple(ProjLine.parse(row, n) for row in _K_EQUATIONS)


def beta_candidates() -> Iterator[Fraction]:
    """Positive rationals other than 1 by height: h, 1/h, then p/q with max(p, q) = h."""
    h = 2
    while True:
        yield Fraction(h)
        yield Fraction(1, h)
        for p in range(2, h):
            if math.gcd(p, h) == 1:
                yield Fraction(p, h)
                yield Fraction(h, p)
        h += 1


class NonGenericError(ArrangementError):
    pass


def extend_with_L12(A: Arrangement, beta: Fraction | int | CycNum) -> Arrangement:
    """Append ``x - beta z = 0`` (through [0:1:0]) and check it is otherwise generic."""
    n = A.field_order
    b = beta if isinstance(beta, CycNum) else CycNum.from_rational(beta, n)
    new = ProjLine((CycNum.one(n), CycNum.zero(n), -b))
    center = ProjPoint.of((CycNum.zero(n), CycNum.one(n), CycNum.zero(n)))
    for i, l in enumerate(A.lines, start=1):
        if l == new:
            raise NonGenericError(f"beta = {b}: the new line coincides with L{i}")
    through_center = [i for i in A.labels() if A.line(i).contains(center)]
    for i in A.labels():
        if i in through_center:
            continue
        p = meet(new, A.line(i))
        for j in A.labels():
            if j != i and A.line(j).contains(p):
                raise NonGenericError(
                    f"beta = {b}: the new line meets L{i} and L{j} in the same point {p}"
                )
    meta = dict(A.metadata)
    meta["beta"] = format_cyc(b)
    return Arrangement(A.lines + (new,), A.embedding, A.name, tuple(sorted(meta.items())))


def first_generic_beta(A: Arrangement) -> Fraction:
    for beta in beta_candidates():
        try:
            extend_with_L12(A, beta)
        except NonGenericError:
            continue
        return beta
    raise AssertionError("unreachable")


BUILTIN_NAMES = ("N+", "N-", "M+", "M-", "FN+", "FN-", "FM+", "FM-")


def builtin_arrangement(name: str) -> Arrangement:
    if name not in BUILTIN_NAMES:
        raise ArrangementError(f"unknown built-in arrangement {name!r}; choose from {list(BUILTIN_NAMES)}")
    base_name = name[1:] if name.startswith("F") else name
    base = Arrangement(k_lines(), Embedding(FIELD_ORDER, ROOT_INDEX[base_name]), base_name)
    if not name.startswith("F"):
        return base
    ext = extend_with_L12(base, first_generic_beta(base))
    return Arrangement(ext.lines, ext.embedding, name, ext.metadata)


def load_arrangement(spec: str) -> Arrangement:
    if spec.startswith("builtin:"):
        return builtin_arrangement(spec.split(":", 1)[1])
    return Arrangement.from_json(json.loads(Path(spec).read_text()))
