"""Braided wiring diagrams of affine line arrangements, computed exactly.

Conventions
-----------
The base coordinate is ``u``; a wire is ``y = slope * u + intercept``.
Along the path the strands are drawn top to bottom by decreasing ``Re y``.
The depth coordinate is ``-Im y`` (depth ``"neg-imag"``, the default) or
``Im y`` (depth ``"pos-imag"``, the mirror picture).  Depth breaks
ties in ``Re y`` and, when two adjacent strands exchange places, the
deeper-valued one passes over.  A crossing is positive when the strand
moving down is the over strand.

Every event time is an exact element of the cyclotomic field; numerics
are only used to order provably distinct real numbers.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .arrangement import Arrangement, Matrix3, ProjLine
from .cyclotomic import CycNum, Embedding, certified_sign, embed, real_sign, to_complex


class WiringError(ValueError):
    pass


class GenericityError(WiringError):
    """The projection or the path is not generic enough; retry with other parameters."""


# -- affine arrangements ---------------------------------------------------------


@dataclass(frozen=True)
class Wire:
    label: int
    slope: CycNum
    intercept: CycNum

    def at(self, u: CycNum) -> CycNum:
        return self.slope * u + self.intercept


@dataclass(frozen=True)
class AffineArrangement:
    wires: tuple[Wire, ...]
    verticals: tuple[tuple[int, CycNum], ...]
    embedding: Embedding
    infinity_label: int

    @property
    def field_order(self) -> int:
        return self.embedding.field_order

    @property
    def labels(self) -> list[int]:
        return [w.label for w in self.wires]

    def wire(self, label: int) -> Wire:
        for w in self.wires:
            if w.label == label:
                return w
        raise KeyError(label)

    def is_generic(self) -> bool:
        return not self.verticals

    def conjugate(self) -> AffineArrangement:
        return AffineArrangement(self.wires, self.verticals, self.embedding.conjugate(), self.infinity_label)


@dataclass(frozen=True)
class Chart:
    """Coordinate substitution ``old = matrix @ new`` sending a chosen line to z = 0.

    ``pin`` fixes where an extra root of unity goes when the arrangement has
    to be lifted into the chart's larger field: ``(q, j)`` means
    ``zeta_q -> exp(2 pi i j / q)``.
    """

    matrix: Matrix3
    name: str
    pin: tuple[int, int] | None = None

    @property
    def field_order(self) -> int:
        return self.matrix[0][0].field_order


def lambda_chart(n: int = 10, conjugate: bool = False) -> Chart:
    """``x -> lam x``, ``z -> lam x - z`` with ``lam = exp(i pi / 4)``; sends x - z = 0 to infinity."""
    m = math.lcm(n, 8)
    lam = CycNum.gen(m, m // 8)
    zero, one = CycNum.zero(m), CycNum.one(m)
    mat = ((lam, zero, zero), (zero, one, zero), (lam, zero, -one))
    return Chart(mat, "paper", (8, 7 if conjugate else 1))


def standard_chart(line: ProjLine) -> Chart:
    """A rational-style chart sending ``line`` to z = 0 (identity on the first free coordinates)."""
    a, b, c = line.coeffs
    n = a.field_order
    zero, one = CycNum.zero(n), CycNum.one(n)
    if not c.is_zero():
        ic = c.inverse()
        cols = [(one, zero, -a * ic), (zero, one, -b * ic), (zero, zero, ic)]
    elif not b.is_zero():
        ib = b.inverse()
        cols = [(one, -a * ib, zero), (zero, zero, one), (zero, ib, zero)]
    else:
        ia = a.inverse()
        cols = [(zero, one, zero), (zero, zero, one), (ia, zero, zero)]
    mat = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    return Chart(mat, "standard")  # type: ignore[arg-type]


def _working_order(n: int) -> int:
    # the path construction needs i = zeta_4 in the field
    return math.lcm(n, 4)


def to_affine(A: Arrangement, infinity_index: int, chart: Chart) -> AffineArrangement:
    """Affine wires of ``A`` in ``chart`` with line ``infinity_index`` at infinity."""
    m = _working_order(math.lcm(A.field_order, chart.field_order))
    pins = [chart.pin] if chart.pin else []
    if chart.pin is None or chart.pin[0] % 4:
        pins.append((4, 1))
    emb = A.embedding
    for q, j in pins:
        emb = emb.lift(math.lcm(emb.field_order, q), (q, j)) if emb.field_order % q or emb.field_order != m else emb
    if emb.field_order != m:
        emb = emb.lift(m)
    mat = tuple(tuple(x.lift(m) for x in row) for row in chart.matrix)

    def new_coeffs(line: ProjLine) -> tuple[CycNum, CycNum, CycNum]:
        c = [x.lift(m) for x in line.coeffs]
        return tuple(sum((c[i] * mat[i][j] for i in range(3)), CycNum.zero(m)) for j in range(3))  # type: ignore[return-value]

    inf = new_coeffs(A.line(infinity_index))
    if not (inf[0].is_zero() and inf[1].is_zero()):
        raise WiringError(f"chart {chart.name!r} does not send L{infinity_index} to the line at infinity")
    wires, verticals = [], []
    for label in A.labels():
        if label == infinity_index:
            continue
        a, b, c = new_coeffs(A.line(label))
        if not b.is_zero():
            ib = b.inverse()
            wires.append(Wire(label, -a * ib, -c * ib))
        elif not a.is_zero():
            verticals.append((label, -c / a))
        else:
            raise WiringError(f"L{label} coincides with the line at infinity")
    return AffineArrangement(tuple(wires), tuple(verticals), emb, infinity_index)


def perturb_to_generic(aff: AffineArrangement, epsilon: Fraction | int) -> AffineArrangement:
    """Project along ``u = x + epsilon * y`` instead of ``u = x``.

    This moves the projection centre along the line at infinity; former
    vertical lines become parallel wires of slope ``1 / epsilon``.
    """
    eps = Fraction(epsilon)
    if eps == 0:
        raise WiringError("epsilon must be nonzero")
    n = aff.field_order
    e = CycNum.from_rational(eps, n)
    wires = []
    for w in aff.wires:
        den = 1 + w.slope * e
        if den.is_zero():
            raise GenericityError(f"epsilon = {eps} makes L{w.label} vertical")
        inv = den.inverse()
        wires.append(Wire(w.label, w.slope * inv, w.intercept * inv))
    for label, v in aff.verticals:
        wires.append(Wire(label, CycNum.from_rational(1 / eps, n), -v * CycNum.from_rational(1 / eps, n)))
    wires.sort(key=lambda w: w.label)
    out = AffineArrangement(tuple(wires), (), aff.embedding, aff.infinity_label)
    singular_values(out)  # raises GenericityError on coincident singular values
    return out


def _affine_points(aff: AffineArrangement) -> list[tuple[CycNum, CycNum]]:
    """Finite intersection points (x, y), vertical lines included."""
    pts: set[tuple[CycNum, CycNum]] = set()
    for w1, w2 in itertools.combinations(aff.wires, 2):
        dm = w1.slope - w2.slope
        if not dm.is_zero():
            x = (w2.intercept - w1.intercept) / dm
            pts.add((x, w1.at(x)))
    for _, v in aff.verticals:
        for w in aff.wires:
            pts.add((v, w.at(v)))
    return sorted(pts, key=lambda p: (p[0].numerators, p[0].denominator, p[1].numerators, p[1].denominator))


def is_order_faithful(aff: AffineArrangement, epsilon: Fraction) -> bool:
    """Perturbing by ``epsilon`` keeps the Re order of points with distinct Re x.

    Only points sharing a real part (for instance the points of one vertical
    line) may be reordered, so the perturbed projection stays a small
    deformation of the original one.
    """
    emb = aff.embedding
    e = CycNum.from_rational(Fraction(epsilon), aff.field_order)
    pts = [(x, x + e * y) for x, y in _affine_points(aff)]
    for (x1, u1), (x2, u2) in itertools.combinations(pts, 2):
        before = certified_sign(x1 - x2, "real", emb)
        if before and certified_sign(u1 - u2, "real", emb) != before:
            return False
    return True


def default_perturbation(
    aff: AffineArrangement, sign: int = -1, max_k: int = 64, faithful: bool = True
) -> tuple[AffineArrangement, Fraction]:
    """Perturb with ``epsilon = sign / 2**k`` for the smallest suitable k >= 1.

    Suitable means generic and, when ``faithful`` is set, order-faithful.
    """
    if aff.is_generic():
        return aff, Fraction(0)
    for k in range(1, max_k + 1):
        eps = Fraction(sign, 2**k)
        if faithful and not is_order_faithful(aff, eps):
            continue
        try:
            return perturb_to_generic(aff, eps), eps
        except GenericityError:
            continue
    raise GenericityError("no generic perturbation found")


# -- singular values -----------------------------------------------------------------


@dataclass(frozen=True)
class SingularValue:
    u: CycNum
    y: CycNum
    wires: tuple[int, ...]


def _cmp_complex(a: CycNum, b: CycNum, emb: Embedding) -> int:
    d = a - b
    s = certified_sign(d, "real", emb)
    return s if s else certified_sign(d, "imag", emb)


def singular_values(aff: AffineArrangement) -> list[SingularValue]:
    """Intersection points of the wires, sorted by (Re u, Im u)."""
    if not aff.is_generic():
        raise GenericityError("vertical lines present; perturb the projection first")
    points: dict[tuple[CycNum, CycNum], set[int]] = {}
    for w1, w2 in itertools.combinations(aff.wires, 2):
        dm = w1.slope - w2.slope
        if dm.is_zero():
            continue  # parallel: they meet at infinity
        u = (w2.intercept - w1.intercept) / dm
        y = w1.at(u)
        points.setdefault((u, y), set()).update((w1.label, w2.label))
    by_u: dict[CycNum, SingularValue] = {}
    for (u, y), labels in points.items():
        if u in by_u:
            raise GenericityError(
                f"wires {sorted(by_u[u].wires)} and {sorted(labels)} meet over the same base point"
            )
        by_u[u] = SingularValue(u, y, tuple(sorted(labels)))
    emb = aff.embedding
    return sorted(by_u.values(), key=functools.cmp_to_key(lambda p, q: _cmp_complex(p.u, q.u, emb)))


# -- the path ----------------------------------------------------------------------

Direction = int  # 0: increasing Re u, 1: increasing Im u, 2: decreasing Re u, 3: decreasing Im u


@dataclass(frozen=True)
class PathNu:
    """Piecewise-linear path; ``node_index[k]`` is the vertex holding singular value k."""

    vertices: tuple[CycNum, ...]
    node_index: tuple[int, ...]
    singular: tuple[SingularValue, ...]

    def segments(self) -> Iterable[tuple[CycNum, CycNum]]:
        return zip(self.vertices, self.vertices[1:])

    def to_json(self, emb: Embedding) -> dict:
        return {
            "vertices": [[to_complex(v, emb).real, to_complex(v, emb).imag] for v in self.vertices],
            "nodes": list(self.node_index),
        }


def _unit_i(n: int, emb: Embedding) -> CycNum:
    i = CycNum.gen(n, n // 4)
    return i if certified_sign(i, "imag", emb) > 0 else -i


def _hits(s: CycNum, a: CycNum, b: CycNum, emb: Embedding) -> bool:
    """Does ``s`` lie on the open segment (a, b)?"""
    w = (s - a) * (b - a).conj()
    if certified_sign(w, "imag", emb) != 0:
        return False
    along = certified_sign(w, "real", emb)
    if along <= 0:
        return False
    length2 = (b - a) * (b - a).conj()
    return real_sign(length2 - (w + w.conj()) * Fraction(1, 2), emb) > 0


def _dyadic_below(x: Fraction) -> Fraction:
    k = 0
    while Fraction(1, 2**k) > x:
        k += 1
    return Fraction(1, 2**k)


def build_path(aff: AffineArrangement, direction: Direction = 0, detour: int = -1) -> PathNu:
    """Straight through every singular value, sweeping in ``direction``.

    Singular values are visited in increasing order of the sweep coordinate
    (ties by the perpendicular one).  Around each one the path is a short
    straight piece along the sweep direction; consecutive pieces are joined
    by segments that step around any singular value they would hit, on the
    right of the direction of travel when ``detour == -1`` (left when +1).
    Both ends are pushed far out along the sweep direction, past every
    place where two wires exchange their Re order, so the diagram starts
    and ends at the strand order seen from infinity.
    """
    svals = singular_values(aff)
    emb = aff.embedding
    if not svals:
        raise WiringError("no singular values")
    if detour not in (-1, 1):
        raise ValueError("detour must be -1 or +1")
    n = emb.field_order
    i_unit = _unit_i(n, emb)
    omega = _direction_unit(n, emb, direction)
    rot = omega.conj()
    order = sorted(svals, key=functools.cmp_to_key(lambda p, q: _cmp_complex(p.u * rot, q.u * rot, emb)))

    gap = None
    for p, q in itertools.combinations(order, 2):
        ball = embed(p.u - q.u, emb, 64)
        lo_r, hi_r = ball.real_interval()
        lo_i, hi_i = ball.imag_interval()
        dist = max(max(lo_r, -hi_r, 0), max(lo_i, -hi_i, 0))
        gap = dist if gap is None else min(gap, dist)
    delta = _dyadic_below(gap / 4) if gap else Fraction(1, 2)
    step = omega * delta
    side = i_unit * omega * detour * delta  # detour offset

    vertices: list[CycNum] = []
    node_index: list[int] = []
    for k, sv in enumerate(order):
        entry = sv.u - step
        if vertices:
            _join(vertices, entry, order, emb, side)
        else:
            vertices.append(entry)
        node_index.append(len(vertices))
        vertices.append(sv.u)
        vertices.append(sv.u + step)
    first = vertices[0] - omega * _far_reach(aff, vertices[0], -omega)
    last = vertices[-1] + omega * _far_reach(aff, vertices[-1], omega)
    vertices = [first] + vertices + [last]
    return PathNu(tuple(vertices), tuple(k + 1 for k in node_index), tuple(order))


def _far_reach(aff: AffineArrangement, a: CycNum, w: CycNum) -> CycNum:
    """A dyadic R such that no two wires change Re order on the ray a + tw, t > R."""
    emb = aff.embedding
    n = aff.field_order
    scale = max(abs(to_complex(x, emb)) for wire in aff.wires for x in (wire.slope, wire.intercept))
    R = Fraction(2 ** max(1, math.ceil(math.log2(4 * (1 + abs(to_complex(a, emb)) + scale)))))
    pairs = []
    for w1, w2 in itertools.combinations(aff.wires, 2):
        drift = (w1.slope - w2.slope) * w
        s = certified_sign(drift, "real", emb)
        if s:
            pairs.append((w1.at(a) - w2.at(a), drift, s))
    while True:
        rr = CycNum.from_rational(R, n)
        if all(certified_sign(p0 + d * rr, "real", emb) == s for p0, d, s in pairs):
            return rr
        R *= 2


def _join(vertices: list[CycNum], target: CycNum, svals: Sequence[SingularValue], emb: Embedding, side: CycNum) -> None:
    pending = [target]
    while pending:
        b = pending[-1]
        a = vertices[-1]
        hit = next((sv for sv in svals if _hits(sv.u, a, b, emb)), None)
        if hit is None:
            vertices.append(pending.pop())
        else:
            pending.append(hit.u + side)


def _direction_unit(n: int, emb: Embedding, direction: Direction) -> CycNum:
    i_unit = _unit_i(n, emb)
    return [CycNum.one(n), i_unit, -CycNum.one(n), -i_unit][direction % 4]


def screen_is_generic(aff: AffineArrangement, direction: Direction = 0) -> bool:
    """No two wires keep the same Re y along the far ends of the path.

    When two wires tie in Re all the way out to infinity, the strand order
    seen from infinity is decided by Im alone and the diagram no longer
    starts at the order the invariant needs.
    """
    emb = aff.embedding
    omega = _direction_unit(aff.field_order, emb, direction)
    for w1, w2 in itertools.combinations(aff.wires, 2):
        dm = w1.slope - w2.slope
        probe = dm * omega if not dm.is_zero() else w1.intercept - w2.intercept
        if certified_sign(probe, "real", emb) == 0:
            return False
    return True


def tilt_screen(aff: AffineArrangement, t: Fraction) -> AffineArrangement:
    """Rotate the fibre coordinate, ``y -> y * (1 - i t) / (1 + i t)``."""
    n = aff.field_order
    i_unit = _unit_i(n, aff.embedding)
    tt = CycNum.from_rational(Fraction(t), n)
    rho = (1 - i_unit * tt) / (1 + i_unit * tt)
    wires = tuple(Wire(w.label, w.slope * rho, w.intercept * rho) for w in aff.wires)
    verticals = tuple((label, v) for label, v in aff.verticals)
    return AffineArrangement(wires, verticals, aff.embedding, aff.infinity_label)


def generic_screen(aff: AffineArrangement, direction: Direction = 0, max_k: int = 64) -> tuple[AffineArrangement, Fraction]:
    """The arrangement itself if its screen is generic, else the smallest dyadic tilt that is."""
    if screen_is_generic(aff, direction):
        return aff, Fraction(0)
    for k in range(max_k + 1):
        t = Fraction(1, 2**k)
        tilted = tilt_screen(aff, t)
        if screen_is_generic(tilted, direction):
            return tilted, t
    raise GenericityError("no generic screen tilt found")


# -- wiring diagrams ------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    at: int  # 1-based position (from the top) of the topmost strand
    wires: tuple[int, ...]  # top to bottom as they enter

    def to_json(self) -> dict:
        return {"node": {"at": self.at, "wires": list(self.wires)}}


@dataclass(frozen=True)
class Crossing:
    at: int  # strands at positions at, at + 1 exchange
    sign: int
    over: int
    under: int

    def to_json(self) -> dict:
        return {"cross": {"at": self.at, "sign": self.sign, "over": self.over, "under": self.under}}


Event = Union[Node, Crossing]


@dataclass(frozen=True)
class WiringDiagram:
    initial_order: tuple[int, ...]
    events: tuple[Event, ...]
    infinity_label: int | None = None

    def to_json(self) -> dict:
        return {"initial_order": list(self.initial_order), "events": [e.to_json() for e in self.events]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> WiringDiagram:
        events: list[Event] = []
        for e in data["events"]:
            if "node" in e:
                events.append(Node(int(e["node"]["at"]), tuple(int(w) for w in e["node"]["wires"])))
            else:
                c = e["cross"]
                events.append(Crossing(int(c["at"]), int(c["sign"]), int(c["over"]), int(c["under"])))
        return cls(tuple(int(w) for w in data["initial_order"]), tuple(events))

    def replay(self) -> list[list[int]]:
        """Strand orders before and after every event, checking consistency."""
        order = list(self.initial_order)
        states = [list(order)]
        for ev in self.events:
            if isinstance(ev, Node):
                p = ev.at - 1
                block = order[p : p + len(ev.wires)]
                if tuple(block) != ev.wires:
                    raise WiringError(f"node {ev} does not match strands {block}")
                order[p : p + len(block)] = block[::-1]
            else:
                p = ev.at - 1
                if p < 0 or p + 1 >= len(order) or {order[p], order[p + 1]} != {ev.over, ev.under}:
                    raise WiringError(f"crossing {ev} does not match strands {order[p:p + 2]}")
                upper = order[p]
                if (upper == ev.over) != (ev.sign == 1):
                    raise WiringError(f"crossing {ev} has a sign inconsistent with its over strand")
                order[p], order[p + 1] = order[p + 1], order[p]
            states.append(list(order))
        return states

    def final_order(self) -> list[int]:
        return self.replay()[-1]

    def nodes(self) -> list[Node]:
        return [e for e in self.events if isinstance(e, Node)]

    def crossings(self) -> list[Crossing]:
        return [e for e in self.events if isinstance(e, Crossing)]


DEPTHS = ("neg-imag", "pos-imag")


class _Keys:
    """Exact values of the wires at path points, with certified comparisons."""

    def __init__(self, aff: AffineArrangement, depth: str = "neg-imag"):
        if depth not in DEPTHS:
            raise WiringError(f"unknown depth convention {depth!r}; use one of {DEPTHS}")
        self.emb = aff.embedding
        self.wires = {w.label: w for w in aff.wires}
        self.depth = 1 if depth == "pos-imag" else -1

    def depth_sign(self, x: CycNum) -> int:
        """Sign of the depth coordinate (-Im y, or Im y for ``pos-imag``) of ``x``.

        Depth breaks screen ties and decides which strand passes over.
        """
        return self.depth * certified_sign(x, "imag", self.emb)

    def re_sign(self, x: CycNum) -> int:
        return certified_sign(x, "real", self.emb)


    def lex(self, values: Sequence[CycNum]) -> int:
        """Sign of the lexicographic (Re, Im) key of a sequence of differences."""
        for v in values:
            s = self.re_sign(v)
            if s:
                return s
        for v in values:
            s = self.depth_sign(v)
            if s:
                return s
        return 0


def _sorted_desc(labels: Iterable[int], cmp) -> list[int]:
    return sorted(labels, key=functools.cmp_to_key(lambda i, j: -cmp(i, j)))


def order_at(aff: AffineArrangement, u: CycNum) -> list[int]:
    """Strands top to bottom at a regular point ``u`` by direct certified sorting."""
    keys = _Keys(aff)
    ys = {w.label: w.at(u) for w in aff.wires}
    return _sorted_desc(ys, lambda i, j: keys.lex([ys[i] - ys[j]]))


def wiring_diagram(aff: AffineArrangement, nu: PathNu, depth: str = "neg-imag") -> WiringDiagram:
    """Walk ``nu`` and record nodes and signed crossings exactly."""
    if not aff.is_generic():
        raise GenericityError("vertical lines present; perturb the projection first")
    keys = _Keys(aff, depth)
    labels = aff.labels
    node_at = {nu.node_index[k]: sv for k, sv in enumerate(nu.singular)}
    ys = [{w.label: w.at(v) for w in aff.wires} for v in nu.vertices]

    def start_order(k: int) -> list[int]:
        p, q = ys[k], ys[k + 1]

        def cmp(i: int, j: int) -> int:
            dp = p[i] - p[j]
            dq = (q[i] - q[j]) - dp
            return keys.lex([dp, dq])

        return _sorted_desc(labels, cmp)

    def end_order(k: int) -> list[int]:
        p, q = ys[k], ys[k + 1]

        def cmp(i: int, j: int) -> int:
            dq = q[i] - q[j]
            back = dq - (p[i] - p[j])
            return keys.lex([dq, -back])

        return _sorted_desc(labels, cmp)

    events: list[Event] = []
    order = start_order(0)
    initial = tuple(order)
    nseg = len(nu.vertices) - 1
    for k in range(nseg):
        if k > 0:
            after = start_order(k)
            _vertex_events(order, after, ys[k], node_at.get(k), keys, events)
            order = after
        order = _segment_events(order, ys[k], ys[k + 1], keys, events)
        expected = end_order(k)
        if order != expected:
            raise WiringError(f"strand bookkeeping diverged on segment {k}: {order} vs {expected}")
    return WiringDiagram(initial, tuple(events), aff.infinity_label)


def _emit_block(
    before: list[int], after_block: list[int], start: int, y: dict[int, CycNum], keys: _Keys, events: list[Event], order: list[int]
) -> None:
    """Bubble the block at ``start`` from its current order to ``after_block``."""
    rank = {w: r for r, w in enumerate(after_block)}
    cur = before[start : start + len(after_block)]
    changed = True
    while changed:
        changed = False
        for q in range(len(cur) - 1):
            up, lo = cur[q], cur[q + 1]
            if rank[up] > rank[lo]:
                s = keys.depth_sign(y[up] - y[lo])
                if s == 0:
                    raise GenericityError(f"wires {up} and {lo} meet away from a path vertex")
                over, under = (up, lo) if s > 0 else (lo, up)
                events.append(Crossing(start + q + 1, 1 if over == up else -1, over, under))
                cur[q], cur[q + 1] = lo, up
                changed = True
    order[start : start + len(cur)] = cur


def _segment_events(order: list[int], p: dict[int, CycNum], q: dict[int, CycNum], keys: _Keys, events: list[Event]) -> list[int]:
    order = list(order)
    emb = keys.emb
    crossing_times: dict[CycNum, set[int]] = {}
    for i, j in itertools.combinations(order, 2):
        a = p[i] - p[j]
        b = q[i] - q[j]
        sa, sb = keys.re_sign(a), keys.re_sign(b)
        if sa * sb < 0:
            ra = a + a.conj()
            rd = (b + b.conj()) - ra
            t = -ra / rd
            crossing_times.setdefault(t, set()).update((i, j))
    times = sorted(crossing_times, key=functools.cmp_to_key(lambda s, t: real_sign(s - t, emb)))
    for t in times:
        y = {w: p[w] + (q[w] - p[w]) * t for w in order}
        involved = crossing_times[t]
        # strands tied in Re at time t form contiguous runs of the current order
        runs: list[tuple[int, int]] = []
        start = 0
        for k in range(1, len(order) + 1):
            if k == len(order) or keys.re_sign(y[order[k]] - y[order[k - 1]]) != 0:
                if k - start >= 2 and involved & set(order[start:k]):
                    runs.append((start, k))
                start = k
        for lo, hi in runs:
            members = order[lo:hi]

            def cmp_after(i: int, j: int) -> int:
                dv = (q[i] - p[i]) - (q[j] - p[j])
                return _lex_after(keys, y[i] - y[j], dv)

            after = _sorted_desc(members, cmp_after)
            _emit_block(order, after, lo, y, keys, events, order)
    return order


def _lex_after(keys: _Keys, value: CycNum, velocity: CycNum) -> int:
    # Re parts tie at the event; order just after it by Re velocity, then Im
    s = keys.re_sign(value)
    if s:
        return s
    s = keys.re_sign(velocity)
    if s:
        return s
    s = keys.depth_sign(value)
    if s:
        return s
    return keys.depth_sign(velocity)


def _vertex_events(
    before: list[int], after: list[int], y: dict[int, CycNum], node: SingularValue | None, keys: _Keys, events: list[Event]
) -> None:
    if before == after and node is None:
        return
    # group the strands that tie in Re at this vertex into contiguous blocks
    blocks: list[tuple[int, int]] = []
    start = 0
    for q in range(1, len(before) + 1):
        if q == len(before) or keys.re_sign(y[before[q]] - y[before[q - 1]]) != 0:
            if q - start >= 2:
                blocks.append((start, q))
            start = q
    node_set = set(node.wires) if node else set()
    handled_node = False
    order = list(before)
    for lo, hi in blocks:
        members = before[lo:hi]
        after_block = after[lo:hi]
        if set(after_block) != set(members):
            raise GenericityError(f"strands {members} change block at a vertex")
        if node_set & set(members):
            if not node_set <= set(members):
                raise WiringError(f"node {node.wires} split across blocks")
            # Strands tied with the node only in Re sit above or below it by Im:
            # they pass the node block first, then the node happens.
            y0 = y[node.wires[0]]
            above = [w for w in members if w not in node_set and keys.depth_sign(y[w] - y0) > 0]
            below = [w for w in members if w not in node_set and keys.depth_sign(y[w] - y0) < 0]
            if len(above) + len(below) + len(node_set) != len(members):
                raise GenericityError(f"a strand passes through the node {node.wires}")
            tie = lambda i, j: keys.depth_sign(y[i] - y[j])  # noqa: E731
            inner = [w for w in members if w in node_set]
            mid = _sorted_desc(above, tie) + inner + _sorted_desc(below, tie)
            _emit_block(order, mid, lo, y, keys, events, order)
            p = lo + len(above)
            events.append(Node(p + 1, tuple(inner)))
            order[p : p + len(inner)] = inner[::-1]
            _emit_block(order, after_block, lo, y, keys, events, order)
            handled_node = True
        elif after_block != members:
            _emit_block(order, after_block, lo, y, keys, events, order)
    if node_set and not handled_node:
        raise WiringError(f"node {node.wires} not found at its vertex")
    if order != after:
        raise WiringError(f"vertex bookkeeping diverged: {order} vs {after}")


# -- convenience -----------------------------------------------------------------------


@dataclass(frozen=True)
class DiagramResult:
    affine: AffineArrangement
    epsilon: Fraction
    path: PathNu
    diagram: WiringDiagram
    tilt: Fraction = Fraction(0)


def compute_diagram(
    A: Arrangement,
    infinity_index: int,
    chart: Chart | str = "paper",
    epsilon: Fraction | None = None,
    direction: Direction = 0,
    detour: int = -1,
    depth: str = "neg-imag",
) -> DiagramResult:
    """Chart, perturbation, path and diagram in one call."""
    if isinstance(chart, str):
        chart = resolve_chart(A, infinity_index, chart)
    aff = to_affine(A, infinity_index, chart)
    if epsilon is None:
        gen, eps = default_perturbation(aff)
    else:
        gen, eps = perturb_to_generic(aff, epsilon), Fraction(epsilon)
    gen, tilt = generic_screen(gen, direction)
    path = build_path(gen, direction, detour)
    return DiagramResult(gen, eps, path, wiring_diagram(gen, path, depth), tilt)


def resolve_chart(A: Arrangement, infinity_index: int, name: str) -> Chart:
    if name in ("paper", "paper-conjugate"):
        chart = lambda_chart(A.field_order, conjugate=name == "paper-conjugate")
        n = chart.field_order
        line = A.line(infinity_index)
        c = [x.lift(n) for x in line.coeffs]
        img = [sum((c[i] * chart.matrix[i][j] for i in range(3)), CycNum.zero(n)) for j in range(3)]
        if not (img[0].is_zero() and img[1].is_zero()):
            raise WiringError(f"the lambda chart does not send L{infinity_index} to infinity")
        return chart
    if name == "standard":
        return standard_chart(A.line(infinity_index))
    raise WiringError(f"unknown chart {name!r}; use 'paper', 'paper-conjugate' or 'standard'")
