"""Torsion characters on line meridians and triangle cycles of the incidence graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .combinatorics import Combinatorics, Permutation, _fmt_point


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    """``xi(meridian_i) = exp(2 pi i exponents[i-1] / order)``."""

    order: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise CharacterError("character order must be positive")
        object.__setattr__(self, "exponents", tuple(int(e) % self.order for e in self.exponents))

    def __call__(self, line: int) -> int:
        return self.exponents[line - 1]

    @property
    def n_lines(self) -> int:
        return len(self.exponents)

    def extended(self, extra: int = 0) -> Character:
        """Same character with one more line of exponent ``extra``."""
        return Character(self.order, self.exponents + (extra,))

    def to_json(self) -> dict:
        return {"order": self.order, "exponents": list(self.exponents)}

    @classmethod
    def from_json(cls, data: dict) -> Character:
        try:
            return cls(int(data["order"]), tuple(int(e) for e in data["exponents"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise CharacterError(f"malformed character JSON: {exc}") from None


@dataclass(frozen=True)
class TriangleCycle:
    """The cycle L_r - P_rs - L_s - P_st - L_t - P_tr - L_r."""

    r: int
    s: int
    t: int

    def __post_init__(self) -> None:
        if len({self.r, self.s, self.t}) != 3:
            raise CharacterError(f"cycle lines must be distinct: {(self.r, self.s, self.t)}")

    @classmethod
    def parse(cls, text: str) -> TriangleCycle:
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 3:
            raise CharacterError(f"a triangle cycle needs three labels, got {text!r}")
        return cls(*(int(p) for p in parts))

    @property
    def lines(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)

    def points(self, C: Combinatorics) -> tuple[tuple[int, ...], ...]:
        return (C.point_of(self.r, self.s), C.point_of(self.s, self.t), C.point_of(self.t, self.r))

    def rotated(self) -> TriangleCycle:
        return TriangleCycle(self.s, self.t, self.r)

    def reversed(self) -> TriangleCycle:
        return TriangleCycle(self.r, self.t, self.s)

    def relabel(self, perm: Permutation) -> TriangleCycle:
        return TriangleCycle(perm(self.r), perm(self.s), perm(self.t))

    def to_json(self) -> dict:
        return {"cycle": list(self.lines)}


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_character(C: Combinatorics, xi: Character) -> CheckResult:
    if xi.n_lines != C.n_lines:
        raise CharacterError(f"character has {xi.n_lines} exponents for {C.n_lines} lines")
    total = sum(xi.exponents) % xi.order
    if total:
        return CheckResult(False, (f"exponent sum is {total} mod {xi.order}, not 0",))
    return CheckResult(True)


@dataclass(frozen=True)
class InnerCyclicReport:
    condition1: CheckResult
    condition2: CheckResult
    condition3: CheckResult
    ok: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ok", self.condition1.ok and self.condition2.ok and self.condition3.ok)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list[str]:
        out = []
        for k, c in enumerate((self.condition1, self.condition2, self.condition3), start=1):
            out.extend(f"condition ({k}): {msg}" for msg in c.failures)
        return out


def is_inner_cyclic(C: Combinatorics, xi: Character, gamma: TriangleCycle) -> InnerCyclicReport:
    """Check the three vanishing conditions of (C, xi, gamma) one by one."""
    if xi.n_lines != C.n_lines:
        raise CharacterError(f"character has {xi.n_lines} exponents for {C.n_lines} lines")
    for l in gamma.lines:
        if not 1 <= l <= C.n_lines:
            raise CharacterError(f"cycle line {l} is not a line of the combinatorics")
    d = xi.order

    # (1) lines of the cycle are killed
    f1 = tuple(f"line {l} has exponent {xi(l)}" for l in gamma.lines if xi(l))
    # (2) every line through a point of the cycle is killed
    f2 = []
    for p in gamma.points(C):
        for l in p:
            if xi(l):
                f2.append(f"line {l} through point {_fmt_point(p)} has exponent {xi(l)}")
    # (3) every point on a line of the cycle has trivial product
    f3 = []
    for l in gamma.lines:
        for p in C.points_on(l):
            s = sum(xi(i) for i in p) % d
            if s:
                f3.append(f"point {_fmt_point(p)} on line {l} has exponent sum {s}")
    return InnerCyclicReport(CheckResult(not f1, f1), CheckResult(not f2, tuple(f2)), CheckResult(not f3, tuple(f3)))


def character_pushforward(xi: Character, phi: Permutation) -> Character:
    """The character xi' with xi'(meridian_phi(i)) = xi(meridian_i)."""
    if phi.degree != xi.n_lines:
        raise CharacterError("permutation degree differs from the number of lines")
    out = [0] * xi.n_lines
    for i in range(1, xi.n_lines + 1):
        out[phi(i) - 1] = xi(i)
    return Character(xi.order, tuple(out))


# the order-5 character used to separate the realizations of K
XI5 = Character(5, (1, 4, 3, 2, 0, 0, 1, 2, 3, 4, 0))
GAMMA_5_6_11 = TriangleCycle(5, 6, 11)


def zero_character(n_lines: int, order: int = 1) -> Character:
    return Character(order, (0,) * n_lines)


def parse_exponents(values: Sequence[int], order: int) -> Character:
    return Character(order, tuple(values))
