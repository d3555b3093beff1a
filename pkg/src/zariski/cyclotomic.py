"""Exact arithmetic in cyclotomic fields Q(zeta_n) with certified embeddings.

Elements are stored in the power basis ``1, z, ..., z**(phi(n)-1)`` as an
integer numerator vector over one positive common denominator, so equality
is a tuple comparison and zero tests are exact.  Complex embeddings are
evaluated as :class:`ComplexBall` enclosures with integer mantissas.
"""

from __future__ import annotations

import ast
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Literal, Sequence, Union

from mpmath import iv

from .kernels import fixed_dot, poly_mulmod, poly_reduce

Rational = Union[int, Fraction]

DEFAULT_PRECISION = 64


class FieldError(ValueError):
    """Mismatched fields, division by zero, or bad Galois exponents."""


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Little-endian integer coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise FieldError(f"cyclotomic order must be positive, got {n}")
    # x**n - 1 divided by every Phi_d with d a proper divisor of n
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        quot[k - dd] = c
        if c:
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    assert not any(num), "cyclotomic division left a remainder"
    return quot


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _as_fraction(x: object) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class CycNum:
    """An element of Q(zeta_n) in canonical power-basis form."""

    __slots__ = ("_num", "_den", "_n", "_hash")

    def __init__(self, coeffs: Iterable[Rational | str], n: int):
        fr = [_as_fraction(c) for c in coeffs]
        den = reduce(math.lcm, (f.denominator for f in fr), 1)
        nums = [f.numerator * (den // f.denominator) for f in fr]
        obj = CycNum._from_ints(nums, den, n)
        self._num, self._den, self._n, self._hash = obj._num, obj._den, obj._n, None

    @classmethod
    def _raw(cls, num: tuple[int, ...], den: int, n: int) -> CycNum:
        obj = object.__new__(cls)
        obj._num, obj._den, obj._n, obj._hash = num, den, n, None
        return obj

    @classmethod
    def _from_ints(cls, nums: Sequence[int], den: int, n: int) -> CycNum:
        """Reduce an integer polynomial in zeta (over ``den``) to canonical form."""
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        phi = cyclotomic_polynomial(n)
        d = len(phi) - 1
        if len(nums) > d:
            if len(nums) > n:
                # fold with zeta**n == 1 before the (slower) division
                folded = [0] * n
                for i, c in enumerate(nums):
                    folded[i % n] += c
                nums = folded
            nums = poly_reduce(nums, phi)
        else:
            nums = list(nums) + [0] * (d - len(nums))
        if den < 0:
            den = -den
            nums = [-c for c in nums]
        g = reduce(math.gcd, nums, den)
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        if not any(nums):
            den = 1
        return cls._raw(tuple(nums), den, n)

    @classmethod
    def zero(cls, n: int) -> CycNum:
        return cls._raw((0,) * totient(n), 1, n)

    @classmethod
    def one(cls, n: int) -> CycNum:
        return cls.from_rational(1, n)

    @classmethod
    def from_rational(cls, q: Rational, n: int) -> CycNum:
        q = _as_fraction(q)
        d = totient(n)
        return cls._from_ints([q.numerator] + [0] * (d - 1), q.denominator, n)

    @classmethod
    def gen(cls, n: int, power: int = 1) -> CycNum:
        """``zeta_n ** power``."""
        nums = [0] * n
        nums[power % n] = 1
        return cls._from_ints(nums, 1, n)

    # -- accessors ---------------------------------------------------------

    @property
    def field_order(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other: object) -> CycNum:
        if isinstance(other, CycNum):
            if other._n != self._n:
                raise FieldError(f"field mismatch: Q(zeta_{self._n}) vs Q(zeta_{other._n})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(other, self._n)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self._den == o._den:
            return CycNum._from_ints([a + b for a, b in zip(self._num, o._num)], self._den, self._n)
        da, db = self._den, o._den
        return CycNum._from_ints([a * db + b * da for a, b in zip(self._num, o._num)], da * db, self._n)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum._raw(tuple(-c for c in self._num), self._den, self._n)

    def __sub__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_rational():
            q, den = o._num[0], o._den
            return CycNum._from_ints([c * q for c in self._num], self._den * den, self._n)
        if self.is_rational():
            return o * self
        prod = poly_mulmod(self._num, o._num, cyclotomic_polynomial(self._n))
        return CycNum._from_ints(prod, self._den * o._den, self._n)

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return CycNum.from_rational(1 / self.rational(), self._n)
        # a * prod_{k != 1} sigma_k(a) is the (rational) norm of a
        cofactor = CycNum.one(self._n)
        for k in units(self._n):
            if k != 1:
                cofactor = cofactor * self.galois(k)
        norm = (self * cofactor).rational()
        return cofactor * (1 / norm)

    def __truediv__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> CycNum:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> CycNum:
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum.one(self._n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, k: int) -> CycNum:
        """Image under the automorphism ``zeta -> zeta**k``."""
        n = self._n
        if math.gcd(k, n) != 1:
            raise FieldError(f"gcd({k}, {n}) != 1: not a Galois automorphism")
        k %= n
        if k == 1:
            return self
        nums = [0] * n
        for j, c in enumerate(self._num):
            if c:
                nums[(j * k) % n] += c
        return CycNum._from_ints(nums, self._den, n)

    def conj(self) -> CycNum:
        """Complex conjugate; the same field element under every embedding."""
        return self.galois(-1)

    def real_part(self) -> CycNum:
        return (self + self.conj()) * Fraction(1, 2)

    def lift(self, m: int) -> CycNum:
        """The same number inside Q(zeta_m), for m a multiple of n."""
        if m % self._n:
            raise FieldError(f"{self._n} does not divide {m}")
        step = m // self._n
        nums = [0] * (len(self._num) * step)
        for j, c in enumerate(self._num):
            nums[j * step] = c
        return CycNum._from_ints(nums, self._den, m)

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycNum):
            return self._n == other._n and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._den, self._num))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CycNum({format_cyc(self)!r}, n={self._n})"

    def __str__(self) -> str:
        return format_cyc(self)


# -- textual form -------------------------------------------------------------


def format_cyc(a: CycNum, var: str = "a") -> str:
    """Polynomial text in ``var``, highest power first, e.g. ``a^3 - 1/2*a + 2``."""
    terms: list[str] = []
    for j in range(len(a.numerators) - 1, -1, -1):
        c = Fraction(a.numerators[j], a.denominator)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        terms.append(f"{sign} {body}")
    if not terms:
        return "0"
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def parse_cyc(text: str, n: int, var: str = "a") -> CycNum:
    """Parse polynomial text such as ``-a^3``, ``(a-1)*a`` or ``3/2`` into Q(zeta_n)."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise FieldError(f"cannot parse {text!r}: {exc.msg}") from None

    def ev(node: ast.AST) -> CycNum:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return CycNum.from_rational(node.value, n)
        if isinstance(node, ast.Name) and node.id == var:
            return CycNum.gen(n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise FieldError(f"exponent must be an integer literal in {text!r}")
                return ev(node.left) ** node.right.value
            lhs, rhs = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return lhs + rhs
            if isinstance(node.op, ast.Sub):
                return lhs - rhs
            if isinstance(node.op, ast.Mult):
                return lhs * rhs
            if isinstance(node.op, ast.Div):
                return lhs / rhs
        raise FieldError(f"unsupported syntax in {text!r}")

    return ev(tree)


# -- named operations ----------------------------------------------------

ArithKind = Literal["add", "sub", "mul", "div"]


def cyc_normalize(raw_coeffs: Sequence[Rational], n: int) -> CycNum:
    """Reduce a polynomial in zeta (any length) modulo Phi_n."""
    if n < 1:
        raise FieldError(f"cyclotomic order must be positive, got {n}")
    return CycNum(raw_coeffs, n)


def cyc_arith(kind: ArithKind, a: CycNum, b: CycNum) -> CycNum:
    if a.field_order != b.field_order:
        raise FieldError("operands live in different cyclotomic fields")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def galois_apply(a: CycNum, k: int) -> CycNum:
    return a.galois(k)


# -- embeddings and balls -----------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """``zeta_n -> exp(2*pi*i*root_index/n)``."""

    field_order: int
    root_index: int

    def __post_init__(self) -> None:
        if self.field_order < 1:
            raise FieldError("field order must be positive")
        if math.gcd(self.root_index, self.field_order) != 1:
            raise FieldError(
                f"root index {self.root_index} is not coprime to {self.field_order}"
            )
        object.__setattr__(self, "root_index", self.root_index % self.field_order)

    def conjugate(self) -> Embedding:
        return Embedding(self.field_order, -self.root_index)

    def compose(self, k: int) -> Embedding:
        """Embedding e' with e'(a) = e(galois_apply(a, k))."""
        return Embedding(self.field_order, self.root_index * k)

    def lift(self, m: int, extra: tuple[int, int] | None = None) -> Embedding:
        """An embedding of Q(zeta_m) restricting to this one on Q(zeta_n).

        ``extra=(q, j)`` additionally pins ``zeta_q -> exp(2*pi*i*j/q)`` for
        q dividing m; the smallest matching root index is returned.
        """
        n = self.field_order
        if m % n:
            raise FieldError(f"{n} does not divide {m}")
        for K in range(1, m + 1):
            if math.gcd(K, m) != 1 or (K - self.root_index) % n:
                continue
            if extra is not None:
                q, j = extra
                if m % q:
                    raise FieldError(f"{q} does not divide {m}")
                if (K - j) % q:
                    continue
            return Embedding(m, K)
        raise FieldError(f"no lift of {self} to Q(zeta_{m}) with {extra}")

    def __str__(self) -> str:
        return f"zeta_{self.field_order} -> exp(2 pi i {self.root_index}/{self.field_order})"


@dataclass(frozen=True)
class ComplexBall:
    """``(real_mid +- real_rad) + i (imag_mid +- imag_rad)``, all scaled by ``2**-prec``.

    Mantissas and radii are Python integers, so the ball is an exact dyadic
    rectangle.
    """

    real_mid: int
    real_rad: int
    imag_mid: int
    imag_rad: int
    prec: int

    def __post_init__(self) -> None:
        if self.real_rad < 0 or self.imag_rad < 0:
            raise ValueError("ball radii must be non-negative")

    def real_interval(self) -> tuple[Fraction, Fraction]:
        s = 1 << self.prec
        return Fraction(self.real_mid - self.real_rad, s), Fraction(self.real_mid + self.real_rad, s)

    def imag_interval(self) -> tuple[Fraction, Fraction]:
        s = 1 << self.prec
        return Fraction(self.imag_mid - self.imag_rad, s), Fraction(self.imag_mid + self.imag_rad, s)

    def real_sign(self) -> int | None:
        """Sign of the real part if the ball excludes zero, else None."""
        if self.real_mid - self.real_rad > 0:
            return 1
        if self.real_mid + self.real_rad < 0:
            return -1
        return None

    def imag_sign(self) -> int | None:
        if self.imag_mid - self.imag_rad > 0:
            return 1
        if self.imag_mid + self.imag_rad < 0:
            return -1
        return None

    def contains(self, z: complex | ComplexBall) -> bool:
        if isinstance(z, ComplexBall):
            rlo, rhi = z.real_interval()
            ilo, ihi = z.imag_interval()
        else:
            rlo = rhi = Fraction(z.real)
            ilo = ihi = Fraction(z.imag)
        a, b = self.real_interval()
        c, d = self.imag_interval()
        return a <= rlo and rhi <= b and c <= ilo and ihi <= d

    def __mul__(self, other: ComplexBall) -> ComplexBall:
        """Rectangular enclosure of the product (outward rounded)."""
        p = max(self.prec, other.prec)
        ar, ai = _scaled_interval(self, p)
        br, bi = _scaled_interval(other, p)
        # intervals are at scale 2**-p; products are at 2**-2p
        rr = _isub(_imul(ar, br), _imul(ai, bi))
        ii = _iadd(_imul(ar, bi), _imul(ai, br))
        lo_r, hi_r = rr[0] >> p, -((-rr[1]) >> p)
        lo_i, hi_i = ii[0] >> p, -((-ii[1]) >> p)
        return _ball_from_bounds(lo_r, hi_r, lo_i, hi_i, p)

    def __complex__(self) -> complex:
        s = 2.0 ** -self.prec
        return complex(self.real_mid * s, self.imag_mid * s)

    def radius(self) -> Fraction:
        return Fraction(max(self.real_rad, self.imag_rad), 1 << self.prec)


def _scaled_interval(b: ComplexBall, p: int) -> tuple[tuple[int, int], tuple[int, int]]:
    sh = p - b.prec
    return (
        ((b.real_mid - b.real_rad) << sh, (b.real_mid + b.real_rad) << sh),
        ((b.imag_mid - b.imag_rad) << sh, (b.imag_mid + b.imag_rad) << sh),
    )


def _imul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    prods = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return min(prods), max(prods)


def _iadd(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return x[0] + y[0], x[1] + y[1]


def _isub(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return x[0] - y[1], x[1] - y[0]


def _ball_from_bounds(lo_r: int, hi_r: int, lo_i: int, hi_i: int, prec: int) -> ComplexBall:
    mr = (lo_r + hi_r) // 2
    mi = (lo_i + hi_i) // 2
    return ComplexBall(mr, max(hi_r - mr, mr - lo_r), mi, max(hi_i - mi, mi - lo_i), prec)


_IV_LOCK = threading.Lock()


def _mpf_bounds(x: object, prec: int) -> tuple[int, int]:
    """Floor/ceiling of ``x * 2**prec`` for an mpmath interval ``x``."""
    out = []
    for k, raw in enumerate(x._mpi_):  # type: ignore[attr-defined]
        sign, man, exp, _ = raw
        v = -man if sign else man
        shift = exp + prec
        if shift >= 0:
            out.append(v << shift)
        elif k == 0:
            out.append(v >> -shift)
        else:
            out.append(-((-v) >> -shift))
    return out[0], out[1]


@lru_cache(maxsize=256)
def _power_table(n: int, k: int, prec: int) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """Mantissas of Re/Im of zeta**j (j < phi(n)) at scale 2**-prec, and a common radius."""
    d = totient(n)
    re, im = [], []
    rad = 0
    with _IV_LOCK:
        saved = iv.prec
        try:
            iv.prec = prec + 16
            for j in range(d):
                ang = 2 * iv.pi * iv.mpf((j * k) % n) / n
                lo, hi = _mpf_bounds(iv.cos(ang), prec)
                mid = (lo + hi) // 2
                rad = max(rad, hi - mid, mid - lo)
                re.append(mid)
                lo, hi = _mpf_bounds(iv.sin(ang), prec)
                mid = (lo + hi) // 2
                rad = max(rad, hi - mid, mid - lo)
                im.append(mid)
        finally:
            iv.prec = saved
    return tuple(re), tuple(im), max(rad, 1)


def embed(a: CycNum, e: Embedding, precision_bits: int = DEFAULT_PRECISION) -> ComplexBall:
    """Certified enclosure of the image of ``a`` under ``e``."""
    if a.field_order != e.field_order:
        raise FieldError(f"embedding of Q(zeta_{e.field_order}) applied to Q(zeta_{a.field_order})")
    if precision_bits < 16:
        raise ValueError("precision_bits must be at least 16")
    num, den = a.numerators, a.denominator
    if a.is_rational():
        # exact when the rational is dyadic at this precision
        q, r = divmod(num[0] << precision_bits, den)
        return ComplexBall(q, 1 if r else 0, 0, 0, precision_bits)
    re_t, im_t, rad = _power_table(a.field_order, e.root_index, precision_bits)
    weight = sum(abs(c) for c in num)
    re_sum = fixed_dot(num, re_t)
    im_sum = fixed_dot(num, im_t)
    err = weight * rad
    # divide by den with outward rounding
    lo_r, hi_r = (re_sum - err) // den, -((-(re_sum + err)) // den)
    lo_i, hi_i = (im_sum - err) // den, -((-(im_sum + err)) // den)
    return _ball_from_bounds(lo_r, hi_r, lo_i, hi_i, precision_bits)


Part = Literal["real", "imag"]

_start_precision = DEFAULT_PRECISION


def set_precision_floor(bits: int) -> int:
    """Set the starting precision of sign certification; returns the previous value.

    Results never depend on it, only the number of refinement rounds does.
    """
    global _start_precision
    if bits < 16:
        raise ValueError("precision must be at least 16 bits")
    old, _start_precision = _start_precision, int(bits)
    return old


def certified_sign(a: CycNum, part: Part, e: Embedding, precision_bits: int | None = None) -> int:
    """Exact sign of Re or Im of ``e(a)``.

    Zero is decided in the field (``a +- conj(a)`` vanishes); the numeric
    loop only runs on provably nonzero values, doubling precision until the
    enclosure excludes zero.
    """
    if part == "real":
        x = a + a.conj()
    elif part == "imag":
        x = a - a.conj()
    else:
        raise ValueError(f"part must be 'real' or 'imag', got {part!r}")
    if x.is_zero():
        return 0
    prec = max(precision_bits or _start_precision, 16)
    while True:
        ball = embed(x, e, prec)
        s = ball.real_sign() if part == "real" else ball.imag_sign()
        if s is not None:
            return s
        prec *= 2


def real_sign(x: CycNum, e: Embedding, precision_bits: int | None = None) -> int:
    """Sign of ``e(x)`` for ``x`` known to be real (fixed by conjugation)."""
    if x.is_zero():
        return 0
    prec = max(precision_bits or _start_precision, 16)
    while True:
        s = embed(x, e, prec).real_sign()
        if s is not None:
            return s
        prec *= 2


def to_complex(a: CycNum, e: Embedding) -> complex:
    return complex(embed(a, e, 64))
