"""Pure-Python versions of the integer polynomial kernels.

Coefficient lists are little-endian (index ``i`` holds the coefficient of
``x**i``).  ``modulus`` is a monic integer polynomial of degree ``d`` given
as ``d + 1`` coefficients; every function returns a list of length ``d``.
"""

from __future__ import annotations

from typing import Sequence


def poly_reduce(coeffs: Sequence[int], modulus: Sequence[int]) -> list[int]:
    d = len(modulus) - 1
    work = list(coeffs)
    if len(work) < d:
        work.extend([0] * (d - len(work)))
        return work
    for k in range(len(work) - 1, d - 1, -1):
        c = work[k]
        if c:
            base = k - d
            for j in range(d):
                m = modulus[j]
                if m:
                    work[base + j] -= c * m
    del work[d:]
    return work


def poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int]) -> list[int]:
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return [0] * (len(modulus) - 1)
    prod = [0] * (la + lb - 1)
    for i in range(la):
        ai = a[i]
        if ai:
            for j in range(lb):
                bj = b[j]
                if bj:
                    prod[i + j] += ai * bj
    return poly_reduce(prod, modulus)


def fixed_dot(nums: Sequence[int], table: Sequence[int]) -> int:
    """Exact integer dot product used by ball evaluation."""
    total = 0
    for x, y in zip(nums, table):
        if x:
            total += x * y
    return total
