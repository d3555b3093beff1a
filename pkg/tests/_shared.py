"""Cached built-ins and pipeline results shared by the test modules."""

from __future__ import annotations

import functools

from zariski.arrangement import builtin_arrangement
from zariski.character import XI5, GAMMA_5_6_11
from zariski.invariant import invariant


@functools.lru_cache(maxsize=None)
def arrangement(name: str):
    return builtin_arrangement(name)


@functools.lru_cache(maxsize=None)
def invariant_result(name: str, paths: int = 1):
    A = arrangement(name)
    xi = XI5.extended(0) if len(A) == 12 else XI5
    return invariant(A, xi, GAMMA_5_6_11, paths)
