"""Kernel selection: the compiled extension when it imports, else pure Python."""

from __future__ import annotations

BACKEND: str

try:
    from ._kernels import fixed_dot, poly_mulmod, poly_reduce

    BACKEND = "compiled"
except ImportError:  # extension not built
    from ._kernels_py import fixed_dot, poly_mulmod, poly_reduce

    BACKEND = "python"

__all__ = ["BACKEND", "fixed_dot", "poly_mulmod", "poly_reduce"]
