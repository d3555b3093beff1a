# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer polynomial kernels.

Same contracts as ``_kernels_py``.  Multiplication first tries C ``long long``
arrays with checked arithmetic and redoes the work on Python integers if any
intermediate overflows.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    bint mul_overflow "__builtin_mul_overflow" (long long a, long long b, long long *res) nogil
    bint add_overflow "__builtin_add_overflow" (long long a, long long b, long long *res) nogil
    bint sub_overflow "__builtin_sub_overflow" (long long a, long long b, long long *res) nogil


cdef bint _fits(list values):
    cdef object v
    for v in values:
        if v > 9223372036854775807 or v < -9223372036854775807:
            return False
    return True


cpdef list poly_reduce(object coeffs, object modulus):
    cdef list work = list(coeffs)
    cdef list mod = list(modulus)
    cdef Py_ssize_t d = len(mod) - 1
    cdef Py_ssize_t k, j, base
    cdef object c, m
    if len(work) < d:
        work.extend([0] * (d - len(work)))
        return work
    for k in range(len(work) - 1, d - 1, -1):
        c = work[k]
        if c:
            base = k - d
            for j in range(d):
                m = mod[j]
                if m:
                    work[base + j] = work[base + j] - c * m
    del work[d:]
    return work


cdef object _mulmod_small(list a, list b, list mod):
    """C path; returns None when any intermediate overflows 64 bits."""
    cdef Py_ssize_t la = len(a), lb = len(b), d = len(mod) - 1
    cdef Py_ssize_t n = la + lb - 1
    cdef Py_ssize_t i, j, k, base
    cdef long long ai, c, t
    cdef long long *prod = <long long *> malloc(n * sizeof(long long))
    cdef long long *bb = <long long *> malloc(lb * sizeof(long long))
    cdef long long *mm = <long long *> malloc((d + 1) * sizeof(long long))
    if prod == NULL or bb == NULL or mm == NULL:
        free(prod); free(bb); free(mm)
        raise MemoryError()
    try:
        for i in range(n):
            prod[i] = 0
        for j in range(lb):
            bb[j] = b[j]
        for j in range(d + 1):
            mm[j] = mod[j]
        for i in range(la):
            ai = a[i]
            if ai:
                for j in range(lb):
                    if mul_overflow(ai, bb[j], &t) or add_overflow(prod[i + j], t, &prod[i + j]):
                        return None
        for k in range(n - 1, d - 1, -1):
            c = prod[k]
            if c:
                base = k - d
                for j in range(d):
                    if mm[j]:
                        if mul_overflow(c, mm[j], &t) or sub_overflow(prod[base + j], t, &prod[base + j]):
                            return None
        out = [prod[i] if i < n else 0 for i in range(d)]
        return out
    finally:
        free(prod); free(bb); free(mm)


cpdef list poly_mulmod(object a, object b, object modulus):
    cdef list la = list(a), lb = list(b), mod = list(modulus)
    cdef Py_ssize_t i, j, d = len(mod) - 1
    cdef list prod
    cdef object ai, bj
    if not la or not lb:
        return [0] * d
    if _fits(la) and _fits(lb) and _fits(mod):
        fast = _mulmod_small(la, lb, mod)
        if fast is not None:
            return fast
    prod = [0] * (len(la) + len(lb) - 1)
    for i in range(len(la)):
        ai = la[i]
        if ai:
            for j in range(len(lb)):
                bj = lb[j]
                if bj:
                    prod[i + j] = prod[i + j] + ai * bj
    return poly_reduce(prod, mod)


cpdef object fixed_dot(object nums, object table):
    cdef object total = 0
    cdef object x
    cdef Py_ssize_t i
    cdef list ln = list(nums), lt = list(table)
    for i in range(min(len(ln), len(lt))):
        x = ln[i]
        if x:
            total = total + x * lt[i]
    return total
