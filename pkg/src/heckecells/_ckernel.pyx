# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense polynomial kernels.

Same contract as ``_pykernel``.  Arithmetic runs on int64 with checked
multiply/add; any overflow (or an input that does not fit) hands the call to
the arbitrary-precision Python implementation, so results stay exact.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

from heckecells import _pykernel

BACKEND = "cython"

cdef extern from *:
    """
    static inline int hc_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int hc_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int hc_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int hc_mul_ovf(long long a, long long b, long long *r) nogil
    int hc_add_ovf(long long a, long long b, long long *r) nogil
    int hc_sub_ovf(long long a, long long b, long long *r) nogil


cdef int _load(tuple t, long long *buf) except -1:
    cdef Py_ssize_t i
    for i in range(len(t)):
        buf[i] = <long long>t[i]
    return 0


cdef tuple _store(long long *buf, Py_ssize_t n):
    return tuple([buf[i] for i in range(n)])


def mul(tuple a, tuple b):
    cdef Py_ssize_t na = len(a), nb = len(b), n, i, j
    cdef long long *pa
    cdef long long *pb
    cdef long long *out
    cdef long long t
    cdef bint ovf = False
    if na == 0 or nb == 0:
        return ()
    n = na + nb - 1
    pa = <long long *>malloc(na * sizeof(long long))
    pb = <long long *>malloc(nb * sizeof(long long))
    out = <long long *>malloc(n * sizeof(long long))
    try:
        try:
            _load(a, pa)
            _load(b, pb)
        except OverflowError:
            return _pykernel.mul(a, b)
        for i in range(n):
            out[i] = 0
        with nogil:
            for i in range(na):
                if pa[i] == 0:
                    continue
                for j in range(nb):
                    if hc_mul_ovf(pa[i], pb[j], &t) or hc_add_ovf(out[i + j], t, &out[i + j]):
                        ovf = True
                        break
                if ovf:
                    break
        if ovf:
            return _pykernel.mul(a, b)
        return _store(out, n)
    finally:
        free(pa)
        free(pb)
        free(out)


def add(Py_ssize_t la, tuple a, Py_ssize_t lb, tuple b):
    cdef Py_ssize_t na = len(a), nb = len(b), low, high, i, lo, hi
    cdef long long *out
    cdef long long x
    if na == 0:
        return lb, b
    if nb == 0:
        return la, a
    low = la if la < lb else lb
    high = la + na if la + na > lb + nb else lb + nb
    out = <long long *>malloc((high - low) * sizeof(long long))
    try:
        for i in range(high - low):
            out[i] = 0
        try:
            for i in range(na):
                out[la - low + i] = <long long>a[i]
            for i in range(nb):
                x = <long long>b[i]
                if hc_add_ovf(out[lb - low + i], x, &out[lb - low + i]):
                    return _pykernel.add(la, a, lb, b)
        except OverflowError:
            return _pykernel.add(la, a, lb, b)
        lo = 0
        hi = high - low
        while lo < hi and out[lo] == 0:
            lo += 1
        while hi > lo and out[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            return 0, ()
        return low + lo, _store(out + lo, hi - lo)
    finally:
        free(out)


def divexact(tuple a, tuple b):
    cdef Py_ssize_t na = len(a), nb = len(b), nq, k, j
    cdef long long *rem
    cdef long long *pb
    cdef long long *q
    cdef long long lead, top, qk, t
    if nb == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    if na == 0:
        return ()
    nq = na - nb + 1
    if nq <= 0:
        return None
    rem = <long long *>malloc(na * sizeof(long long))
    pb = <long long *>malloc(nb * sizeof(long long))
    q = <long long *>malloc(nq * sizeof(long long))
    try:
        try:
            _load(a, rem)
            _load(b, pb)
        except OverflowError:
            return _pykernel.divexact(a, b)
        lead = pb[nb - 1]
        for k in range(nq - 1, -1, -1):
            top = rem[k + nb - 1]
            q[k] = 0
            if top == 0:
                continue
            # INT64_MIN / -1 overflows in C
            if lead == -1 and top == -9223372036854775807 - 1:
                return _pykernel.divexact(a, b)
            if top % lead != 0:
                return None
            qk = top // lead
            q[k] = qk
            for j in range(nb):
                if hc_mul_ovf(qk, pb[j], &t) or hc_sub_ovf(rem[k + j], t, &rem[k + j]):
                    return _pykernel.divexact(a, b)
        for j in range(nb - 1):
            if rem[j] != 0:
                return None
        return _store(q, nq)
    finally:
        free(rem)
        free(pb)
        free(q)
