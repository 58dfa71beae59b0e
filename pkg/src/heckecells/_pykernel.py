"""Pure-Python dense polynomial kernels.

A polynomial is a tuple of integer coefficients ``c`` with ``c[i]`` the
coefficient of ``v**(low + i)``; the exponent offset is handled by the caller.
Inputs are assumed trimmed (nonzero first and last entries) unless empty.
"""

BACKEND = "python"


def mul(a, b):
    if not a or not b:
        return ()
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, bj in enumerate(b):
        if bj:
            for i, ai in enumerate(a):
                out[i + j] += ai * bj
    return tuple(out)


def add(la, a, lb, b):
    """Sum of ``v**la * a`` and ``v**lb * b``; returns a trimmed ``(low, coeffs)``."""
    if not a:
        return lb, b
    if not b:
        return la, a
    low = min(la, lb)
    high = max(la + len(a), lb + len(b))
    out = [0] * (high - low)
    off = la - low
    for i, x in enumerate(a):
        out[off + i] = x
    off = lb - low
    for i, x in enumerate(b):
        out[off + i] += x
    return trim(low, out)


def trim(low, coeffs):
    lo = 0
    hi = len(coeffs)
    while lo < hi and not coeffs[lo]:
        lo += 1
    while hi > lo and not coeffs[hi - 1]:
        hi -= 1
    if lo == hi:
        return 0, ()
    return low + lo, tuple(coeffs[lo:hi])


def divexact(a, b):
    """Quotient ``q`` with ``q * b == a``, or ``None`` if no such integer polynomial.

    ``a`` and ``b`` are trimmed, so the exponent offsets are handled outside.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return ()
    nb = len(b)
    nq = len(a) - nb + 1
    if nq <= 0:
        return None
    rem = list(a)
    q = [0] * nq
    lead = b[-1]
    for k in range(nq - 1, -1, -1):
        top = rem[k + nb - 1]
        if top:
            qk, r = divmod(top, lead)
            if r:
                return None
            q[k] = qk
            for j in range(nb):
                rem[k + j] -= qk * b[j]
    for x in rem[: nb - 1]:
        if x:
            return None
    return tuple(q)
