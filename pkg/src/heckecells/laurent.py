"""Exact Laurent polynomials in ``v`` over the integers, and exact linear algebra.

``LaurentPoly`` is the scalar ring ``Z[v, v^-1]``.  Values are immutable and
hashable.  Coefficients are Python integers, so nothing overflows.

The linear algebra works over the fraction field of ``Z[v]`` without ever
forming fractions: :class:`FractionFreeEchelon` keeps a fraction-free reduced
row echelon form in which every stored entry is a minor of the inserted rows.
"""

from __future__ import annotations

import re
from typing import Hashable, Iterable, Mapping, Sequence

from heckecells import kernels


class NotDivisible(ArithmeticError):
    """An exact division had a remainder."""


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_k v^k`` with integer coefficients.

    Stored densely as ``low`` (lowest exponent) and ``c`` (coefficient tuple,
    first and last entries nonzero).  The zero polynomial has ``c == ()``.
    """

    __slots__ = ("low", "c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | int | None = None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs}
        items = [(int(e), int(x)) for e, x in coeffs.items() if x]
        if not items:
            self.low, self.c = 0, ()
        else:
            lo = min(e for e, _ in items)
            hi = max(e for e, _ in items)
            dense = [0] * (hi - lo + 1)
            for e, x in items:
                dense[e - lo] += x
            self.low, self.c = kernels.trim(lo, dense)
        self._hash = None

    @classmethod
    def _raw(cls, low: int, c: tuple) -> "LaurentPoly":
        p = object.__new__(cls)
        p.low = low if c else 0
        p.c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        if not coeff:
            return ZERO
        return cls._raw(exp, (coeff,))

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        """Mapping exponent -> nonzero coefficient."""
        return {self.low + i: x for i, x in enumerate(self.c) if x}

    def items(self):
        return self.coeffs.items()

    def coeff(self, exp: int) -> int:
        i = exp - self.low
        if 0 <= i < len(self.c):
            return self.c[i]
        return 0

    @property
    def min_degree(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return self.low

    @property
    def max_degree(self) -> int:
        if not self.c:
            raise ValueError("zero polynomial has no degree")
        return self.low + len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_constant(self) -> bool:
        return not self.c or (len(self.c) == 1 and self.low == 0)

    def nonnegative(self) -> bool:
        """True iff every coefficient is >= 0 (membership in N[v, v^-1])."""
        return all(x >= 0 for x in self.c)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __len__(self) -> int:
        return sum(1 for x in self.c if x)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly._raw(0, (other,)) if other else ZERO
        return None

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        low, c = kernels.add(self.low, self.c, q.low, q.c)
        return LaurentPoly._raw(low, c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.low, tuple(-x for x in self.c))

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        if not self.c or not q.c:
            return ZERO
        return LaurentPoly._raw(self.low + q.low, kernels.mul(self.c, q.c))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.c) == 1 and abs(self.c[0]) == 1:
                return LaurentPoly._raw(-self.low * (-k), (self.c[0] ** (-k),))
            raise NotDivisible(f"{self} is not a unit")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        return LaurentPoly._raw(self.low + k, self.c)

    def bar(self) -> "LaurentPoly":
        """The substitution ``v -> v^-1``."""
        if not self.c:
            return self
        return LaurentPoly._raw(-(self.low + len(self.c) - 1), self.c[::-1])

    def exact_div(self, other) -> "LaurentPoly":
        q = self._coerce(other)
        if q is None:
            raise TypeError(f"cannot divide by {other!r}")
        quot = kernels.divexact(self.c, q.c)
        if quot is None:
            raise NotDivisible(f"({self}) is not divisible by ({q})")
        return LaurentPoly._raw(self.low - q.low, quot)

    def evaluate(self, x):
        """Value at ``v = x`` (``x`` any ring element supporting ``**`` with negative powers)."""
        return sum((coef * x**e for e, coef in self.coeffs.items()), 0 * x)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self.low == q.low and self.c == q.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.c)) if len(self.c) != 1 or self.low else hash(self.c[0])
        return self._hash

    # -- text --------------------------------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPoly({render(self)!r})"


ZERO = LaurentPoly._raw(0, ())
ONE = LaurentPoly._raw(0, (1,))
V = LaurentPoly._raw(1, (1,))
VINV = LaurentPoly._raw(-1, (1,))
#: ``v - v^-1``, the quadratic-relation coefficient
QV = LaurentPoly({1: 1, -1: -1})


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``s`` with ``s * q == p``; raises :class:`NotDivisible` otherwise."""
    return p.exact_div(q)


def _render_monomial(e: int) -> str:
    if e == 0:
        return "1"
    if e == 1:
        return "v"
    return f"v^{e}"


def render(p: LaurentPoly) -> str:
    """Canonical text form, highest exponent first: ``"v^2 - 2 + v^-2"``."""
    if not p.c:
        return "0"
    parts = []
    for e in range(p.low + len(p.c) - 1, p.low - 1, -1):
        x = p.c[e - p.low]
        if not x:
            continue
        sign = "-" if x < 0 else "+"
        a = abs(x)
        if e == 0:
            body = str(a)
        elif a == 1:
            body = _render_monomial(e)
        else:
            body = f"{a}*{_render_monomial(e)}"
        if not parts:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TERM = re.compile(r"([+-])(?:(\d+)(\*)?)?(v(?:\^(-?\d+))?)?")


def parse(text: str) -> LaurentPoly:
    """Inverse of :func:`render`; also accepts ``3v^2`` without the ``*``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    out: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, star, mono, exp = m.groups() if m else (None,) * 5
        if m is None or (num is None and mono is None) or (star and mono is None):
            raise ValueError(f"cannot parse polynomial {text!r}")
        coef = int(num) if num is not None else 1
        e = 0 if mono is None else (int(exp) if exp is not None else 1)
        out[e] = out.get(e, 0) + (coef if sign == "+" else -coef)
        pos = m.end()
    return LaurentPoly(out)


def poly(x) -> LaurentPoly:
    """Coerce an int, string or LaurentPoly."""
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot convert {x!r} to LaurentPoly")


class FractionFreeEchelon:
    """Incremental fraction-free reduced row echelon form over ``Z[v, v^-1]``.

    Rows are sparse mappings ``column -> LaurentPoly``; columns are any
    sortable hashables.  Invariant: every stored row has the common value
    ``det`` at its own pivot and zero at every other pivot column, and all
    entries are minors of the matrix of inserted rows (Bareiss bound), so
    coefficient growth stays polynomial.
    """

    def __init__(self):
        self.rows: dict[Hashable, dict[Hashable, LaurentPoly]] = {}
        self.det = ONE

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[Hashable, LaurentPoly]) -> dict[Hashable, LaurentPoly]:
        """``det * vec`` minus its components along the stored rows (zero iff in span)."""
        d = self.det
        acc: dict[Hashable, LaurentPoly] = {}
        for col, x in vec.items():
            if x:
                acc[col] = d * x if d != ONE else x
        for piv, row in self.rows.items():
            x = vec.get(piv)
            if not x:
                continue
            for col, r in row.items():
                t = acc.get(col, ZERO) - x * r
                if t:
                    acc[col] = t
                else:
                    acc.pop(col, None)
        return acc

    def contains(self, vec: Mapping[Hashable, LaurentPoly]) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: Mapping[Hashable, LaurentPoly]) -> bool:
        """Add ``vec`` to the spanning set; returns True iff the rank grew."""
        red = self.reduce(vec)
        if not red:
            return False
        # pivot: fewest terms, then smallest column, keeps minors short
        piv = min(red, key=lambda c: (len(red[c]), c))
        newdet = red[piv]
        old = self.det
        for p, row in self.rows.items():
            y = row.get(piv)
            updated: dict[Hashable, LaurentPoly] = {}
            for col in set(row) | set(red):
                t = newdet * row.get(col, ZERO)
                if y:
                    t = t - y * red.get(col, ZERO)
                if t:
                    updated[col] = t.exact_div(old) if old != ONE else t
            self.rows[p] = updated
        self.rows[piv] = red
        self.det = newdet
        return True

    def extend(self, vecs: Iterable[Mapping[Hashable, LaurentPoly]]) -> int:
        for vec in vecs:
            self.insert(vec)
        return self.rank


def _as_sparse(vec: Sequence) -> dict[int, LaurentPoly]:
    return {i: poly(x) for i, x in enumerate(vec) if poly(x)}


def membership(vectors: Sequence[Sequence], target: Sequence) -> bool:
    """True iff ``target`` lies in the span of ``vectors`` over ``Q(v)``.

    Decided by exact fraction-free elimination: rank(span) == rank(span + target).
    """
    dims = {len(v) for v in vectors} | {len(target)}
    if len(dims) > 1:
        raise ValueError("vectors have different dimensions")
    ech = FractionFreeEchelon()
    ech.extend(_as_sparse(v) for v in vectors)
    return ech.contains(_as_sparse(target))


def rank(vectors: Sequence[Sequence]) -> int:
    ech = FractionFreeEchelon()
    return ech.extend(_as_sparse(v) for v in vectors)
