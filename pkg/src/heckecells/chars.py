"""Torsion characters of the torus and their stabilizer root data.

A character point is a homomorphism from the cocharacter lattice (the coroot
lattice, basis the simple coroots) to ``Q/Z``.  Inside a fixed torsion level
``n`` it is stored as the tuple of numerators ``k_i`` with
``lambda(alpha_i^vee) = k_i / n``.  The set ``ufs_n`` is enumerated in
lexicographic order of numerators, so the trivial character has index 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from heckecells.rootsys import RootDatum, perm_order


class IncompatibleTwist(ValueError):
    """The configured lattice map does not intertwine the W-action with eps."""


@dataclass(frozen=True, order=True)
class CharacterPoint:
    values: tuple[Fraction, ...]

    @classmethod
    def from_numerators(cls, nums: Sequence[int], n: int) -> "CharacterPoint":
        return cls(tuple(Fraction(k % n, n) for k in nums))

    @classmethod
    def parse(cls, items: Sequence[str] | str) -> "CharacterPoint":
        """From ``["1/3", "0"]`` or ``"(1/3,0)"``."""
        if isinstance(items, str):
            items = [t for t in items.strip("()[] ").split(",") if t.strip()]
        return cls(tuple(Fraction(t.strip().strip('"')) % 1 for t in items))

    @property
    def order(self) -> int:
        n = 1
        for x in self.values:
            d = x.denominator
            n = n * d // _gcd(n, d)
        return n

    def numerators(self, n: int) -> tuple[int, ...]:
        if n % self.order:
            raise ValueError(f"{self} is not {n}-torsion")
        return tuple(int(x * n) for x in self.values)

    def render(self) -> str:
        return "(" + ",".join(str(x) for x in self.values) + ")"

    def to_json(self) -> list[str]:
        return [str(x) for x in self.values]

    def __str__(self):
        return self.render()


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class ReflectionSubgroup:
    """A reflection subgroup ``W_lambda`` of ``W`` as an abstract Coxeter system.

    ``members`` is sorted by (internal length, index in W); ``simple_refl`` are
    the W-indices of the reflections in the simple roots of ``pos_roots``.
    """

    datum: RootDatum
    pos_roots: frozenset[int]
    simple_roots: tuple[int, ...]
    simple_refl: tuple[int, ...]
    members: tuple[int, ...]
    llen: dict

    @property
    def key(self) -> frozenset[int]:
        return self.pos_roots

    def __contains__(self, w: int) -> bool:
        return w in self.llen

    def __len__(self) -> int:
        return len(self.members)

    def length(self, z: int) -> int:
        return self.llen[z]

    def left_descent(self, z: int) -> int | None:
        """A simple reflection ``s`` (W-index) with ``l(s z) < l(z)``, or None."""
        W = self.datum.W
        for s in self.simple_refl:
            if self.llen[W.mul(s, z)] < self.llen[z]:
                return s
        return None

    @cached_property
    def _bruhat_memo(self) -> dict:
        return {}

    def bruhat_leq(self, x: int, z: int) -> bool:
        """Internal Bruhat order of the Coxeter system ``(W_lambda, S_lambda)``."""
        if x == z or self.llen[x] == 0:
            return True
        if self.llen[x] >= self.llen[z]:
            return False
        memo = self._bruhat_memo
        if (x, z) in memo:
            return memo[x, z]
        W = self.datum.W
        s = self.left_descent(z)
        sz, sx = W.mul(s, z), W.mul(s, x)
        res = self.bruhat_leq(sx, sz) if self.llen[sx] < self.llen[x] else self.bruhat_leq(x, sz)
        memo[x, z] = res
        return res

    def word(self, z: int) -> tuple[int, ...]:
        """A reduced word of ``z`` in the simple reflections (W-indices)."""
        W = self.datum.W
        out = []
        while self.llen[z]:
            s = self.left_descent(z)
            out.append(s)
            z = W.mul(s, z)
        return tuple(out)


def reflection_subgroup(datum: RootDatum, pos_roots: Iterable[int]) -> ReflectionSubgroup:
    """Build ``W_lambda`` from a closed positive subsystem (root indices into ``datum.roots``)."""
    W = datum.W
    pos = frozenset(pos_roots)
    simple = []
    for a in sorted(pos):
        perm = datum.reflection_perm(a)
        rest = pos - {a}
        if {perm[b] for b in rest} == rest:
            simple.append(a)
    refl = tuple(W.reflection(a) for a in simple)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for z in frontier:
            for s in refl:
                u = W.mul(s, z)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    llen = {z: sum(1 for a in pos if not datum.is_positive(W.act_root(z, a))) for z in seen}
    members = tuple(sorted(seen, key=lambda z: (llen[z], z)))
    return ReflectionSubgroup(datum, pos, tuple(simple), refl, members, llen)


@dataclass(frozen=True)
class LambdaData:
    lam: int
    point: CharacterPoint
    sub: ReflectionSubgroup

    @property
    def pos_roots(self) -> frozenset[int]:
        return self.sub.pos_roots

    @property
    def simple(self) -> tuple[int, ...]:
        return self.sub.simple_roots

    @property
    def members(self) -> tuple[int, ...]:
        return self.sub.members

    def length(self, z: int) -> int:
        return self.sub.llen[z]


class CharacterSet:
    """The finite set ``ufs_n`` with its W-action and an optional twist ``dbar``.

    ``dbar`` is a 0-based permutation ``pi`` of the coordinates acting by
    ``(dbar lam)_{pi(i)} = lam_i``; it defaults to ``datum.eps``.
    """

    def __init__(self, datum: RootDatum, n: int, dbar: Sequence[int] | None = None):
        if n < 1:
            raise ValueError("torsion level n must be >= 1")
        self.datum = datum
        self.n = n
        r = datum.rank
        self.nums: tuple[tuple[int, ...], ...] = tuple(product(range(n), repeat=r))
        self.index = {k: i for i, k in enumerate(self.nums)}
        self.size = len(self.nums)
        a = datum.cartan
        # (s_i lam)_j = lam_j - a[j][i] lam_i
        self.simple_act = tuple(
            tuple(self.index[tuple((lam[j] - a[j][i] * lam[i]) % n for j in range(r))] for lam in self.nums)
            for i in range(r)
        )
        W = datum.W
        table = [None] * W.order
        table[0] = tuple(range(self.size))
        for w in range(1, W.order):
            i = W.word(w)[0]
            rest = table[W.lmul[i][w]]
            s = self.simple_act[i]
            table[w] = tuple(s[x] for x in rest)
        self.act_table: tuple[tuple[int, ...], ...] = tuple(table)
        self.dbar = tuple(datum.eps) if dbar is None else tuple(dbar)
        if sorted(self.dbar) != list(range(r)):
            raise IncompatibleTwist(f"dbar={dbar} is not a coordinate permutation")
        self._check_twist()
        self.dbar_table = tuple(self.index[self._permute(lam)] for lam in self.nums)
        inv = [0] * self.size
        for x, y in enumerate(self.dbar_table):
            inv[y] = x
        self.dbar_inv_table = tuple(inv)
        self._stab: dict[int, LambdaData] = {}
        self._subs: dict[frozenset, ReflectionSubgroup] = {}

    def _permute(self, lam: Sequence[int]) -> tuple[int, ...]:
        out = [0] * len(lam)
        for i, x in enumerate(lam):
            out[self.dbar[i]] = x
        return tuple(out)

    def _check_twist(self) -> None:
        """Lattice-level check ``P S_i = S_{eps(i)} P`` for the coordinate maps."""
        r = self.datum.rank
        a = self.datum.cartan
        eps = self.datum.eps

        def S(i):
            return [[(1 if j == k else 0) - (a[j][i] if k == i else 0) for k in range(r)] for j in range(r)]

        P = [[1 if self.dbar[k] == j else 0 for k in range(r)] for j in range(r)]

        def mm(x, y):
            return [[sum(x[i][k] * y[k][j] for k in range(r)) for j in range(r)] for i in range(r)]

        for i in range(r):
            if mm(P, S(i)) != mm(S(eps[i]), P):
                raise IncompatibleTwist(
                    f"dbar={tuple(d + 1 for d in self.dbar)} is not compatible with "
                    f"eps={tuple(e + 1 for e in eps)} at generator s{i + 1}")

    # -- points ------------------------------------------------------------

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(range(self.size))

    def point(self, lam: int) -> CharacterPoint:
        return CharacterPoint.from_numerators(self.nums[lam], self.n)

    def lookup(self, point: CharacterPoint | Sequence[int] | str) -> int:
        if isinstance(point, str):
            point = CharacterPoint.parse(point)
        if isinstance(point, CharacterPoint):
            return self.index[point.numerators(self.n)]
        return self.index[tuple(int(k) % self.n for k in point)]

    def render(self, lam: int) -> str:
        return self.point(lam).render()

    def pair(self, lam: int, coroot: Sequence[int]) -> int:
        """``n * lambda(y)`` mod n for a coroot-lattice vector ``y``."""
        return sum(k * y for k, y in zip(self.nums[lam], coroot)) % self.n

    def act(self, w: int, lam: int) -> int:
        return self.act_table[w][lam]

    def act_D(self, lam: int, power: int = 1) -> int:
        t = self.dbar_table if power >= 0 else self.dbar_inv_table
        for _ in range(abs(power)):
            lam = t[lam]
        return lam

    @property
    def dbar_order(self) -> int:
        return perm_order(self.dbar)

    def simple_in_stabilizer(self, i: int, lam: int) -> bool:
        """``s_i in W_lam``, i.e. ``lam(alpha_i^vee) = 0``."""
        return self.nums[lam][i] == 0

    # -- stabilizer data ---------------------------------------------------

    def root_subsystem(self, lam: int) -> frozenset[int]:
        d = self.datum
        return frozenset(k for k in range(d.npos) if self.pair(lam, d.coroots[k]) == 0)

    def stabilizer_data(self, lam: int) -> LambdaData:
        if lam not in self._stab:
            pos = self.root_subsystem(lam)
            if pos not in self._subs:
                self._subs[pos] = reflection_subgroup(self.datum, pos)
            self._stab[lam] = LambdaData(lam, self.point(lam), self._subs[pos])
        return self._stab[lam]


def enumerate_ufs(datum: RootDatum, n: int) -> list[CharacterPoint]:
    """All ``n``-torsion characters; there are ``n**rank`` of them."""
    return [CharacterPoint.from_numerators(k, n) for k in product(range(n), repeat=datum.rank)]
