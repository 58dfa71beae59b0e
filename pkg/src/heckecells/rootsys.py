"""Root data and Weyl groups of finite type.

Conventions
-----------
The Cartan matrix is ``a[i][j] = <alpha_i^vee, alpha_j>``, so the simple
reflection ``s_i`` acts on roots by ``s_i(beta) = beta - <alpha_i^vee, beta> alpha_i``
and on coroots by ``s_i(y) = y - <alpha_i, y> alpha_i^vee``.  Roots are stored
in simple-root coordinates and coroots in simple-coroot coordinates.

Weyl group elements are represented by their index in the enumeration of
``W`` sorted by (length, ShortLex-minimal reduced word).  The canonical form
behind an index is the signed permutation of the finite root set, available
as ``W.perm(w)``; the identity always has index 0.  Subsets ``J`` of ``I`` are
frozensets of 0-based generator indices.
"""

from __future__ import annotations

import re
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence


class InfiniteType(ValueError):
    """The root system or group did not close up within the configured bound."""


class CartanError(ValueError):
    """Unknown Cartan type string or invalid diagram automorphism."""


MAX_ROOTS = 400
MAX_ORDER = 5000


def _chain(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def irreducible_cartan(letter: str, n: int) -> list[list[int]]:
    letter = letter.upper()
    if letter == "A" and n >= 1:
        return _chain(n)
    if letter == "B" and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2
        return a
    if letter == "C" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2
        return a
    if letter == "D" and n >= 4:
        a = _chain(n - 1) + [[0] * (n - 1)]
        for row in a:
            row.append(0)
        a[n - 1][n - 1] = 2
        a[n - 1][n - 3] = a[n - 3][n - 1] = -1
        return a
    if letter == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    if letter == "F" and n == 4:
        a = _chain(4)
        a[2][1] = -2
        return a
    raise CartanError(f"unsupported Cartan type {letter}{n}")


_COMPONENT = re.compile(r"^([A-Ga-g])(\d+)$")


def parse_type(name: str) -> list[tuple[str, int]]:
    """``"A1xB2"`` -> ``[("A", 1), ("B", 2)]``."""
    comps = []
    for part in re.split(r"[x×*]", name.strip()):
        m = _COMPONENT.match(part.strip())
        if not m:
            raise CartanError(f"cannot parse Cartan type {name!r}")
        comps.append((m.group(1).upper(), int(m.group(2))))
    return comps


def cartan_matrix(name: str) -> list[list[int]]:
    blocks = [irreducible_cartan(l, n) for l, n in parse_type(name)]
    r = sum(len(b) for b in blocks)
    a = [[0] * r for _ in range(r)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                a[off + i][off + j] = b[i][j]
        off += k
    return a


def named_automorphism(name: str, keyword: str) -> tuple[int, ...]:
    """Resolve ``"id"``, ``"flip"`` or ``"swap"`` to a 0-based permutation of I."""
    comps = parse_type(name)
    r = sum(n for _, n in comps)
    keyword = keyword.lower()
    if keyword in ("id", "identity", "none", "split"):
        return tuple(range(r))
    if keyword in ("flip", "swap"):
        if len(comps) == 1:
            letter, n = comps[0]
            if letter == "A" and n >= 2:
                return tuple(n - 1 - i for i in range(n))
            if letter == "D" and n >= 4:
                return tuple(range(n - 2)) + (n - 1, n - 2)
            raise CartanError(f"type {name} has no diagram flip")
        if len(comps) >= 2 and comps[0] == comps[1]:
            k = comps[0][1]
            perm = list(range(r))
            perm[:k] = range(k, 2 * k)
            perm[k:2 * k] = range(k)
            return tuple(perm)
        raise CartanError(f"type {name} has no component swap")
    raise CartanError(f"unknown automorphism keyword {keyword!r}")


def parse_permutation(text: str, rank: int) -> tuple[int, ...]:
    """``"[2,1]"`` or ``"2,1"`` (1-based images) -> 0-based tuple."""
    items = [t for t in re.split(r"[\s,\[\]]+", text) if t]
    try:
        perm = tuple(int(t) - 1 for t in items)
    except ValueError:
        raise CartanError(f"cannot parse permutation {text!r}") from None
    if sorted(perm) != list(range(rank)):
        raise CartanError(f"{text!r} is not a permutation of 1..{rank}")
    return perm


def perm_order(perm: Sequence[int]) -> int:
    k, cur = 1, tuple(perm)
    ident = tuple(range(len(perm)))
    while cur != ident:
        cur = tuple(perm[x] for x in cur)
        k += 1
    return k


def perm_sign(perm: Sequence[int], support: Iterable[int] | None = None) -> int:
    """Sign of ``perm`` restricted to the invariant subset ``support`` (default: all)."""
    items = set(range(len(perm)) if support is None else support)
    sign, seen = 1, set()
    for start in items:
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class RootDatum:
    """Finite root system with simply connected lattices and a diagram automorphism.

    ``rank`` equals ``|I|`` (the torus is spanned by the coroots).  ``eps`` is a
    0-based permutation of ``I`` preserving the Cartan matrix.
    """

    def __init__(self, cartan: Sequence[Sequence[int]], eps: Sequence[int] | None = None,
                 name: str | None = None, max_roots: int = MAX_ROOTS, max_order: int = MAX_ORDER):
        self.cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        r = len(self.cartan)
        if any(len(row) != r for row in self.cartan) or any(self.cartan[i][i] != 2 for i in range(r)):
            raise CartanError("Cartan matrix must be square with 2 on the diagonal")
        self.rank = r
        self.I = tuple(range(r))
        self.name = name or f"cartan{self.cartan}"
        self.max_order = max_order
        self.eps = tuple(range(r)) if eps is None else tuple(eps)
        if sorted(self.eps) != list(range(r)):
            raise CartanError(f"eps={eps} is not a permutation of I")
        for i in range(r):
            for j in range(r):
                if self.cartan[self.eps[i]][self.eps[j]] != self.cartan[i][j]:
                    raise CartanError(f"eps={tuple(e + 1 for e in self.eps)} does not preserve the Cartan matrix")
        self._build_roots(max_roots)

    @classmethod
    def from_type(cls, name: str, eps: str | Sequence[int] | None = None, **kw) -> "RootDatum":
        a = cartan_matrix(name)
        if isinstance(eps, str):
            if re.search(r"\d", eps):
                eps = parse_permutation(eps, len(a))
            else:
                eps = named_automorphism(name, eps)
        return cls(a, eps=eps, name=name, **kw)

    # -- roots -------------------------------------------------------------

    def pair_coroot_root(self, y: Sequence[int], beta: Sequence[int]) -> int:
        """``<y, beta>`` for a coroot-lattice vector ``y`` and root-lattice vector ``beta``."""
        a = self.cartan
        return sum(y[i] * a[i][j] * beta[j] for i in range(self.rank) for j in range(self.rank) if y[i] and beta[j])

    def _build_roots(self, max_roots: int) -> None:
        r = self.rank
        a = self.cartan
        simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        found: dict[tuple, tuple] = {s: s for s in simple}  # root -> coroot
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            cb = found[beta]
            for i in range(r):
                c = sum(a[i][j] * beta[j] for j in range(r))
                if beta == simple[i]:
                    continue
                gamma = tuple(beta[j] - (c if j == i else 0) for j in range(r))
                if gamma in found:
                    continue
                if all(x <= 0 for x in gamma):
                    raise InfiniteType("reflection of a positive root left the positive cone")
                d = sum(cb[j] * a[j][i] for j in range(r))  # <alpha_i, cb>
                found[gamma] = tuple(cb[j] - (d if j == i else 0) for j in range(r))
                queue.append(gamma)
                if len(found) > max_roots:
                    raise InfiniteType(f"more than {max_roots} positive roots: not of finite type")
        pos = sorted(found, key=lambda b: (sum(b), tuple(-x for x in b)))
        self.pos_roots: tuple[tuple[int, ...], ...] = tuple(pos)
        self.npos = len(pos)
        neg = tuple(tuple(-x for x in b) for b in pos)
        self.roots = self.pos_roots + neg
        self.coroots = tuple(found[b] for b in pos) + tuple(tuple(-x for x in found[b]) for b in pos)
        self.root_index = {b: k for k, b in enumerate(self.roots)}

    def is_positive(self, k: int) -> bool:
        return k < self.npos

    def negate(self, k: int) -> int:
        return k + self.npos if k < self.npos else k - self.npos

    def reflection_perm(self, k: int) -> tuple[int, ...]:
        """Permutation of root indices induced by ``s_alpha`` for ``alpha = roots[k]``."""
        cor = self.coroots[k]
        alpha = self.roots[k]
        out = []
        for beta in self.roots:
            c = self.pair_coroot_root(cor, beta)
            out.append(self.root_index[tuple(b - c * x for b, x in zip(beta, alpha))])
        return tuple(out)

    def eps_root(self, k: int) -> int:
        beta = self.roots[k]
        img = [0] * self.rank
        for i, x in enumerate(beta):
            img[self.eps[i]] = x
        return self.root_index[tuple(img)]

    @cached_property
    def W(self) -> "WeylGroup":
        return WeylGroup(self, self.max_order)

    def eps_orbits(self, J: Iterable[int]) -> int:
        """Number of eps-orbits on an eps-stable subset ``J`` (``|J_eps|``)."""
        J = set(J)
        seen, count = set(), 0
        for j in sorted(J):
            if j in seen:
                continue
            count += 1
            x = j
            while x not in seen:
                seen.add(x)
                x = self.eps[x]
        return count

    def eps_stable(self, J: Iterable[int]) -> bool:
        J = frozenset(J)
        return frozenset(self.eps[j] for j in J) == J

    @property
    def eps_order(self) -> int:
        return perm_order(self.eps)

    def __repr__(self):
        return f"RootDatum({self.name!r}, eps={tuple(e + 1 for e in self.eps)})"


class WeylGroup:
    """The Weyl group of a :class:`RootDatum`, fully enumerated with lookup tables."""

    def __init__(self, datum: RootDatum, max_order: int = MAX_ORDER):
        self.datum = datum
        r = datum.rank
        N = datum.npos
        gens = [datum.reflection_perm(i) for i in range(r)]
        ident = tuple(range(2 * N))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[x] for x in p)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
                        if len(seen) > max_order:
                            raise InfiniteType(f"group order exceeds {max_order}")
            frontier = nxt
        length = {p: sum(1 for k in range(N) if p[k] >= N) for p in seen}

        # ShortLex-minimal reduced word: smallest left descent first
        words: dict[tuple, tuple[int, ...]] = {ident: ()}
        for p in sorted(seen, key=length.__getitem__):
            if p == ident:
                continue
            for i in range(r):
                q = tuple(gens[i][x] for x in p)  # s_i * p
                if length[q] < length[p]:
                    words[p] = (i,) + words[q]
                    break
        order = sorted(seen, key=lambda p: (length[p], words[p]))
        self._perms: tuple[tuple[int, ...], ...] = tuple(order)
        self._index = {p: k for k, p in enumerate(order)}
        self._length = tuple(length[p] for p in order)
        self._words = tuple(words[p] for p in order)
        self.order = len(order)
        self.rank = r
        ix = self._index
        self.lmul = tuple(tuple(ix[tuple(gens[i][x] for x in p)] for p in order) for i in range(r))
        self.rmul = tuple(tuple(ix[tuple(p[x] for x in gens[i])] for p in order) for i in range(r))
        inv = [0] * len(order)
        for k, p in enumerate(order):
            q = [0] * len(p)
            for a, b in enumerate(p):
                q[b] = a
            inv[k] = ix[tuple(q)]
        self._inv = tuple(inv)
        self._bruhat: dict[tuple[int, int], bool] = {}
        self._parabolic: dict[frozenset, frozenset] = {}
        self._refl: dict[int, int] = {}

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    @property
    def identity(self) -> int:
        return 0

    def simple(self, i: int) -> int:
        return self.lmul[i][0]

    def length(self, w: int) -> int:
        return self._length[w]

    def word(self, w: int) -> tuple[int, ...]:
        """ShortLex-minimal reduced word (0-based generator indices)."""
        return self._words[w]

    def perm(self, w: int) -> tuple[int, ...]:
        return self._perms[w]

    def inverse(self, w: int) -> int:
        return self._inv[w]

    def from_perm(self, p: Sequence[int]) -> int:
        return self._index[tuple(p)]

    def from_word(self, word: Iterable[int]) -> int:
        w = 0
        for i in word:
            w = self.rmul[i][w]
        return w

    def mul(self, x: int, y: int) -> int:
        px, py = self._perms[x], self._perms[y]
        return self._index[tuple(px[k] for k in py)]

    def act_root(self, w: int, k: int) -> int:
        return self._perms[w][k]

    def reflection(self, k: int) -> int:
        """Index of the reflection ``s_alpha`` for root index ``k``."""
        if k not in self._refl:
            self._refl[k] = self._index[self.datum.reflection_perm(k)]
        return self._refl[k]

    def eps(self, w: int, power: int = 1) -> int:
        e = self.datum.eps
        word = self._words[w]
        for _ in range(power % self.datum.eps_order):
            word = tuple(e[i] for i in word)
        return self.from_word(word)

    def render(self, w: int) -> str:
        word = self._words[w]
        return "1" if not word else "".join(f"s{i + 1}" for i in word)

    def longest(self) -> int:
        return self.order - 1

    # -- structure ---------------------------------------------------------

    def parabolic(self, J: Iterable[int]) -> frozenset[int]:
        """The standard parabolic subgroup ``W_J`` as a set of indices."""
        J = frozenset(J)
        if J not in self._parabolic:
            seen = {0}
            frontier = [0]
            while frontier:
                nxt = []
                for w in frontier:
                    for j in J:
                        u = self.lmul[j][w]
                        if u not in seen:
                            seen.add(u)
                            nxt.append(u)
                frontier = nxt
            self._parabolic[J] = frozenset(seen)
        return self._parabolic[J]

    def bruhat_leq(self, x: int, w: int) -> bool:
        """Bruhat order ``x <= w`` (subword property, evaluated by descent recursion)."""
        if x == w or x == 0:
            return True
        if self._length[x] >= self._length[w]:
            return False
        key = (x, w)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        s = self._words[w][0]  # left descent of w
        sw = self.lmul[s][w]
        sx = self.lmul[s][x]
        if self._length[sx] < self._length[x]:
            res = self.bruhat_leq(sx, sw)
        else:
            res = self.bruhat_leq(x, sw)
        self._bruhat[key] = res
        return res


def enumerate_W(datum: RootDatum) -> list[int]:
    """All elements of ``W``, sorted by (length, canonical form)."""
    return list(range(datum.W.order))


def mul(datum: RootDatum, w: int, w2: int) -> int:
    return datum.W.mul(w, w2)


def length_dichotomy(datum: RootDatum, w: int, alpha: int) -> bool:
    """Return ``l(w s_alpha) > l(w)``; asserts agreement with ``w(alpha) in R+``."""
    if not datum.is_positive(alpha):
        raise ValueError("alpha must be a positive root")
    W = datum.W
    longer = W.length(W.mul(w, W.reflection(alpha))) > W.length(w)
    if longer != datum.is_positive(W.act_root(w, alpha)):
        raise AssertionError(f"length dichotomy fails for w={W.render(w)}, alpha={datum.roots[alpha]}")
    return longer


def bruhat_leq(datum: RootDatum, x: int, w: int) -> bool:
    return datum.W.bruhat_leq(x, w)


def min_parabolic_reps(datum: RootDatum, J: Iterable[int]) -> list[int]:
    """Minimal-length representatives ``W^J`` of the cosets ``w W_J``."""
    W = datum.W
    J = tuple(J)
    return [w for w in W if all(W.length(W.rmul[j][w]) > W.length(w) for j in J)]


def min_subgroup_coset(datum: RootDatum, w: int, members: Iterable[int],
                       pos_roots: Iterable[int] = ()) -> tuple[int, int]:
    """Split ``w = w1 * z`` with ``z`` in the subgroup and ``w1`` minimal in ``w*sub``.

    ``members`` lists the subgroup ``W_lambda``; ``pos_roots`` its positive
    system, used to check the characterization ``w1(R_lambda+) <= R+``.
    """
    W = datum.W
    coset = [(W.length(W.mul(w, z)), W.mul(w, z)) for z in members]
    best = min(coset)[0]
    minima = [x for l, x in coset if l == best]
    if len(minima) != 1:
        raise AssertionError(f"coset of {W.render(w)} has {len(minima)} minimal elements")
    w1 = minima[0]
    if not all(datum.is_positive(W.act_root(w1, a)) for a in pos_roots):
        raise AssertionError(f"minimal element {W.render(w1)} does not map R_lambda+ into R+")
    return w1, W.mul(W.inverse(w1), w)
