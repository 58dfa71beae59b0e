"""The Hecke algebra ``H_n`` on the symbols ``T_w 1_lam`` and its twist by ``Theta``.

An element is a finitely supported map ``(k, w, lam) -> LaurentPoly`` standing
for ``sum T_D^k T_w 1_lam * coeff``.  ``k`` is the exponent of the formal twist
generator ``T_D`` and is stored modulo ``d``, the order of ``Theta``; plain
elements of ``H_n`` have ``k = 0`` everywhere.  ``w`` is a Weyl group index and
``lam`` an index into the context's :class:`CharacterSet`.

Multiplication rules::

    (T_w 1_lam)(T_w' 1_lam') = 0                         unless w' lam' = lam
    T_s (T_x 1_mu) = T_sx 1_mu                           if l(sx) > l(x)
                   = T_sx 1_mu + (v - v^-1) c T_x 1_mu   otherwise, c = [s in W_{sx mu}]
    T_D h = Theta(h) T_D,   Theta(T_w 1_lam) = T_eps(w) 1_{dbar lam}
"""

from __future__ import annotations

import json
import math
import re
from typing import Iterable, Iterator, Mapping, Sequence

from heckecells.chars import CharacterPoint, CharacterSet
from heckecells.laurent import ONE, QV, ZERO, LaurentPoly, poly
from heckecells.rootsys import RootDatum, parse_permutation, perm_order

Key = tuple[int, int, int]


class ContextMismatch(ValueError):
    """Two operands live in different algebras."""


class AlgebraContext:
    """Root datum, torsion level, twist data, and the product memo tables."""

    def __init__(self, datum: RootDatum, n: int, dbar: Sequence[int] | None = None):
        self.datum = datum
        self.W = datum.W
        self.n = n
        self.chars = CharacterSet(datum, n, dbar)
        self.eps = datum.eps
        self.dbar = self.chars.dbar
        self.d = math.lcm(perm_order(self.eps), perm_order(self.dbar))
        self.rank = datum.rank
        self._prod: dict[tuple[int, int, int], tuple] = {}
        # per-context memo tables owned by higher layers (canonical basis, cosets)
        self.cache: dict = {}

    @classmethod
    def build(cls, cartan_type: str, n: int = 1, eps=None, dbar=None) -> "AlgebraContext":
        datum = RootDatum.from_type(cartan_type, eps)
        if isinstance(dbar, str):
            dbar = parse_permutation(dbar, datum.rank)
        return cls(datum, n, dbar)

    @property
    def key(self) -> tuple:
        return (self.datum.cartan, self.eps, self.n, self.dbar)

    def __eq__(self, other):
        return isinstance(other, AlgebraContext) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"AlgebraContext({self.datum.name}, n={self.n}, eps={self.eps}, dbar={self.dbar})"

    # -- index helpers -----------------------------------------------------

    @property
    def lambdas(self) -> range:
        return range(self.chars.size)

    def basis_keys(self, twist: int | None = 0) -> list[Key]:
        """All ``(k, w, lam)``; ``twist=None`` includes every twist exponent."""
        ks = range(self.d) if twist is None else [twist % self.d]
        return [(k, w, lam) for k in ks for w in self.W for lam in self.lambdas]

    def in_stab(self, i: int, lam: int) -> bool:
        return self.chars.simple_in_stabilizer(i, lam)

    def theta_key(self, key: Key, power: int = 1) -> Key:
        k, w, lam = key
        return (k, self.W.eps(w, power), self.chars.act_D(lam, power))

    # -- the product on H_n --------------------------------------------------

    def _left_simple(self, i: int, terms: dict[int, LaurentPoly], mu: int) -> dict[int, LaurentPoly]:
        """``T_{s_i}`` times ``sum_x terms[x] T_x 1_mu``."""
        W = self.W
        out: dict[int, LaurentPoly] = {}
        for x, c in terms.items():
            sx = W.lmul[i][x]
            out[sx] = out.get(sx, ZERO) + c
            if W.length(sx) < W.length(x) and self.in_stab(i, self.chars.act(sx, mu)):
                out[x] = out.get(x, ZERO) + QV * c
        return {x: c for x, c in out.items() if c}

    def product_TT(self, x: int, y: int, mu: int) -> tuple[tuple[int, LaurentPoly], ...]:
        """``T_x T_y 1_mu`` as ``((w, coeff), ...)`` (all terms carry ``1_mu``)."""
        key = (x, y, mu)
        hit = self._prod.get(key)
        if hit is not None:
            return hit
        W = self.W
        if W.length(x) == 0:
            res = ((y, ONE),)
        else:
            i = W.word(x)[0]
            rest = self.product_TT(W.lmul[i][x], y, mu)
            res = tuple(sorted(self._left_simple(i, dict(rest), mu).items()))
        self._prod[key] = res
        return res


class HeckeElt:
    """Immutable element of the (twisted) Hecke algebra; see the module docstring."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: AlgebraContext, terms: Mapping[Key, LaurentPoly] | None = None):
        self.ctx = ctx
        clean: dict[Key, LaurentPoly] = {}
        if terms:
            d = ctx.d
            for (k, w, lam), c in terms.items():
                c = poly(c)
                if c:
                    key = (k % d, w, lam)
                    clean[key] = clean.get(key, ZERO) + c
                    if not clean[key]:
                        del clean[key]
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, ctx, terms: dict) -> "HeckeElt":
        h = object.__new__(cls)
        h.ctx = ctx
        h.terms = terms
        h._hash = None
        return h

    # -- container protocol ---------------------------------------------

    def __iter__(self) -> Iterator[tuple[Key, LaurentPoly]]:
        return iter(sorted(self.terms.items(), key=lambda kv: self._order(kv[0])))

    def _order(self, key: Key):
        k, w, lam = key
        return (k, self.ctx.W.length(w), w, lam)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, w: int, lam: int, k: int = 0) -> LaurentPoly:
        return self.terms.get((k % self.ctx.d, w, lam), ZERO)

    def support(self) -> set[Key]:
        return set(self.terms)

    def is_plain(self) -> bool:
        """True iff every term has twist exponent 0 (an element of ``H_n``)."""
        return all(k == 0 for k, _, _ in self.terms)

    # -- linear structure ----------------------------------------------

    def _check(self, other: "HeckeElt") -> None:
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")

    def __add__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            t = out.get(key, ZERO) + c
            if t:
                out[key] = t
            else:
                out.pop(key, None)
        return HeckeElt._wrap(self.ctx, out)

    def __neg__(self):
        return HeckeElt._wrap(self.ctx, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "HeckeElt":
        c = poly(c)
        if not c:
            return HeckeElt._wrap(self.ctx, {})
        return HeckeElt._wrap(self.ctx, {key: x * c for key, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- maps ------------------------------------------------------------

    def map_keys(self, f) -> "HeckeElt":
        """Apply a bijection on basis keys; coefficients unchanged."""
        return HeckeElt(self.ctx, {f(key): c for key, c in self.terms.items()})

    def filter(self, pred) -> "HeckeElt":
        return HeckeElt._wrap(self.ctx, {key: c for key, c in self.terms.items() if pred(key)})

    def bar_coeffs(self) -> "HeckeElt":
        """Apply ``v -> v^-1`` to every coefficient (not the bar involution of H)."""
        return HeckeElt._wrap(self.ctx, {key: c.bar() for key, c in self.terms.items()})

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"HeckeElt({render(self)!r})"


# -- constructors ------------------------------------------------------------

def zero(ctx: AlgebraContext) -> HeckeElt:
    return HeckeElt._wrap(ctx, {})


def basis(ctx: AlgebraContext, w: int, lam: int, k: int = 0, coeff=ONE) -> HeckeElt:
    """The single term ``T_D^k T_w 1_lam`` times ``coeff``."""
    return HeckeElt(ctx, {(k, w, lam): coeff})


def idempotent(ctx: AlgebraContext, lam: int) -> HeckeElt:
    return basis(ctx, 0, lam)


def unit(ctx: AlgebraContext) -> HeckeElt:
    """``sum_lam 1_lam``, the unit of ``H_n``."""
    return HeckeElt._wrap(ctx, {(0, 0, lam): ONE for lam in ctx.lambdas})


def T(ctx: AlgebraContext, w: int) -> HeckeElt:
    """``T_w = sum_lam T_w 1_lam``."""
    return HeckeElt._wrap(ctx, {(0, w, lam): ONE for lam in ctx.lambdas})


def twist_generator(ctx: AlgebraContext, power: int = 1) -> HeckeElt:
    """``T_D^power = sum_lam T_D^power 1_lam``."""
    return HeckeElt(ctx, {(power, 0, lam): ONE for lam in ctx.lambdas})


def from_word(ctx: AlgebraContext, word: Iterable[int]) -> HeckeElt:
    """Product ``T_{s_i1} ... T_{s_ik}`` of generators (0-based indices)."""
    out = unit(ctx)
    for i in word:
        out = out * T(ctx, ctx.W.simple(i))
    return out


# -- products ----------------------------------------------------------------

def mul(h: HeckeElt, g: HeckeElt) -> HeckeElt:
    """Product in the crossed product; ``(k,a)(k',b) = (k+k', Theta^{-k'}(a) b)``."""
    h._check(g)
    ctx = h.ctx
    W, chars, d = ctx.W, ctx.chars, ctx.d
    out: dict[Key, LaurentPoly] = {}
    # group the right factor by its twist and the idempotent it accepts on the left
    right: dict[tuple[int, int], list] = {}
    for (k2, y, nu), c2 in g.terms.items():
        right.setdefault((k2, chars.act(y, nu)), []).append((y, nu, c2))
    twists = sorted({k for k, _ in right})
    for (k1, x, mu), c1 in h.terms.items():
        for k2 in twists:
            if k2:
                x2, mu2 = W.eps(x, -k2), chars.act_D(mu, -k2)
            else:
                x2, mu2 = x, mu
            for y, nu, c2 in right.get((k2, mu2), ()):
                c = c1 * c2
                k = (k1 + k2) % d
                for w, p in ctx.product_TT(x2, y, nu):
                    key = (k, w, nu)
                    t = out.get(key, ZERO) + p * c
                    if t:
                        out[key] = t
                    else:
                        out.pop(key, None)
    return HeckeElt._wrap(ctx, out)


def product(*factors: HeckeElt) -> HeckeElt:
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


def theta_twist(h: HeckeElt, power: int = 1) -> HeckeElt:
    """``Theta^power``: ``T_w 1_lam -> T_eps(w) 1_{dbar lam}``; twist exponents kept."""
    ctx = h.ctx
    return h.map_keys(lambda key: ctx.theta_key(key, power))


def invert_simple(ctx: AlgebraContext, i: int) -> HeckeElt:
    """``T_s^-1 = T_s - (v - v^-1) sum_{mu: s in W_mu} 1_mu``."""
    s = ctx.W.simple(i)
    terms = {(0, s, lam): ONE for lam in ctx.lambdas}
    for lam in ctx.lambdas:
        if ctx.in_stab(i, lam):
            terms[(0, 0, lam)] = -QV
    return HeckeElt(ctx, terms)


def invert_basis(ctx: AlgebraContext, w: int) -> HeckeElt:
    """``T_w^-1`` for ``T_w = sum_lam T_w 1_lam``, along a reduced word."""
    out = unit(ctx)
    for i in reversed(ctx.W.word(w)):
        out = out * invert_simple(ctx, i)
    return out


def restrict_HJ(h: HeckeElt, J: Iterable[int]) -> HeckeElt:
    """Drop the terms with ``w`` outside the parabolic subgroup ``W_J``."""
    WJ = h.ctx.W.parabolic(J)
    return h.filter(lambda key: key[1] in WJ)


# -- text and JSON ---------------------------------------------------------

def _render_key(ctx: AlgebraContext, key: Key) -> str:
    k, w, lam = key
    word = " ".join(f"s{i + 1}" for i in ctx.W.word(w))
    head = f"D^{k} " if k else ""
    return f"{head}T[{word}] 1[{ctx.chars.render(lam)}]"


def render(h: HeckeElt) -> str:
    """``"T[s1 s2] 1[(1/3,0)] * (v - v^-1) + ..."``; coefficient 1 is omitted."""
    if not h.terms:
        return "0"
    parts = []
    for key, c in h:
        s = _render_key(h.ctx, key)
        parts.append(s if c == ONE else f"{s} * ({c})")
    return " + ".join(parts)


_TERM_RE = re.compile(
    r"\s*(?:D\^(\d+)\s+)?T\[([^\]]*)\]\s*1\[\(([^)]*)\)\](?:\s*\*\s*\(([^()]*)\))?\s*")


def parse(ctx: AlgebraContext, text: str) -> HeckeElt:
    """Inverse of :func:`render`."""
    if text.strip() == "0":
        return zero(ctx)
    terms: dict[Key, LaurentPoly] = {}
    pos = 0
    while True:
        m = _TERM_RE.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse Hecke element at {text[pos:]!r}")
        k, word, lam, c = m.groups()
        w = ctx.W.from_word(_parse_word(word))
        key = (int(k or 0), w, ctx.chars.lookup(CharacterPoint.parse(lam)))
        terms[key] = terms.get(key, ZERO) + (poly(c) if c else ONE)
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "+":
            raise ValueError(f"expected '+' at {text[pos:]!r}")
        pos += 1
    return HeckeElt(ctx, terms)


def _parse_word(word: str) -> list[int]:
    out = []
    for tok in word.replace(",", " ").split():
        if not tok.startswith("s"):
            raise ValueError(f"bad generator {tok!r}")
        out.append(int(tok[1:]) - 1)
    return out


def to_json(h: HeckeElt) -> list[dict]:
    """``[{k, word, lambda, poly}, ...]`` with 1-based generator indices."""
    ctx = h.ctx
    return [
        {"k": k, "word": [i + 1 for i in ctx.W.word(w)],
         "lambda": ctx.chars.point(lam).to_json(), "poly": str(c)}
        for (k, w, lam), c in h
    ]


def from_json(ctx: AlgebraContext, data: str | list) -> HeckeElt:
    if isinstance(data, str):
        data = json.loads(data)
    terms = {}
    for item in data:
        w = ctx.W.from_word(i - 1 for i in item["word"])
        lam = ctx.chars.lookup(CharacterPoint.parse(item["lambda"]))
        terms[(item.get("k", 0), w, lam)] = poly(item["poly"])
    return HeckeElt(ctx, terms)
