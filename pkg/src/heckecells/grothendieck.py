"""The Grothendieck-group side: the bases ``[w;lam]'`` and ``[w;lam]``, ``omega``, convolution.

``omega([w;lam]') = v^{l(w)} T_w 1_lam`` identifies the two sides; the
convolution satisfies ``omega(x * x') = (v^2 - 1)^r omega(x) omega(x')``.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from heckecells.chars import CharacterPoint
from heckecells.hecke import AlgebraContext, HeckeElt, Key
from heckecells.klcells import n_coeffs
from heckecells.laurent import ONE, ZERO, LaurentPoly, poly


class NotInHD(ValueError):
    """An element was required to lie in ``H_{n,D}``."""


def default_d0(ctx: AlgebraContext) -> int:
    """``D0 = 2r + |R+|``, the constant in ``d_w = l(w) + D0``."""
    return 2 * ctx.rank + ctx.datum.npos


class FKElt:
    """Element of the Grothendieck group in the ``[w;lam]'`` basis."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: AlgebraContext, coords: Mapping[tuple[int, int], LaurentPoly] | None = None):
        self.ctx = ctx
        self.coords = {k: poly(c) for k, c in (coords or {}).items() if poly(c)}

    def __add__(self, other: "FKElt") -> "FKElt":
        out = dict(self.coords)
        for k, c in other.coords.items():
            out[k] = out.get(k, ZERO) + c
        return FKElt(self.ctx, out)

    def __sub__(self, other: "FKElt") -> "FKElt":
        return self + other.scale(-1)

    def scale(self, c) -> "FKElt":
        c = poly(c)
        return FKElt(self.ctx, {k: x * c for k, x in self.coords.items()})

    def __eq__(self, other):
        return isinstance(other, FKElt) and self.ctx == other.ctx and self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __repr__(self):
        W, chars = self.ctx.W, self.ctx.chars
        body = " + ".join(f"[{W.render(w)};{chars.render(lam)}]' * ({c})"
                          for (w, lam), c in sorted(self.coords.items()))
        return f"FKElt({body or '0'})"

    def to_json(self, d0: int | None = None) -> dict:
        W, chars = self.ctx.W, self.ctx.chars
        return {
            "basis": "prime",
            "d0": default_d0(self.ctx) if d0 is None else d0,
            "terms": [{"word": [i + 1 for i in W.word(w)], "lambda": chars.point(lam).to_json(), "poly": str(c)}
                      for (w, lam), c in sorted(self.coords.items(), key=lambda kv: (W.length(kv[0][0]),) + kv[0])],
        }

    @classmethod
    def from_json(cls, ctx: AlgebraContext, data: dict) -> "FKElt":
        coords = {}
        for t in data["terms"]:
            w = ctx.W.from_word(i - 1 for i in t["word"])
            coords[(w, ctx.chars.lookup(CharacterPoint.parse(t["lambda"])))] = poly(t["poly"])
        return cls(ctx, coords)


def prime_basis(ctx: AlgebraContext, w: int, lam: int) -> FKElt:
    """``[w;lam]'``."""
    return FKElt(ctx, {(w, lam): ONE})


def omega(x: FKElt) -> HeckeElt:
    W = x.ctx.W
    return HeckeElt(x.ctx, {(0, w, lam): c.shift(W.length(w)) for (w, lam), c in x.coords.items()})


def omega_inv(h: HeckeElt) -> FKElt:
    if not h.is_plain():
        raise ValueError("omega is defined on H_n, not on twisted elements")
    W = h.ctx.W
    return FKElt(h.ctx, {(w, lam): c.shift(-W.length(w)) for (_, w, lam), c in h.terms.items()})


def star(x: FKElt, xp: FKElt) -> FKElt:
    """Convolution ``x * x' = omega^-1((v^2 - 1)^r omega(x) omega(x'))``."""
    scale = LaurentPoly({2: 1, 0: -1}) ** x.ctx.rank
    return omega_inv((omega(x) * omega(xp)).scale(scale))


def sheaf_class(ctx: AlgebraContext, w: int, lam: int, d0: int | None = None) -> FKElt:
    """``[w;lam] = (-v)^{-d_w} sum_{w',i} N_{i,w',w,lam} v^i [w';lam]'``, ``d_w = l(w) + D0``."""
    dw = ctx.W.length(w) + (default_d0(ctx) if d0 is None else d0)
    sign = -1 if dw % 2 else 1
    coords = {}
    for wp in ctx.W:
        N = n_coeffs(ctx, wp, w, lam)
        if N:
            coords[(wp, lam)] = LaurentPoly(N).shift(-dw) * sign
    return FKElt(ctx, coords)


# -- the split H = H_D + H'_D and the projections ---------------------------

def in_HD_key(ctx: AlgebraContext, key: Key) -> bool:
    """``T_w 1_mu`` lies in ``H_D`` iff ``dbar(w mu) = mu``."""
    _, w, mu = key
    return ctx.chars.act_D(ctx.chars.act(w, mu)) == mu


def HD_keys(ctx: AlgebraContext) -> list[Key]:
    """Basis of ``H_{n,D}``."""
    return [key for key in ctx.basis_keys(0) if in_HD_key(ctx, key)]


def split_HD(h: HeckeElt) -> tuple[HeckeElt, HeckeElt]:
    ctx = h.ctx
    return (h.filter(lambda key: in_HD_key(ctx, key)),
            h.filter(lambda key: not in_HD_key(ctx, key)))


def in_HD(h: HeckeElt) -> bool:
    return h.is_plain() and all(in_HD_key(h.ctx, key) for key in h.terms)


def require_HD(h: HeckeElt) -> None:
    if not in_HD(h):
        raise NotInHD(f"{h} is not in H_n,D")


def tau_tilde(h: HeckeElt) -> FKElt:
    """``omega^-1`` of the ``H_D`` component."""
    return omega_inv(split_HD(h)[0])


def rho_J(h: HeckeElt, J: Iterable[int]) -> HeckeElt:
    """Keep the terms with ``w`` in ``W_J``; ``h`` must lie in ``H_{n,D}``."""
    require_HD(h)
    WJ = h.ctx.W.parabolic(J)
    return h.filter(lambda key: key[1] in WJ)


def p_J(h: HeckeElt, J: Iterable[int]) -> HeckeElt:
    """The projection ``H_n -> H_{J,n}`` onto terms with ``w`` in ``W_J``."""
    WJ = h.ctx.W.parabolic(J)
    return h.filter(lambda key: key[1] in WJ)
