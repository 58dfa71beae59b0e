"""KL polynomials of the stabilizers, the canonical basis, and cells.

``p^lam_{z', z}`` lives in the Coxeter system ``(W_lam, S_lam)`` and is
normalized by ``c_z = sum p_{z',z} T_z'`` with ``c_s = T_s + v^-1``,
``p_{z,z} = 1`` and ``p_{z',z}`` in ``v^-1 Z[v^-1]`` for ``z' < z``.

The canonical basis of ``H_n`` places these polynomials along cosets::

    c_{w,lam} = sum_{z' in W_lam} p^lam_{z',z} T_{w1 z'} 1_lam,   w = w1 z,

with ``w1`` the minimal element of ``w W_lam``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from heckecells.chars import LambdaData, ReflectionSubgroup
from heckecells.hecke import AlgebraContext, HeckeElt, Key, invert_basis
from heckecells.laurent import ONE, QV, VINV, ZERO, LaurentPoly
from heckecells.rootsys import min_subgroup_coset


class NotInSubgroup(ValueError):
    """An element passed to a KL query is not in ``W_lam``."""


# -- KL polynomials inside (W_lam, S_lam) ---------------------------------

class KLTable:
    """All ``p_{z',z}`` for one reflection subgroup, computed by the mu-recursion."""

    def __init__(self, sub: ReflectionSubgroup):
        self.sub = sub
        self.W = sub.datum.W
        self.p: dict[int, dict[int, LaurentPoly]] = {}
        for z in sub.members:
            self.p[z] = self._canonical(z)

    def _left_T(self, s: int, elt: dict[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        """``T_s`` times ``elt`` in the Hecke algebra of ``(W_lam, S_lam)``."""
        W, llen = self.W, self.sub.llen
        out: dict[int, LaurentPoly] = {}
        for z, c in elt.items():
            sz = W.mul(s, z)
            out[sz] = out.get(sz, ZERO) + c
            if llen[sz] < llen[z]:
                out[z] = out.get(z, ZERO) + QV * c
        return {z: c for z, c in out.items() if c}

    def _canonical(self, z: int) -> dict[int, LaurentPoly]:
        sub = self.sub
        if sub.llen[z] == 0:
            return {z: ONE}
        s = sub.left_descent(z)
        y = self.W.mul(s, z)
        cy = self.p[y]
        # C_s C_y = T_s C_y + v^-1 C_y
        out = self._left_T(s, cy)
        for x, c in cy.items():
            out[x] = out.get(x, ZERO) + VINV * c
        ly = sub.llen[y]
        for x, cx in list(self.p.items()):
            if x == y or sub.llen[x] >= ly:
                continue
            mu = cy.get(x, ZERO).coeff(-1)
            if mu and sub.llen[self.W.mul(s, x)] < sub.llen[x]:
                for u, c in cx.items():
                    out[u] = out.get(u, ZERO) - c * mu
        return {u: c for u, c in out.items() if c}

    def __call__(self, zp: int, z: int) -> LaurentPoly:
        if zp not in self.sub or z not in self.sub:
            raise NotInSubgroup(f"{self.W.render(zp)} or {self.W.render(z)} not in W_lambda")
        return self.p[z].get(zp, ZERO)

    def mu(self, zp: int, z: int) -> int:
        return self(zp, z).coeff(-1)


_TABLES: dict[tuple, KLTable] = {}


def kl_table(sub: ReflectionSubgroup) -> KLTable:
    key = (sub.datum.cartan, sub.pos_roots)
    if key not in _TABLES:
        _TABLES[key] = KLTable(sub)
    return _TABLES[key]


def kl_poly(ldata: LambdaData | ReflectionSubgroup, zp: int, z: int) -> LaurentPoly:
    """``p^lam_{z', z}`` (W indices of elements of ``W_lam``)."""
    sub = ldata.sub if isinstance(ldata, LambdaData) else ldata
    return kl_table(sub)(zp, z)


# -- canonical basis of H_n --------------------------------------------------

def coset_split(ctx: AlgebraContext, w: int, lam: int) -> tuple[int, int]:
    """``(w1, z)`` with ``w = w1 z``, ``z`` in ``W_lam`` and ``w1`` minimal in ``w W_lam``."""
    memo = ctx.cache.setdefault("coset", {})
    key = (w, lam)
    if key not in memo:
        ld = ctx.chars.stabilizer_data(lam)
        memo[key] = min_subgroup_coset(ctx.datum, w, ld.members, ld.pos_roots)
    return memo[key]


def _c_terms(ctx: AlgebraContext, w: int, lam: int) -> dict[int, LaurentPoly]:
    memo = ctx.cache.setdefault("cbasis", {})
    key = (w, lam)
    if key not in memo:
        w1, z = coset_split(ctx, w, lam)
        table = kl_table(ctx.chars.stabilizer_data(lam).sub)
        W = ctx.W
        memo[key] = {W.mul(w1, zp): c for zp, c in table.p[z].items()}
    return memo[key]


def c_basis(ctx: AlgebraContext, w: int, lam: int, k: int = 0) -> HeckeElt:
    """``T_D^k c_{w,lam}``."""
    return HeckeElt(ctx, {(k, wp, lam): c for wp, c in _c_terms(ctx, w, lam).items()})


def pi_coeff(ctx: AlgebraContext, wp: int, w: int, lam: int) -> LaurentPoly:
    """The coefficient of ``T_w' 1_lam`` in ``c_{w,lam}``."""
    return _c_terms(ctx, w, lam).get(wp, ZERO)


def n_coeffs(ctx: AlgebraContext, wp: int, w: int, lam: int) -> dict[int, int]:
    """``{i: N_i}`` with ``pi_{w',w,lam} = v^{l(w')-l(w)} sum_i N_i v^i``."""
    if coset_split(ctx, wp, lam)[0] != coset_split(ctx, w, lam)[0]:
        return {}
    p = pi_coeff(ctx, wp, w, lam)
    return p.shift(ctx.W.length(w) - ctx.W.length(wp)).coeffs


def to_c(h: HeckeElt) -> dict[Key, LaurentPoly]:
    """Coordinates of ``h`` in the basis ``T_D^k c_{w,lam}`` (unitriangular solve)."""
    ctx = h.ctx
    blocks: dict[tuple[int, int, int], dict[int, LaurentPoly]] = {}
    for (k, w, lam), c in h.terms.items():
        w1, _ = coset_split(ctx, w, lam)
        blocks.setdefault((k, lam, w1), {})[w] = c
    out: dict[Key, LaurentPoly] = {}
    for (k, lam, w1), rem in blocks.items():
        llen = ctx.chars.stabilizer_data(lam).sub.llen

        def height(x):
            return llen[coset_split(ctx, x, lam)[1]]

        while rem:
            top = max(rem, key=lambda x: (height(x), x))
            a = rem.pop(top)
            out[(k, top, lam)] = a
            for x, c in _c_terms(ctx, top, lam).items():
                if x == top:
                    continue
                t = rem.get(x, ZERO) - a * c
                if t:
                    rem[x] = t
                else:
                    rem.pop(x, None)
    return out


def from_c(ctx: AlgebraContext, coords: dict[Key, LaurentPoly]) -> HeckeElt:
    out: dict[Key, LaurentPoly] = {}
    for (k, w, lam), a in coords.items():
        for x, c in _c_terms(ctx, w, lam).items():
            key = (k, x, lam)
            out[key] = out.get(key, ZERO) + a * c
    return HeckeElt(ctx, out)


def gamma(ctx: AlgebraContext, w: int, lam: int, wp: int, lamp: int) -> dict[tuple[int, int], LaurentPoly]:
    """Structure constants: ``c_{w,lam} c_{w',lam'} = sum gamma[(y,nu)] c_{y,nu}``."""
    prod = c_basis(ctx, w, lam) * c_basis(ctx, wp, lamp)
    return {(y, nu): c for (_, y, nu), c in to_c(prod).items()}


def bar_involution(h: HeckeElt) -> HeckeElt:
    """``v -> v^-1`` on coefficients and ``T_w 1_lam -> T_{w^-1}^-1 1_lam`` (plain part)."""
    ctx = h.ctx
    out = HeckeElt(ctx)
    inv_cache: dict[int, HeckeElt] = {}
    for (k, w, lam), c in h.terms.items():
        if k:
            raise ValueError("bar involution is only defined here on H_n")
        if w not in inv_cache:
            inv_cache[w] = invert_basis(ctx, ctx.W.inverse(w))
        out = out + inv_cache[w].filter(lambda key, lam=lam: key[2] == lam).scale(c.bar())
    return out


def bar_invariance_report(ctx: AlgebraContext) -> dict[tuple[int, int], bool]:
    """Whether each ``c_{w,lam}`` is fixed by :func:`bar_involution`; recorded, not assumed."""
    return {(w, lam): bar_involution(c_basis(ctx, w, lam)) == c_basis(ctx, w, lam)
            for w in ctx.W for lam in ctx.lambdas}


# -- preorders and cells -----------------------------------------------------

def _generators(ctx: AlgebraContext, J: Iterable[int]) -> list[HeckeElt]:
    W = ctx.W
    elems = [0] + [W.simple(j) for j in sorted(set(J))]
    return [c_basis(ctx, x, mu) for x in elems for mu in ctx.lambdas]


def preorder(ctx: AlgebraContext, J: Iterable[int], Jp: Iterable[int]) -> nx.DiGraph:
    """Digraph on ``(w, lam)`` with an edge ``x -> y`` whenever ``y`` occurs in a one-step
    product ``g c_x`` or ``c_x g'`` (``g`` in the ``J`` generators, ``g'`` in the ``J'``
    ones).  ``y <= x`` in the preorder iff ``y`` is reachable from ``x``."""
    J, Jp = tuple(sorted(set(J))), tuple(sorted(set(Jp)))
    memo = ctx.cache.setdefault("preorder", {})
    if (J, Jp) in memo:
        return memo[J, Jp]
    left, right = _generators(ctx, J), _generators(ctx, Jp)
    G = nx.DiGraph()
    for w in ctx.W:
        for lam in ctx.lambdas:
            x = (w, lam)
            G.add_edge(x, x)
            cx = c_basis(ctx, w, lam)
            for g in left:
                for (_, y, nu) in to_c(g * cx):
                    G.add_edge(x, (y, nu))
            for g in right:
                for (_, y, nu) in to_c(cx * g):
                    G.add_edge(x, (y, nu))
    memo[J, Jp] = G
    return G


def leq(ctx: AlgebraContext, J, Jp, y: tuple[int, int], x: tuple[int, int]) -> bool:
    """``y <=_{J,J'} x``."""
    return nx.has_path(preorder(ctx, J, Jp), x, y)


@dataclass(frozen=True)
class CellPartition:
    """Cells as sorted tuples of ``(w, lam)``; ``order`` holds the strict pairs
    ``(i, j)`` with cell ``i`` below cell ``j``."""

    cells: tuple[tuple[tuple[int, int], ...], ...]
    order: tuple[tuple[int, int], ...]

    def cell_of(self) -> dict[tuple[int, int], int]:
        return {x: i for i, cell in enumerate(self.cells) for x in cell}

    def as_sets(self) -> set[frozenset]:
        return {frozenset(c) for c in self.cells}

    def __len__(self):
        return len(self.cells)

    def to_json(self, ctx: AlgebraContext) -> dict:
        return {
            "cells": [[{"w": [i + 1 for i in ctx.W.word(w)], "lambda": ctx.chars.point(lam).to_json()}
                       for w, lam in cell] for cell in self.cells],
            "order": [list(p) for p in self.order],
        }


def _sort_key(ctx: AlgebraContext):
    W, nums = ctx.W, ctx.chars.nums

    def key(x):
        w, lam = x
        return (W.length(w), nums[lam], W.word(w))
    return key


def _make_partition(ctx: AlgebraContext, comps: Iterable[Iterable], below) -> CellPartition:
    """``below(a, b)`` says component ``a`` lies below component ``b``."""
    key = _sort_key(ctx)
    comps = [tuple(sorted(c, key=key)) for c in comps]
    comps.sort(key=lambda c: key(c[0]))
    order = tuple((i, j) for i in range(len(comps)) for j in range(len(comps))
                  if i != j and below(comps[i], comps[j]))
    return CellPartition(tuple(comps), order)


def two_sided_cells(ctx: AlgebraContext, J: Iterable[int], Jp: Iterable[int]) -> CellPartition:
    """Strongly connected components of the ``(J, J')`` preorder."""
    G = preorder(ctx, J, Jp)
    cond = nx.condensation(G)
    members = cond.graph["mapping"]
    closure = {c: nx.descendants(cond, c) for c in cond.nodes}

    def below(a, b):
        return members[a[0]] in closure[members[b[0]]]

    return _make_partition(ctx, nx.strongly_connected_components(G), below)


def twist_cells(ctx: AlgebraContext, part: CellPartition) -> CellPartition:
    """Image of a partition under ``(w, lam) -> (eps(w), dbar lam)``."""
    W, chars = ctx.W, ctx.chars
    image = [tuple((W.eps(w), chars.act_D(lam)) for w, lam in cell) for cell in part.cells]
    pairs = set(part.order)
    index = {frozenset(c): i for i, c in enumerate(image)}

    def below(a, b):
        return (index[frozenset(a)], index[frozenset(b)]) in pairs

    return _make_partition(ctx, image, below)


# -- export ------------------------------------------------------------------

def kl_rows(ctx: AlgebraContext, lams: Sequence[int] | None = None) -> list[tuple[str, str, str, str]]:
    """Rows ``(lambda, z', z, poly)`` for the nonzero ``p^lam_{z',z}``."""
    W = ctx.W
    rows = []
    for lam in (ctx.lambdas if lams is None else lams):
        sub = ctx.chars.stabilizer_data(lam).sub
        table = kl_table(sub)
        for z in sub.members:
            for zp in sub.members:
                p = table(zp, z)
                if p:
                    rows.append((ctx.chars.render(lam), W.render(zp), W.render(z), str(p)))
    return rows


def n_rows(ctx: AlgebraContext, lams: Sequence[int] | None = None) -> list[tuple]:
    """Rows ``(lambda, w', w, i, N)`` for the nonzero ``N_{i,w',w,lam}``."""
    W = ctx.W
    rows = []
    for lam in (ctx.lambdas if lams is None else lams):
        for w in W:
            for wp in W:
                for i, N in sorted(n_coeffs(ctx, wp, w, lam).items()):
                    rows.append((ctx.chars.render(lam), W.render(wp), W.render(w), i, N))
    return rows


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()
