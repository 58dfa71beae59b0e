"""The involution ``theta``, the alternating operator ``delta``, twisted commutators, facets.

``theta`` is the algebra map with ``theta(1_lam) = 1_lam``,
``theta(T_w) = (-1)^{l(w)} T_{w^-1}^-1`` and ``theta(T_D) = (-1)^{|I| - |I_eps|} T_D``.

``delta = sum_{J: eps(J) = J} (-1)^{|J_eps|} delta_J`` with
``delta_J(y) = rho_J(sum_{u in W^J} T_{u^-1} y T_{eps(u)})``, where ``|J_eps|`` is
the number of eps-orbits on ``J``.

For ``y`` in ``H_{n,D}`` the difference ``delta(y) - theta(y)`` is expected to
lie in the span (over the fraction field) of the twisted commutators
``y y' - y' Theta(y)`` and ``z - Theta(z)``; :func:`verify_duality` decides this
exactly by fraction-free elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import sympy

from heckecells.grothendieck import HD_keys, NotInHD, require_HD, rho_J
from heckecells.hecke import AlgebraContext, HeckeElt, T, basis, invert_basis, theta_twist
from heckecells.laurent import FractionFreeEchelon
from heckecells.rootsys import min_parabolic_reps, perm_sign


class NotEpsStable(ValueError):
    """``delta_J`` needs ``eps(J) = J``."""


def _inv_cache(ctx: AlgebraContext) -> dict:
    return ctx.cache.setdefault("Tinv", {})


def T_inverse(ctx: AlgebraContext, w: int) -> HeckeElt:
    memo = _inv_cache(ctx)
    if w not in memo:
        memo[w] = invert_basis(ctx, w)
    return memo[w]


def twist_sign(ctx: AlgebraContext) -> int:
    """``(-1)^{|I| - |I_eps|}``, the sign of eps as a permutation of ``I``."""
    return perm_sign(ctx.eps)


def theta(h: HeckeElt) -> HeckeElt:
    ctx = h.ctx
    W = ctx.W
    sign = twist_sign(ctx)
    out = HeckeElt(ctx)
    for (k, w, lam), c in h.terms.items():
        s = (-1) ** W.length(w) * sign ** k
        piece = T_inverse(ctx, W.inverse(w)).filter(lambda key, lam=lam: key[2] == lam)
        out = out + piece.map_keys(lambda key, k=k: (k, key[1], key[2])).scale(c * s)
    return out


def eps_stable_subsets(ctx: AlgebraContext) -> list[tuple[int, ...]]:
    r = ctx.rank
    return [J for m in range(r + 1) for J in combinations(range(r), m) if ctx.datum.eps_stable(J)]


def delta_J(y: HeckeElt, J: Iterable[int]) -> HeckeElt:
    ctx = y.ctx
    J = tuple(sorted(set(J)))
    if not ctx.datum.eps_stable(J):
        raise NotEpsStable(f"J={[j + 1 for j in J]} is not eps-stable")
    require_HD(y)
    W = ctx.W
    total = HeckeElt(ctx)
    for u in min_parabolic_reps(ctx.datum, J):
        total = total + T(ctx, W.inverse(u)) * y * T(ctx, W.eps(u))
    try:
        return rho_J(total, J)
    except NotInHD as exc:  # the sum should always land back in H_n,D
        raise NotInHD(f"delta_J sum left H_n,D for J={J}: {exc}") from exc


def delta(y: HeckeElt) -> HeckeElt:
    require_HD(y)
    ctx = y.ctx
    out = HeckeElt(ctx)
    for J in eps_stable_subsets(ctx):
        sign = (-1) ** ctx.datum.eps_orbits(J)
        out = out + delta_J(y, J).scale(sign)
    return out


# -- twisted commutators -----------------------------------------------------

def _vec(h: HeckeElt) -> dict:
    return dict(h.terms)


@dataclass
class CommutatorSpace:
    """Span of ``{y y' - y' Theta(y)} + {z - Theta(z)}`` over basis ``y, y', z`` of ``H_n``."""

    ctx: AlgebraContext
    echelon: FractionFreeEchelon = field(default_factory=FractionFreeEchelon)
    generators: int = 0

    @classmethod
    def build(cls, ctx: AlgebraContext) -> "CommutatorSpace":
        space = cls(ctx)
        keys = ctx.basis_keys(0)
        elems = [basis(ctx, w, lam) for _, w, lam in keys]
        thetas = [theta_twist(e) for e in elems]
        for z, tz in zip(elems, thetas):
            space.add(z - tz)
        for y, ty in zip(elems, thetas):
            for yp in elems:
                space.add(y * yp - yp * ty)
        return space

    def add(self, h: HeckeElt) -> None:
        self.generators += 1
        if h:
            self.echelon.insert(_vec(h))

    @property
    def dimension(self) -> int:
        return self.echelon.rank

    def contains(self, h: HeckeElt) -> bool:
        return self.echelon.contains(_vec(h))

    def residual(self, h: HeckeElt) -> dict:
        return self.echelon.reduce(_vec(h))


def commutator_space(ctx: AlgebraContext) -> CommutatorSpace:
    memo = ctx.cache
    if "commutators" not in memo:
        memo["commutators"] = CommutatorSpace.build(ctx)
    return memo["commutators"]


def verify_duality(ctx: AlgebraContext) -> list[dict]:
    """For each basis ``y`` of ``H_{n,D}``: is ``delta(y) - theta(y)`` a twisted commutator?

    Each row has ``element``, ``exact`` (difference is zero), ``residual_rank``
    (0 iff in the span) and ``pass``.
    """
    space = None
    rows = []
    for key in HD_keys(ctx):
        y = HeckeElt(ctx, {key: 1})
        diff = delta(y) - theta(y)
        if not diff:
            rank = 0
        else:
            space = space or commutator_space(ctx)
            rank = 0 if space.contains(diff) else 1
        rows.append({"element": str(y), "exact": not diff, "residual_rank": rank,
                     "pass": rank == 0, "difference": str(diff)})
    return rows


# -- facets ------------------------------------------------------------------

class FacetComplex:
    """Facets of the coroot arrangement: type ``J`` facets are ``u F_J`` for ``u`` in ``W^J``.

    Vectors are in simple-coroot coordinates; ``[F_J]`` is the subspace on which
    the roots ``alpha_j`` (``j`` in ``J``) vanish.
    """

    def __init__(self, ctx: AlgebraContext):
        self.ctx = ctx
        self.datum = ctx.datum
        self.W = ctx.W
        r = ctx.rank
        self.types = [J for m in range(r + 1) for J in combinations(range(r), m)]
        self.reps = {J: min_parabolic_reps(self.datum, J) for J in self.types}
        self._span = {J: self._span_basis(J) for J in self.types}

    def dim(self, J) -> int:
        return self.ctx.rank - len(J)

    def facets(self):
        for J in self.types:
            for u in self.reps[J]:
                yield J, u

    def _span_basis(self, J) -> sympy.Matrix:
        a = self.datum.cartan
        r = self.ctx.rank
        if not J:
            return sympy.eye(r)
        rows = sympy.Matrix([[a[i][j] for i in range(r)] for j in J])
        null = rows.nullspace()
        return sympy.Matrix.hstack(*null) if null else sympy.zeros(r, 0)

    def simple_matrix(self, i: int) -> sympy.Matrix:
        """``s_i`` on coroots: ``y -> y - (sum_j y_j a[j][i]) alpha_i^vee``."""
        r, a = self.ctx.rank, self.datum.cartan
        M = sympy.eye(r)
        for j in range(r):
            M[i, j] -= a[j][i]
        return M

    def matrix(self, x: int, k: int = 0) -> sympy.Matrix:
        """The linear map of ``g = x eps^k`` on the coroot space."""
        r = self.ctx.rank
        M = sympy.eye(r)
        for i in self.W.word(x):
            M = M * self.simple_matrix(i)
        P = sympy.zeros(r, r)
        e = list(range(r))
        for _ in range(k % self.datum.eps_order):
            e = [self.datum.eps[i] for i in e]
        for i in range(r):
            P[e[i], i] = 1
        return M * P

    def fixes(self, x: int, k: int, J, u: int) -> bool:
        """Does ``x eps^k`` map the facet ``u F_J`` to itself?"""
        W = self.W
        e = self.datum.eps
        Jk = tuple(J)
        for _ in range(k % self.datum.eps_order):
            Jk = tuple(e[j] for j in Jk)
        if set(Jk) != set(J):
            return False
        z = W.mul(W.inverse(u), W.mul(x, W.eps(u, k)))
        return z in W.parabolic(J)

    def facet_det(self, g: sympy.Matrix, J, u: int) -> int:
        """``det`` of ``g`` restricted to ``[u F_J]`` (assumed ``g``-stable)."""
        if not self.dim(J):
            return 1
        B = self.matrix(u) * self._span[J]
        C = (B.T * B).inv() * B.T * g * B
        assert g * B == B * C, "facet span is not g-stable"
        return int(C.det())

    def facet_det_shortcut(self, k: int, J) -> int:
        """Sign of ``eps^k`` on ``I - J`` (fundamental coweights basis)."""
        e = list(range(self.ctx.rank))
        for _ in range(k % self.datum.eps_order):
            e = [self.datum.eps[i] for i in e]
        rest = [i for i in range(self.ctx.rank) if i not in J]
        return perm_sign(e, rest)


def facet_identity_check(ctx: AlgebraContext) -> list[dict]:
    """Trace of each ``g`` in ``W x <eps>`` on both sides of the facet identity.

    ``lhs = det(g) + sum_{F: r_F = |I|+1 mod 2} tr_F(g)``,
    ``rhs = sum_{F: r_F = |I| mod 2} tr_F(g)`` with ``tr_F(g) = det(g | [F])`` for
    facets fixed by ``g`` and 0 otherwise.
    """
    fc = FacetComplex(ctx)
    r = ctx.rank
    rows = []
    for k in range(ctx.datum.eps_order):
        for x in ctx.W:
            g = fc.matrix(x, k)
            lhs = int(g.det())
            rhs = 0
            shortcut_ok = True
            for J, u in fc.facets():
                if not fc.fixes(x, k, J, u):
                    continue
                t = fc.facet_det(g, J, u)
                shortcut_ok &= t == fc.facet_det_shortcut(k, J)
                if (r - len(J)) % 2 == (r + 1) % 2:
                    lhs += t
                else:
                    rhs += t
            name = ctx.W.render(x) + (f"*eps^{k}" if k else "")
            rows.append({"element": name, "lhs_trace": lhs, "rhs_trace": rhs,
                         "pass": lhs == rhs, "shortcut_agrees": shortcut_ok})
    return rows
