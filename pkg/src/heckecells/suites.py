"""Exhaustive property suites run by ``heckecells verify``.

Each suite returns a :class:`SuiteResult`; ``counterexample`` holds the first
failure in a JSON-friendly form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from heckecells import duality, grothendieck as gk, klcells
from heckecells.hecke import AlgebraContext
from heckecells.laurent import LaurentPoly
from heckecells.rootsys import length_dichotomy

SUITES = ("duality", "facets", "positivity", "convolution", "cosets")


@dataclass
class SuiteResult:
    suite: str
    passed: bool = True
    checked: int = 0
    counterexample: dict | None = None
    rows: list = field(default_factory=list)

    def check(self, ok: bool, detail) -> None:
        self.checked += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = detail() if callable(detail) else detail

    def to_json(self) -> dict:
        out = {"suite": self.suite, "pass": self.passed, "checked": self.checked,
               "counterexample": self.counterexample}
        if self.rows:
            out["rows"] = self.rows
        return out


def _pair(ctx: AlgebraContext, w: int, lam: int) -> dict:
    return {"w": ctx.W.render(w), "lambda": ctx.chars.point(lam).to_json()}


def run_cosets(ctx: AlgebraContext) -> SuiteResult:
    """Minimal coset representatives in ``w W_lam`` and the simple-reflection dichotomy."""
    res = SuiteResult("cosets")
    W, datum = ctx.W, ctx.datum
    for w in W:
        for k in range(datum.npos):
            length_dichotomy(datum, w, k)
    for lam in ctx.lambdas:
        ld = ctx.chars.stabilizer_data(lam)
        for w in W:
            coset = [W.mul(w, z) for z in ld.members]
            lmin = min(W.length(x) for x in coset)
            minimal = [x for x in coset if W.length(x) == lmin]
            positive = [x for x in coset if all(datum.is_positive(W.act_root(x, a)) for a in ld.pos_roots)]
            res.check(len(minimal) == 1 and positive == minimal,
                      lambda: {"check": "unique minimal element", **_pair(ctx, w, lam)})
            w1 = minimal[0]
            res.check(klcells.coset_split(ctx, w, lam)[0] == w1,
                      lambda: {"check": "coset split", **_pair(ctx, w, lam)})
            if w != w1:
                continue
            for i in range(ctx.rank):
                sw = W.lmul[i][w]
                sw_min = klcells.coset_split(ctx, sw, lam)[0] == sw
                conj = W.mul(W.inverse(w), sw) in ld.sub
                res.check(sw_min or conj,
                          lambda: {"check": "dichotomy", "s": i + 1, **_pair(ctx, w, lam)})
    return res


def run_positivity(ctx: AlgebraContext) -> SuiteResult:
    """Nonnegative structure constants, even N coefficients, block support."""
    res = SuiteResult("positivity")
    W = ctx.W
    keys = [(w, lam) for w in W for lam in ctx.lambdas]
    for w, lam in keys:
        w1, _ = klcells.coset_split(ctx, w, lam)
        c = klcells.c_basis(ctx, w, lam)
        res.check(all(klcells.coset_split(ctx, x, mu)[0] == w1 and mu == lam for _, x, mu in c.terms),
                  lambda: {"check": "block support", **_pair(ctx, w, lam)})
        for wp in W:
            odd = [i for i in klcells.n_coeffs(ctx, wp, w, lam) if i % 2]
            res.check(not odd, lambda: {"check": "evenness", "w'": W.render(wp), **_pair(ctx, w, lam)})
        for wp, lamp in keys:
            for (y, nu), g in klcells.gamma(ctx, w, lam, wp, lamp).items():
                res.check(g.nonnegative(), lambda: {
                    "check": "gamma >= 0", "left": _pair(ctx, w, lam), "right": _pair(ctx, wp, lamp),
                    "term": _pair(ctx, y, nu), "poly": str(g)})
    return res


def run_convolution(ctx: AlgebraContext, seed: int = 0, samples: int = 100) -> SuiteResult:
    """The convolution identities on prime-basis pairs, and omega's scaling law."""
    res = SuiteResult("convolution")
    W, chars, r = ctx.W, ctx.chars, ctx.rank
    scale = LaurentPoly({2: 1, 0: -1}) ** r
    v2m1 = LaurentPoly({2: 1, 0: -1})
    prime = gk.prime_basis
    for w in W:
        for lam in ctx.lambdas:
            x = prime(ctx, w, lam)
            for wp in W:
                for lamp in ctx.lambdas:
                    xp = prime(ctx, wp, lamp)
                    got = gk.star(x, xp)
                    where = {"left": _pair(ctx, w, lam), "right": _pair(ctx, wp, lamp)}
                    if chars.act(wp, lamp) != lam:
                        res.check(not got.coords, {"check": "orthogonality", **where})
                    elif W.length(W.mul(w, wp)) == W.length(w) + W.length(wp):
                        res.check(got == prime(ctx, W.mul(w, wp), lamp).scale(scale),
                                  {"check": "length additive", **where})
                    elif w == wp and W.length(w) == 1:
                        i = W.word(w)[0]
                        c = 1 if ctx.in_stab(i, lamp) else 0
                        want = prime(ctx, 0, lamp).scale(LaurentPoly.monomial(2)) + prime(ctx, w, lamp).scale(v2m1 * c)
                        res.check(got == want.scale(scale), {"check": "quadratic", **where})
    rng = random.Random(seed)
    keys = [(w, lam) for w in W for lam in ctx.lambdas]

    def rand_fk():
        return gk.FKElt(ctx, {rng.choice(keys): LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3)})
                              for _ in range(3)})

    for _ in range(samples):
        x, xp = rand_fk(), rand_fk()
        lhs = gk.omega(gk.star(x, xp))
        rhs = (gk.omega(x) * gk.omega(xp)).scale(scale)
        res.check(lhs == rhs, lambda: {"check": "omega scaling", "x": repr(x), "x'": repr(xp)})
    return res


def run_duality(ctx: AlgebraContext) -> SuiteResult:
    res = SuiteResult("duality")
    for row in duality.verify_duality(ctx):
        res.check(row["pass"], row)
        res.rows.append({k: row[k] for k in ("element", "exact", "residual_rank", "pass")})
    return res


def run_facets(ctx: AlgebraContext) -> SuiteResult:
    res = SuiteResult("facets")
    for row in duality.facet_identity_check(ctx):
        res.check(row["pass"] and row["shortcut_agrees"], row)
        res.rows.append(row)
    return res


def run(name: str, ctx: AlgebraContext, seed: int = 0) -> list[SuiteResult]:
    if name == "all":
        return [r for s in SUITES for r in run(s, ctx, seed)]
    if name == "convolution":
        return [run_convolution(ctx, seed)]
    runner = {"duality": run_duality, "facets": run_facets, "positivity": run_positivity,
              "cosets": run_cosets}.get(name)
    if runner is None:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    return [runner(ctx)]

