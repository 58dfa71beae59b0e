"""Acceptance criteria, one check function each.

Every check returns a list of failure descriptions (empty means pass).  Under
pytest each criterion is one test and a PASS/FAIL line is printed in the
terminal summary; ``python tests/test_acceptance.py`` prints the same lines.
"""

from __future__ import annotations

import random
import sys
from itertools import combinations, product
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from conftest import ACCEPTANCE_LINES, ctx_for  # noqa: E402
from heckecells import duality, grothendieck as gk, hecke, klcells  # noqa: E402
from heckecells.hecke import HeckeElt, basis, idempotent, theta_twist, twist_generator, unit  # noqa: E402
from heckecells.laurent import ONE, QV, LaurentPoly  # noqa: E402
from heckecells.rootsys import min_parabolic_reps  # noqa: E402

CRITERIA: dict[int, tuple[str, callable]] = {}
MAX_REPORTED = 5


def criterion(num: int, title: str):
    def deco(fn):
        CRITERIA[num] = (title, fn)
        return fn
    return deco


class Failures(list):
    checked = 0

    def add(self, ok: bool, msg) -> None:
        self.checked += 1
        if not ok and len(self) < MAX_REPORTED:
            self.append(msg() if callable(msg) else msg)


def subsets(r: int):
    return [J for m in range(r + 1) for J in combinations(range(r), m)]


def rand_elt(ctx, rng, keys=None, terms=3) -> HeckeElt:
    keys = keys or ctx.basis_keys(None)
    return HeckeElt(ctx, {rng.choice(keys): LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3)})
                          for _ in range(terms)})


def coxeter_m(a, i, j) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[a[i][j] * a[j][i]]


# ---------------------------------------------------------------------------

@criterion(1, "presentation soundness")
def check_presentation() -> Failures:
    bad = Failures()
    for typ, n in product(("A1", "A2", "B2"), (1, 2, 3)):
        ctx = ctx_for(typ, n)
        W, chars, tag = ctx.W, ctx.chars, f"{typ} n={n}"
        ones = {lam: idempotent(ctx, lam) for lam in ctx.lambdas}
        total = HeckeElt(ctx)
        for a in ctx.lambdas:
            total = total + ones[a]
            for b in ctx.lambdas:
                bad.add(ones[a] * ones[b] == (ones[a] if a == b else 0), f"{tag}: idempotents {a},{b}")
        bad.add(total == unit(ctx), f"{tag}: sum of idempotents is not the unit")
        for w, lam in product(W, ctx.lambdas):
            Tw = hecke.T(ctx, w)
            bad.add(basis(ctx, w, lam) == Tw * ones[lam] == ones[chars.act(w, lam)] * Tw,
                    f"{tag}: T_w 1_lam = 1_(w lam) T_w fails at w={W.render(w)}")
        for w, wp in product(W, W):
            ww = W.mul(w, wp)
            for lamp in ctx.lambdas:
                lam = chars.act(wp, lamp)
                for mu in ctx.lambdas:
                    got = basis(ctx, w, mu) * basis(ctx, wp, lamp)
                    if mu != lam:
                        bad.add(got == 0, f"{tag}: mismatched product nonzero")
                    elif W.length(ww) == W.length(w) + W.length(wp):
                        bad.add(got == basis(ctx, ww, lamp), f"{tag}: length additivity {W.render(w)}*{W.render(wp)}")
        a = ctx.datum.cartan
        for i in range(ctx.rank):
            s = W.simple(i)
            Ts = hecke.T(ctx, s)
            want = unit(ctx)
            for mu in ctx.lambdas:
                if ctx.in_stab(i, mu):
                    want = want + basis(ctx, s, mu).scale(QV)
            bad.add(Ts * Ts == want, f"{tag}: quadratic relation for s{i + 1}")
            for lamp in ctx.lambdas:
                c = chars.simple_in_stabilizer(i, lamp)
                want = ones[lamp] + basis(ctx, s, lamp).scale(QV if c else 0)
                bad.add(basis(ctx, s, chars.act(s, lamp)) * basis(ctx, s, lamp) == want,
                        f"{tag}: per-lambda quadratic relation s{i + 1}")
            for j in range(i + 1, ctx.rank):
                m = coxeter_m(a, i, j)
                left = hecke.from_word(ctx, [(i, j)[t % 2] for t in range(m)])
                right = hecke.from_word(ctx, [(j, i)[t % 2] for t in range(m)])
                bad.add(left == right, f"{tag}: braid relation s{i + 1},s{j + 1}")
        rng = random.Random(1000 * n + len(W))
        for _ in range(200):
            x, y, z = (rand_elt(ctx, rng) for _ in range(3))
            bad.add((x * y) * z == x * (y * z), lambda: f"{tag}: associativity fails for {x} | {y} | {z}")
    return bad


@criterion(2, "coset lemmas")
def check_cosets() -> Failures:
    bad = Failures()
    for typ, n in product(("A2", "B2"), (1, 2, 3)):
        ctx = ctx_for(typ, n)
        W, datum, tag = ctx.W, ctx.datum, f"{typ} n={n}"
        for lam in ctx.lambdas:
            pos, group = oracles.direct_stabilizer(ctx, lam)
            ld = ctx.chars.stabilizer_data(lam)
            bad.add(set(ld.members) == group and ld.pos_roots == pos, f"{tag}: stabilizer of {ctx.chars.render(lam)}")
            minimal_of = {}
            for w in W:
                coset = {W.mul(w, z) for z in group}
                lmin = min(W.length(x) for x in coset)
                minimal = [x for x in coset if W.length(x) == lmin]
                positive = [x for x in coset if all(datum.is_positive(W.act_root(x, k)) for k in pos)]
                bad.add(len(minimal) == 1, f"{tag}: minimal element not unique")
                bad.add(positive == minimal, f"{tag}: positivity characterization fails")
                w1, z = klcells.coset_split(ctx, w, lam)
                bad.add(w1 == minimal[0] and W.mul(w1, z) == w and z in group, f"{tag}: coset_split({W.render(w)})")
                minimal_of[w] = minimal[0]
            for w in set(minimal_of.values()):
                for i in range(ctx.rank):
                    sw = W.lmul[i][w]
                    bad.add(minimal_of[sw] == sw or W.mul(W.inverse(w), sw) in group,
                            f"{tag}: dichotomy fails at w={W.render(w)}, s{i + 1}")
    return bad


@criterion(3, "canonical basis against the bar-fixpoint oracle")
def check_canonical() -> Failures:
    bad = Failures()
    for typ, n in product(("A2", "B2"), (1, 2, 3)):
        ctx = ctx_for(typ, n)
        tag = f"{typ} n={n}"
        done = set()
        for lam in ctx.lambdas:
            ld = ctx.chars.stabilizer_data(lam)
            if len(ld.members) > 8 or ld.pos_roots in done:
                continue
            done.add(ld.pos_roots)
            want = oracles.kl_oracle(ctx, lam)
            for z, zp in product(ld.members, ld.members):
                got = oracles.laurent_to_sympy(klcells.kl_poly(ld, zp, z))
                bad.add((got - want.get((zp, z), 0)).expand() == 0,
                        f"{tag}: p_(z',z) differs from oracle for lambda={ctx.chars.render(lam)}")
        for key in ctx.basis_keys(0):
            h = HeckeElt(ctx, {key: ONE})
            bad.add(klcells.from_c(ctx, klcells.to_c(h)) == h, f"{tag}: T -> c -> T on {h}")
            c = klcells.c_basis(ctx, key[1], key[2])
            bad.add(klcells.to_c(c) == {key: ONE}, f"{tag}: c -> T -> c on {key}")
        rng = random.Random(n)
        for _ in range(50):
            h = rand_elt(ctx, rng, ctx.basis_keys(0), 5)
            bad.add(klcells.from_c(ctx, klcells.to_c(h)) == h, f"{tag}: round trip on {h}")
    return bad


def _c_keys(ctx):
    return [(w, lam) for w in ctx.W for lam in ctx.lambdas]


@criterion(4, "positivity of structure constants")
def check_positivity() -> Failures:
    bad = Failures()
    for typ, n in product(("A2", "B2"), (1, 2)):
        ctx = ctx_for(typ, n)
        for x, y in product(_c_keys(ctx), repeat=2):
            for key, g in klcells.gamma(ctx, *x, *y).items():
                bad.add(all(c >= 0 for c in g.coeffs.values()),
                        lambda: f"{typ} n={n}: gamma {x}*{y} -> {key} = {g}")
    return bad


@criterion(5, "evenness of N coefficients")
def check_evenness() -> Failures:
    bad = Failures()
    for typ, n in product(("A2", "B2"), (1, 2)):
        ctx = ctx_for(typ, n)
        W = ctx.W
        for w, lam in _c_keys(ctx):
            c = klcells.c_basis(ctx, w, lam)
            for wp in W:
                N = c.coeff(wp, lam).shift(W.length(w) - W.length(wp)).coeffs
                if klcells.coset_split(ctx, wp, lam)[0] != klcells.coset_split(ctx, w, lam)[0]:
                    bad.add(not N, f"{typ} n={n}: pi nonzero across cosets")
                bad.add(klcells.n_coeffs(ctx, wp, w, lam) == N, f"{typ} n={n}: n_coeffs disagrees with pi")
                bad.add(all(i % 2 == 0 for i in N), lambda: f"{typ} n={n}: odd N at w={W.render(w)} w'={W.render(wp)}: {N}")
    return bad


RANK2 = ("A1", "A2", "B2", "G2", "A1xA1")


@criterion(6, "convolution model")
def check_convolution() -> Failures:
    bad = Failures()
    for typ, n in product(RANK2, (1, 2)):
        ctx = ctx_for(typ, n)
        W, chars, tag = ctx.W, ctx.chars, f"{typ} n={n}"
        scale = LaurentPoly({2: 1, 0: -1}) ** ctx.rank
        pb = gk.prime_basis
        for (w, lam), (wp, lamp) in product(_c_keys(ctx), repeat=2):
            got = gk.star(pb(ctx, w, lam), pb(ctx, wp, lamp))
            if chars.act(wp, lamp) != lam:
                bad.add(not got.coords, f"{tag}: orthogonality")
            elif W.length(W.mul(w, wp)) == W.length(w) + W.length(wp):
                bad.add(got == pb(ctx, W.mul(w, wp), lamp).scale(scale), f"{tag}: length-additive identity")
            elif w == wp and W.length(w) == 1:
                i = W.word(w)[0]
                c = 1 if chars.simple_in_stabilizer(i, lamp) else 0
                want = pb(ctx, 0, lamp).scale(LaurentPoly({2: 1})) + pb(ctx, w, lamp).scale(LaurentPoly({2: c, 0: -c}))
                bad.add(got == want.scale(scale), f"{tag}: quadratic identity at {W.render(w)}")
        rng = random.Random(7 * n + ctx.rank)
        for _ in range(100):
            x = gk.FKElt(ctx, {rng.choice(_c_keys(ctx)): LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3)})
                               for _ in range(3)})
            xp = gk.FKElt(ctx, {rng.choice(_c_keys(ctx)): LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3)})
                                for _ in range(3)})
            bad.add(gk.omega(gk.star(x, xp)) == (gk.omega(x) * gk.omega(xp)).scale(scale),
                    f"{tag}: omega scaling on {x}, {xp}")
    return bad


@criterion(7, "two-sided cells")
def check_cells() -> Failures:
    bad = Failures()
    ctx = ctx_for("A1", 1)
    part = klcells.two_sided_cells(ctx, (0,), (0,))
    bad.add(part.as_sets() == {frozenset({(0, 0)}), frozenset({(1, 0)})}, f"A1 n=1: {part.as_sets()}")
    bad.add(part.as_sets() == oracles.gamma_graph_cells(ctx), "A1 n=1: gamma-graph oracle disagrees")
    ctx = ctx_for("A1", 2)
    half = ctx.chars.lookup("(1/2)")
    zero = ctx.chars.lookup("(0)")
    part = klcells.two_sided_cells(ctx, (0,), (0,))
    want = {frozenset({(0, zero)}), frozenset({(1, zero)}), frozenset({(0, half), (1, half)})}
    bad.add(len(part) == 3 and part.as_sets() == want, f"A1 n=2: {part.as_sets()}")
    bad.add(part.as_sets() == oracles.gamma_graph_cells(ctx), "A1 n=2: gamma-graph oracle disagrees")
    for typ, n in product(("A1", "A2"), (1, 2)):
        ctx = ctx_for(typ, n)
        for J, Jp in product(subsets(ctx.rank), repeat=2):
            below = oracles.triple_preorder(ctx, J, Jp)
            G = klcells.preorder(ctx, J, Jp)
            for x in below:
                mine = nx.descendants(G, x) | {x}
                bad.add(mine == below[x] | {x}, f"{typ} n={n} J={J} J'={Jp}: preorder differs at {x}")
    return bad


@criterion(8, "eps-twist automorphism")
def check_twist() -> Failures:
    bad = Failures()
    for n in (1, 3):
        ctx = ctx_for("A2", n, "flip")
        W, chars, tag = ctx.W, ctx.chars, f"A2 flip n={n}"
        keys = ctx.basis_keys(0)
        elts = [HeckeElt(ctx, {k: ONE}) for k in keys]
        images = [theta_twist(e) for e in elts]
        bad.add(len({e.support().pop() for e in images}) == len(keys), f"{tag}: twist not a bijection on the basis")
        for (x, tx), (y, ty) in product(zip(elts, images), repeat=2):
            bad.add(theta_twist(x * y) == tx * ty, lambda: f"{tag}: Theta({x}*{y}) != Theta(x)Theta(y)")
        bad.add(theta_twist(unit(ctx)) == unit(ctx), f"{tag}: Theta(1) != 1")
        D = twist_generator(ctx)
        Dinv = twist_generator(ctx, -1)
        for x, tx in zip(elts, images):
            bad.add(D * x * Dinv == tx, f"{tag}: conjugation by T_D is not Theta on {x}")
        for w, lam in _c_keys(ctx):
            got = theta_twist(klcells.c_basis(ctx, w, lam))
            bad.add(got == klcells.c_basis(ctx, W.eps(w), chars.act_D(lam)), f"{tag}: Theta(c_(w,lam)) at {W.render(w)}")
        for J, Jp in product(subsets(2), repeat=2):
            eJ = tuple(sorted(ctx.eps[j] for j in J))
            eJp = tuple(sorted(ctx.eps[j] for j in Jp))
            part = klcells.two_sided_cells(ctx, J, Jp)
            image = klcells.twist_cells(ctx, part)
            target = klcells.two_sided_cells(ctx, eJ, eJp)
            bad.add(image.as_sets() == target.as_sets(), f"{tag}: cells of (J,J')={J},{Jp} not carried to cells")
            mapped = {frozenset((W.eps(w), chars.act_D(lam)) for w, lam in cell) for cell in part.cells}
            bad.add(mapped == target.as_sets(), f"{tag}: direct image of cells differs for {J},{Jp}")
    return bad


@criterion(9, "p_J identities")
def check_pJ() -> Failures:
    bad = Failures()
    for typ, n in product(RANK2, (1, 2)):
        ctx = ctx_for(typ, n)
        W, tag = ctx.W, f"{typ} n={n}"
        plain = [HeckeElt(ctx, {k: ONE}) for k in ctx.basis_keys(0)]
        for J in subsets(ctx.rank):
            WJ = W.parabolic(J)
            HJ = [h for h in plain if next(iter(h.support()))[1] in WJ]
            reps = min_parabolic_reps(ctx.datum, J)
            for u in reps:
                Tu = hecke.T(ctx, u)
                for hp in HJ:
                    bad.add(gk.p_J(Tu * hp, J) == (hp if u == 0 else 0), f"{tag} J={J}: (a) at u={W.render(u)}")
                for up in reps:
                    got = gk.p_J(hecke.T(ctx, W.inverse(u)) * hecke.T(ctx, up), J)
                    bad.add(got == (unit(ctx) if u == up else 0), f"{tag} J={J}: (d) at {W.render(u)},{W.render(up)}")
            for h in plain:
                ph = gk.p_J(h, J)
                for hp in HJ:
                    bad.add(gk.p_J(h * hp, J) == ph * hp, f"{tag} J={J}: (b) at {h}, {hp}")
        for x, xp, lam in product(W, W, ctx.lambdas):
            got = gk.p_J(hecke.T(ctx, x) * basis(ctx, xp, lam), ())
            bad.add(got == (idempotent(ctx, lam) if W.mul(x, xp) == 0 else 0),
                    f"{tag}: (c) at {W.render(x)},{W.render(xp)}")
    return bad


@criterion(10, "duality engine")
def check_duality() -> Failures:
    bad = Failures()
    for n in (1, 2):
        ctx = ctx_for("A1", n)
        for key in ctx.basis_keys(0):
            y = HeckeElt(ctx, {key: ONE})
            bad.add(duality.delta(y) == duality.theta(y), f"A1 n={n}: delta != theta at {y}")
    configs = [("A2", 1, "id"), ("A2", 2, "id"), ("B2", 1, "id"), ("B2", 2, "id"),
               ("A2", 1, "flip"), ("A1xA1", 1, "swap")]
    for typ, n, eps in configs:
        ctx = ctx_for(typ, n, eps)
        rows = duality.verify_duality(ctx)
        bad.add(bool(rows) and len(rows) == len(gk.HD_keys(ctx)), f"{typ} {eps} n={n}: no rows")
        for row in rows:
            bad.add(row["pass"], f"{typ} {eps} n={n}: {row['element']} residual {row['difference']}")
    return bad


@criterion(11, "theta is a multiplicative involution")
def check_theta() -> Failures:
    bad = Failures()
    configs = [(t, n, "id") for t in RANK2 for n in (1, 2)]
    configs += [("A2", n, "flip") for n in (1, 2)] + [("A1xA1", n, "swap") for n in (1, 2)]
    for typ, n, eps in configs:
        ctx = ctx_for(typ, n, eps)
        tag = f"{typ} {eps} n={n}"
        elts = [HeckeElt(ctx, {k: ONE}) for k in ctx.basis_keys(None)]
        thetas = [duality.theta(e) for e in elts]
        for e, te in zip(elts, thetas):
            bad.add(duality.theta(te) == e, f"{tag}: theta^2 != id on {e}")
        for (x, tx), (y, ty) in product(zip(elts, thetas), repeat=2):
            bad.add(duality.theta(x * y) == tx * ty, lambda: f"{tag}: theta({x}*{y}) != theta(x)theta(y)")
    return bad


@criterion(12, "facet identity")
def check_facets() -> Failures:
    bad = Failures()
    for typ, eps in (("A1", "id"), ("A2", "id"), ("A2", "flip"), ("B2", "id"), ("A1xA1", "swap"), ("A3", "id")):
        ctx = ctx_for(typ, 1, eps)
        rows = duality.facet_identity_check(ctx)
        bad.add(len(rows) == len(ctx.W) * ctx.datum.eps_order, f"{typ} {eps}: wrong number of rows")
        for row in rows:
            bad.add(row["lhs_trace"] == row["rhs_trace"], f"{typ} {eps}: {row}")
    return bad


# ---------------------------------------------------------------------------

def run_criterion(num: int) -> tuple[bool, str]:
    title, fn = CRITERIA[num]
    failures = fn()
    line = f"criterion {num:2d} {'PASS' if not failures else 'FAIL'}  {title} ({failures.checked} checks)"
    if failures:
        line += "  first failure: " + str(failures[0])
    return not failures, line


@pytest.mark.parametrize("num", sorted(CRITERIA), ids=[f"c{k:02d}-{CRITERIA[k][0].replace(' ', '_')}" for k in sorted(CRITERIA)])
def test_criterion(num):
    ok, line = run_criterion(num)
    ACCEPTANCE_LINES[num] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
