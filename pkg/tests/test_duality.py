from itertools import combinations

import pytest

from conftest import ctx_for
from heckecells import duality, grothendieck as gk
from heckecells.hecke import HeckeElt, T, basis, idempotent, theta_twist, twist_generator
from heckecells.laurent import ONE, QV
from heckecells.rootsys import perm_sign


def test_theta_examples():
    ctx = ctx_for("A1", 2)
    for lam in ctx.lambdas:
        assert duality.theta(idempotent(ctx, lam)) == idempotent(ctx, lam)
    one = ctx_for("A1", 1)
    assert duality.theta(basis(one, 1, 0)) == -basis(one, 1, 0) + basis(one, 0, 0, coeff=QV)


def test_theta_on_twist_generator():
    ctx = ctx_for("A2", 1, "flip")
    D = twist_generator(ctx)
    assert duality.twist_sign(ctx) == -1
    assert duality.theta(D) == -D
    ctx = ctx_for("A3", 1, "flip")
    assert duality.twist_sign(ctx) == -1
    assert duality.twist_sign(ctx_for("A1xA1", 1, "swap")) == -1
    assert duality.twist_sign(ctx_for("B2", 1)) == 1


def test_delta_J_examples_A1():
    ctx = ctx_for("A1", 1)
    one, s = basis(ctx, 0, 0), basis(ctx, 1, 0)
    assert duality.delta_J(one, ()) == one.scale(2)
    assert duality.delta_J(s, ()) == one.scale(QV)
    for y in (one, s):
        assert duality.delta_J(y, (0,)) == y
        assert duality.delta(y) == duality.theta(y)
    assert duality.delta(s) == one.scale(QV) - s


def test_delta_A1_nontrivial_character():
    ctx = ctx_for("A1", 2)
    half = ctx.chars.lookup("(1/2)")
    y = basis(ctx, 1, half)
    assert duality.delta(y) == -y == duality.theta(y)


@pytest.mark.parametrize("name,n,eps", [("A2", 2, "id"), ("A2", 1, "flip"), ("A1xA1", 1, "swap"), ("B2", 1, "id")])
def test_delta_J_stays_in_HD(name, n, eps):
    ctx = ctx_for(name, n, eps)
    for key in gk.HD_keys(ctx):
        y = HeckeElt(ctx, {key: ONE})
        for J in duality.eps_stable_subsets(ctx):
            assert gk.in_HD(duality.delta_J(y, J))


def test_delta_J_guards():
    ctx = ctx_for("A2", 1, "flip")
    with pytest.raises(duality.NotEpsStable):
        duality.delta_J(basis(ctx, 0, 0), (0,))
    assert duality.eps_stable_subsets(ctx) == [(), (0, 1)]
    ctx = ctx_for("A2", 2)
    moved = ctx.chars.lookup("(1/2,0)")
    with pytest.raises(gk.NotInHD):
        duality.delta(basis(ctx, 1, moved))


def test_commutator_space_examples():
    assert duality.commutator_space(ctx_for("A1", 1)).dimension == 0
    space = duality.commutator_space(ctx_for("A2", 1))
    assert space.dimension == 3
    assert duality.commutator_space(ctx_for("A2", 1)) is space
    ctx = ctx_for("A2", 1, "flip")
    s1 = basis(ctx, ctx.W.simple(0), 0)
    assert s1 - theta_twist(s1) != 0
    space = duality.commutator_space(ctx)
    assert space.contains(s1 - theta_twist(s1))
    assert not space.contains(basis(ctx, 0, 0))
    assert space.residual(basis(ctx, 0, 0))


def test_verify_duality_rows():
    rows = duality.verify_duality(ctx_for("A1", 1))
    assert len(rows) == 2 and all(r["exact"] and r["pass"] and r["residual_rank"] == 0 for r in rows)
    rows = duality.verify_duality(ctx_for("A2", 1, "flip"))
    assert all(r["pass"] for r in rows) and not all(r["exact"] for r in rows)


def test_facets_A1_traces():
    rows = duality.facet_identity_check(ctx_for("A1", 1))
    assert [(r["element"], r["lhs_trace"], r["rhs_trace"]) for r in rows] == [("1", 2, 2), ("s1", 0, 0)]


@pytest.mark.parametrize("name,eps", [("A2", "id"), ("B2", "id"), ("G2", "id"), ("A3", "id"), ("B3", "id")])
def test_facet_identity_identity_element_is_euler_relation(name, eps):
    ctx = ctx_for(name, 1, eps)
    fc = duality.FacetComplex(ctx)
    r = ctx.rank
    lhs, rhs = 1, 0
    for m in range(r + 1):
        for J in combinations(range(r), m):
            count = len(ctx.W) // len(ctx.W.parabolic(J))
            assert len(fc.reps[J]) == count
            if (r - m) % 2 == (r + 1) % 2:
                lhs += count
            else:
                rhs += count
    row = duality.facet_identity_check(ctx)[0]
    assert row["element"] == "1" and (row["lhs_trace"], row["rhs_trace"]) == (lhs, rhs)
    assert lhs == rhs


@pytest.mark.parametrize("name,eps,rows", [("A2", "flip", 12), ("A3", "flip", 48), ("A1xA1", "swap", 8), ("G2", "id", 12)])
def test_facet_identity_twisted(name, eps, rows):
    out = duality.facet_identity_check(ctx_for(name, 1, eps))
    assert len(out) == rows
    assert all(r["pass"] and r["shortcut_agrees"] for r in out)


def test_orbit_count_reproduces_facet_sign():
    for name, eps in (("A2", "flip"), ("A3", "flip"), ("A1xA1", "swap")):
        ctx = ctx_for(name, 1, eps)
        d = ctx.datum
        fc = duality.FacetComplex(ctx)
        for J in duality.eps_stable_subsets(ctx):
            rest = [i for i in range(ctx.rank) if i not in J]
            sign = (-1) ** (len(rest) - d.eps_orbits(rest))
            assert sign == perm_sign(d.eps, rest) == fc.facet_det_shortcut(1, J)


def test_facet_stabilizer_is_parabolic():
    ctx = ctx_for("A2", 1)
    fc = duality.FacetComplex(ctx)
    for J in fc.types:
        stab = {x for x in ctx.W if fc.fixes(x, 0, J, 0)}
        assert stab == set(ctx.W.parabolic(J))


def test_T_inverse_cached():
    ctx = ctx_for("B2", 1)
    w = ctx.W.longest()
    assert duality.T_inverse(ctx, w) is duality.T_inverse(ctx, w)
    assert duality.T_inverse(ctx, w) * T(ctx, w) == basis(ctx, 0, 0)
