import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ctx_for
from heckecells import hecke
from heckecells.hecke import (
    ContextMismatch, HeckeElt, T, basis, from_json, idempotent, invert_basis, invert_simple, parse, render,
    restrict_HJ, theta_twist, to_json, twist_generator, unit, zero,
)
from heckecells.laurent import ONE, QV, LaurentPoly


def test_basis_examples():
    ctx = ctx_for("A1", 2)
    lam0 = ctx.chars.lookup("(0)")
    assert basis(ctx, 0, lam0) == idempotent(ctx, lam0)
    assert basis(ctx, 1, lam0).scale(0) == zero(ctx) == 0
    h = basis(ctx, 1, ctx.chars.lookup("(1/2)"))
    assert parse(ctx, render(h)) == h
    assert render(h) == "T[s1] 1[(1/2)]"


def test_quadratic_relation_examples():
    ctx = ctx_for("A1", 2)
    lam0, half = ctx.chars.lookup("(0)"), ctx.chars.lookup("(1/2)")
    assert basis(ctx, 1, lam0) * basis(ctx, 1, lam0) == idempotent(ctx, lam0) + basis(ctx, 1, lam0, coeff=QV)
    assert basis(ctx, 1, half) * basis(ctx, 1, half) == idempotent(ctx, half)
    assert basis(ctx, 1, lam0) * basis(ctx, 1, half) == 0
    ctx = ctx_for("A2", 3)
    W = ctx.W
    lam = ctx.chars.lookup("(1/3,0)")
    s1, s2 = W.simple(0), W.simple(1)
    got = basis(ctx, s1, ctx.chars.act(s2, lam)) * basis(ctx, s2, lam)
    assert got == basis(ctx, W.mul(s1, s2), lam)


def test_zero_when_idempotents_mismatch():
    ctx = ctx_for("A2", 2)
    for w, wp, lam, lamp in product(ctx.W, ctx.W, ctx.lambdas, ctx.lambdas):
        if ctx.chars.act(wp, lamp) != lam:
            assert basis(ctx, w, lam) * basis(ctx, wp, lamp) == 0


def test_unit_is_two_sided():
    ctx = ctx_for("B2", 2)
    one = unit(ctx)
    for key in ctx.basis_keys(0):
        h = HeckeElt(ctx, {key: ONE})
        assert one * h == h == h * one


@pytest.mark.parametrize("name,n", [("A1", 1), ("A1", 2), ("A2", 1), ("A2", 2), ("B2", 2)])
def test_invert_basis(name, n):
    ctx = ctx_for(name, n)
    one = unit(ctx)
    for w in ctx.W:
        inv = invert_basis(ctx, w)
        assert inv * T(ctx, w) == one == T(ctx, w) * inv
    assert invert_basis(ctx, 0) == one


def test_invert_simple_A1():
    ctx = ctx_for("A1", 1)
    inv = invert_simple(ctx, 0)
    assert inv == basis(ctx, 1, 0) - basis(ctx, 0, 0, coeff=QV)
    assert T(ctx, 1) * inv == idempotent(ctx, 0)


def test_theta_twist_examples():
    ctx = ctx_for("A2", 2)
    for key in ctx.basis_keys(0):
        h = HeckeElt(ctx, {key: ONE})
        assert theta_twist(h) == h
    ctx = ctx_for("A2", 3, "flip")
    W, chars = ctx.W, ctx.chars
    lam = chars.lookup("(1/3,0)")
    assert theta_twist(basis(ctx, W.simple(0), lam)) == basis(ctx, W.simple(1), chars.lookup("(0,1/3)"))
    rng = random.Random(3)
    keys = ctx.basis_keys(0)
    for _ in range(100):
        x = HeckeElt(ctx, {rng.choice(keys): LaurentPoly({rng.randint(-2, 2): 1}) for _ in range(3)})
        y = HeckeElt(ctx, {rng.choice(keys): LaurentPoly({rng.randint(-2, 2): -1}) for _ in range(3)})
        assert theta_twist(x * y) == theta_twist(x) * theta_twist(y)


@pytest.mark.parametrize("name,n,eps", [("A2", 2, "flip"), ("A1xA1", 2, "swap"), ("A3", 1, "flip"), ("B2", 2, "id")])
def test_theta_order_is_d(name, n, eps):
    ctx = ctx_for(name, n, eps)
    keys = ctx.basis_keys(0)
    assert all(ctx.theta_key(k, ctx.d) == k for k in keys)
    if ctx.d > 1:
        assert any(ctx.theta_key(k) != k for k in keys)


@pytest.mark.parametrize("name,n,eps", [("A2", 1, "flip"), ("A2", 2, "flip"), ("A1xA1", 2, "swap"), ("B2", 1, "id")])
def test_crossed_product_conjugation(name, n, eps):
    ctx = ctx_for(name, n, eps)
    D, Dinv = twist_generator(ctx), twist_generator(ctx, -1)
    assert D * Dinv == unit(ctx) == Dinv * D
    for key in ctx.basis_keys(None):
        h = HeckeElt(ctx, {key: ONE})
        assert D * h * Dinv == theta_twist(h)
        assert Dinv * h * D == theta_twist(h, -1)


def test_restrict_HJ():
    ctx = ctx_for("A2", 1)
    W = ctx.W
    h = sum((basis(ctx, w, 0, coeff=LaurentPoly({W.length(w): 1})) for w in W), zero(ctx))
    assert restrict_HJ(h, (0, 1)) == h
    assert restrict_HJ(basis(ctx, W.simple(0), 0), ()) == 0
    HJ = [basis(ctx, w, 0) for w in W.parabolic((0,))]
    for x, y in product(HJ, HJ):
        assert restrict_HJ(x * y, (0,)) == x * y


def test_context_mismatch():
    a, b = ctx_for("A1", 1), ctx_for("A1", 2)
    with pytest.raises(ContextMismatch):
        basis(a, 0, 0) * basis(b, 0, 0)
    with pytest.raises(ContextMismatch):
        basis(a, 0, 0) + basis(b, 0, 0)


def test_render_twisted_and_json():
    ctx = ctx_for("A2", 3, "flip")
    h = basis(ctx, ctx.W.from_word([0, 1]), 4, k=1, coeff=QV) + basis(ctx, 0, 2)
    text = render(h)
    assert "D^1 T[s1 s2]" in text and "* (v - v^-1)" in text
    assert parse(ctx, text) == h
    assert from_json(ctx, to_json(h)) == h
    assert to_json(basis(ctx, ctx.W.simple(1), 0)) == [{"k": 0, "word": [2], "lambda": ["0", "0"], "poly": "1"}]
    assert parse(ctx, "0") == 0
    with pytest.raises(ValueError):
        parse(ctx, "T[x1] 1[(0,0)]")
    with pytest.raises(ValueError):
        parse(ctx, "T[s1] 1[(0,0)] - T[s2] 1[(0,0)]")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 5), st.integers(0, 8),
                          st.integers(-3, 3), st.integers(-5, 5)), max_size=6))
def test_render_parse_roundtrip(items):
    ctx = ctx_for("A2", 3, "flip")
    h = HeckeElt(ctx, {(k, w, lam): LaurentPoly({e: c}) for k, w, lam, e, c in items})
    assert parse(ctx, render(h)) == h
    assert from_json(ctx, to_json(h)) == h


def test_product_helper():
    ctx = ctx_for("A2", 1)
    W = ctx.W
    assert hecke.product(T(ctx, W.simple(0)), T(ctx, W.simple(1)), T(ctx, W.simple(0))) == T(ctx, W.longest())
    assert hecke.from_word(ctx, [0, 1, 0]) == T(ctx, W.longest())
