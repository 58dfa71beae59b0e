import pytest
import sympy
from hypothesis import given, settings, strategies as st

from heckecells.laurent import (
    ONE, QV, V, VINV, ZERO, FractionFreeEchelon, LaurentPoly, NotDivisible, bar, exact_div,
    membership, parse, poly, rank, render,
)

coeffs = st.dictionaries(st.integers(-6, 6), st.integers(-10**20, 10**20), max_size=6)
polys = coeffs.map(LaurentPoly)
small = st.dictionaries(st.integers(-3, 3), st.integers(-4, 4), max_size=4).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + ZERO == p and p * ONE == p and p - p == ZERO


@given(polys, polys)
def test_bar_is_a_ring_map(p, q):
    assert bar(p * q) == bar(p) * bar(q)
    assert bar(p + q) == bar(p) + bar(q)
    assert bar(bar(p)) == p


@given(polys, polys)
def test_exact_div_inverts_mul(p, q):
    if q:
        assert exact_div(p * q, q) == p


@given(polys)
def test_render_parse_roundtrip(p):
    assert parse(render(p)) == p


def test_render_examples():
    assert render(LaurentPoly({2: 1, 0: -2, -2: 1})) == "v^2 - 2 + v^-2"
    assert render(QV) == "v - v^-1"
    assert render(ZERO) == "0"
    assert str(-3 * VINV) == "-3*v^-1"
    assert parse("3v^2 - v") == LaurentPoly({2: 3, 1: -1})


def test_units_and_shift():
    assert V * VINV == ONE
    assert LaurentPoly({0: 1, 1: 1}).shift(-1) == VINV + ONE
    assert (V - VINV) ** 2 == LaurentPoly({2: 1, 0: -2, -2: 1})
    assert LaurentPoly({-1: 2, 3: 1}).min_degree == -1


def test_not_divisible():
    with pytest.raises(NotDivisible):
        LaurentPoly({2: 1, 0: 1}).exact_div(LaurentPoly({1: 1, 0: 1}))
    with pytest.raises(ZeroDivisionError):
        ONE.exact_div(ZERO)


def test_big_coefficients_do_not_overflow():
    p = LaurentPoly({0: 2**62, 1: 2**62})
    assert (p * p).coeff(1) == 2 * 2**124
    assert exact_div(p * p, p) == p


def test_poly_coercion():
    assert poly(3) == LaurentPoly(3)
    assert poly("v - v^-1") == QV
    with pytest.raises(TypeError):
        poly(1.5)
    with pytest.raises(ValueError):
        parse("v^")


def _to_sympy(vecs):
    v = sympy.Symbol("v")
    return sympy.Matrix([[p.evaluate(v) for p in row] for row in vecs])


vectors = st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(vectors)
def test_rank_agrees_with_sympy(vecs):
    assert rank(vecs) == _to_sympy(vecs).rank(simplify=True)


@settings(max_examples=60, deadline=None)
@given(vectors, st.lists(small.filter(bool), min_size=4, max_size=4), st.lists(small, min_size=3, max_size=3))
def test_membership_invariant_under_row_scaling(vecs, scales, target):
    scaled = [[x * s for x in row] for row, s in zip(vecs, scales)]
    assert membership(vecs, target) == membership(scaled, target)
    assert membership(scaled, vecs[-1])


def test_membership_over_fraction_field():
    vecs = [[LaurentPoly({1: 1, 0: 1}), ZERO]]
    assert membership(vecs, [ONE, ZERO])
    assert not membership(vecs, [ZERO, ONE])
    with pytest.raises(ValueError):
        membership(vecs, [ONE])


def test_echelon_incremental():
    ech = FractionFreeEchelon()
    assert ech.insert({"a": ONE, "b": V})
    assert not ech.insert({"a": V, "b": V * V})
    assert ech.insert({"b": ONE})
    assert ech.rank == 2
    assert ech.contains({"a": QV})
    assert ech.reduce({"c": ONE})
