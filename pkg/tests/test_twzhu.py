"""Tests for the projection onto the even-part envelope, the singular image,
its lowered partner, the eigenvalue polynomials, and the adjoint closure."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from a2l2.envelope import CartanPoly, pbw_algebra, uea_combine, uea_scale, uea_unit
from a2l2.liealg import (
    E,
    b_type_generators,
    bracket,
    g0_basis,
    invariant_form,
    sample_sparse,
    split_pm,
)
from a2l2.twzhu import (
    _binom_half,
    compute_v1,
    lowered_elements,
    lowered_polynomials,
    poly_span_equal,
    project,
    projection_context,
    r0_basis,
    r0_zero_weight_members,
    reference_polynomials,
    v1_closed_form,
    zhu_image_closed_form,
    zhu_singular_image,
)
from a2l2.vacuum import (
    mode_action,
    singular_vector,
    split_mode_basis,
    state_from_ops,
    zero_mode_orbit,
)

from helpers_spin import spin_hw_coefficient, verify_spin_homomorphism


def test_binom_half_values():
    assert _binom_half(1) == Fraction(1, 2)
    assert _binom_half(2) == Fraction(-1, 8)
    assert _binom_half(3) == Fraction(1, 16)


# ------------------------------------------------------------- projection

def test_project_pinned_values_rank1():
    ctx = projection_context(1)
    basis = ctx.split
    k = ctx.level_k
    # even factor at depth 2 flips sign: image of hb1(-2)|0> is -hb1
    gens = b_type_generators(1)
    s = state_from_ops(basis, k, [(gens.hbar_l, -2)])
    assert project(s, ctx) == {(1,): Fraction(-1)}
    # ordered even pair: raising then lowering multiplies on the right
    ep = basis.elems[2]  # Ep[1,2]
    em = basis.elems[0]  # Ep[2,1]
    s = state_from_ops(basis, k, [(ep, -1), (em, -1)])
    assert project(s, ctx) == {(0, 2): Fraction(1)}
    # single odd factor dies
    odd = basis.elems[basis.g0_count]
    s = state_from_ops(basis, k, [(odd, -1)])
    assert project(s, ctx) == {}
    s = state_from_ops(basis, k, [(odd, -2)])
    assert project(s, ctx) == {}


def test_project_pair_closed_form_100_samples():
    rng = random.Random(314)
    for _ in range(100):
        l = rng.choice([1, 2])
        ctx = projection_context(l)
        alg = ctx.alg
        k = ctx.level_k
        a = sample_sparse(rng, l)
        b = sample_sparse(rng, l)
        s = state_from_ops(ctx.split, k, [(a, -1), (b, -1)])
        got = project(s, ctx)
        ap, am = split_pm(a)
        bp, bm = split_pm(b)
        want = {}
        if not bp.is_zero() and not ap.is_zero():
            uea_combine(want, alg.mul(alg.lie2uea(bp), alg.lie2uea(ap)))
        comm = bracket(am, bm)
        if not comm.is_zero():
            uea_combine(want, alg.lie2uea(comm), Fraction(-1, 2))
        pairing = invariant_form(am, bm)
        if pairing:
            uea_combine(want, uea_unit(), k * pairing / 8)
        assert got == want


def test_project_intertwines_zero_modes():
    # projecting x(0).w equals the adjoint action of x on the projection
    for l in (1, 2):
        ctx = projection_context(l)
        alg = ctx.alg
        orbit = zero_mode_orbit(singular_vector(l), l)
        sample = orbit[:: max(1, len(orbit) // 4)]
        gens = g0_basis(l)[:: max(1, len(g0_basis(l)) // 5)]
        for w in sample:
            pw = project(w, ctx)
            for x in gens:
                lhs = project(mode_action((x, 0), w), ctx)
                assert lhs == alg.ad(x, pw)


def test_project_odd_shortcut_agrees():
    rng = random.Random(99)
    for l in (1, 2):
        with_cut = projection_context(l, use_odd_shortcut=True)
        without = projection_context(l, use_odd_shortcut=False)
        v = singular_vector(l)
        assert project(v, with_cut) == project(v, without)
        basis = split_mode_basis(l)
        for _ in range(10):
            ops = []
            for _ in range(rng.randint(1, 2)):
                x = basis.elems[rng.randrange(len(basis.elems))]
                ops.append((x, -rng.randint(1, 2)))
            s = state_from_ops(basis, level_k := with_cut.level_k, ops)
            assert project(s, with_cut) == project(s, without)


def test_project_rejects_wrong_level():
    ctx = projection_context(1)
    basis = split_mode_basis(1)
    from a2l2.vacuum import vacuum

    with pytest.raises(ValueError):
        project(vacuum(basis, Fraction(0)), ctx)


# ---------------------------------------------------------- singular image

def test_singular_image_matches_closed_form():
    for l in (1, 2, 3):
        ctx = projection_context(l)
        assert zhu_singular_image(ctx) == zhu_image_closed_form(ctx)


def test_singular_image_literal_rank1():
    ctx = projection_context(1)
    assert zhu_singular_image(ctx) == {(2, 2): Fraction(1)}


def test_singular_image_weight():
    for l in (1, 2, 3):
        ctx = projection_context(l)
        img = zhu_singular_image(ctx)
        expect = [Fraction(0)] * l
        if l == 1:
            expect[0] = Fraction(4)
        else:
            expect[0] = Fraction(2)
        assert ctx.alg.weight_of(img) == tuple(expect)


# --------------------------------------------------------- lowered partner

def test_v1_matches_closed_form():
    for l in (1, 2, 3):
        ctx = projection_context(l)
        assert compute_v1(ctx) == v1_closed_form(ctx)


def test_v1_literal_rank1():
    ctx = projection_context(1)
    assert compute_v1(ctx) == {(1, 2): Fraction(-1), (2,): Fraction(1)}


# ------------------------------------------------------------- polynomials

def test_lowered_elements_have_weight_zero():
    for l in (1, 2, 3):
        ctx = projection_context(l)
        zero = tuple(Fraction(0) for _ in range(l))
        for u in lowered_elements(ctx):
            assert ctx.alg.weight_of(u) == zero


def test_lowered_polynomials_match_reference():
    for l in (1, 2, 3):
        ctx = projection_context(l)
        polys = lowered_polynomials(ctx)
        assert polys == reference_polynomials(l)
        assert polys != reference_polynomials(l, plus_half=True)


def test_lowered_polynomial_strings():
    ctx = projection_context(3)
    strings = [p.factored_h_string() for p in lowered_polynomials(ctx)]
    assert strings == [
        "h1*(h1 + 2*h2 + 2*h3 + 3/2)",
        "h2*(h2 + 2*h3 + 1/2)",
        "h3*(h3 - 1/2)",
    ]
    ctx1 = projection_context(1)
    assert [p.factored_h_string() for p in lowered_polynomials(ctx1)] == [
        "h1*(h1 - 1/2)"
    ]


def test_lowered_elements_vanish_at_both_dominant_integral_weights():
    # trivial weight: constant term; top spin weight: spinor-module oracle
    for l in (1, 2, 3):
        verify_spin_homomorphism(l)
        ctx = projection_context(l)
        for u in lowered_elements(ctx):
            assert u.get((), Fraction(0)) == 0
            assert spin_hw_coefficient(l, u) == 0


def test_reference_polynomial_eval_spot_checks():
    # rank 2: p_1 = x1(x1 + x2 + 1/2), p_2 = x2(x2 - 1)/4
    p1, p2 = reference_polynomials(2)
    assert p1.eval((Fraction(-1, 2), Fraction(0))) == 0
    assert p1.eval((Fraction(1), Fraction(1))) == Fraction(5, 2)
    assert p2.eval((Fraction(0), Fraction(1))) == 0
    assert p2.eval((Fraction(0), Fraction(3))) == Fraction(3, 2)


# ------------------------------------------------------------ the closure

def test_r0_dimension_and_zero_weight_polynomials():
    for l in (1, 2, 3):
        ctx = projection_context(l)
        basis = r0_basis(ctx)
        assert len(basis) == 2 * l * l + 3 * l
        members = r0_zero_weight_members(ctx)
        assert len(members) == l
        member_polys = [ctx.alg.cartan_polynomial(u) for u in members]
        refs = reference_polynomials(l)
        assert poly_span_equal(member_polys, refs)
        assert not poly_span_equal(member_polys, [CartanPoly.variable(l, 1)])
