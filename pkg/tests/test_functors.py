"""Functor application and the exactness checker.

The interesting cases are the dishonest declarations: a functor whose
flags overstate its behaviour must be caught, and the stock hom functors
must witness exactly the violations their flags admit to."""

import random

import dataclasses
import pytest

from commacat.core import Mor, random_hom, short_exact
from commacat.functors import (
    apply_on_morphism,
    apply_on_object,
    arrow_cokernel,
    arrow_kernel,
    check_functor,
    constant,
    eval_vertex,
    hom_from,
    hom_into,
    identity_functor,
    one_plus,
    tensor,
    zero_functor,
)
from commacat.instances import ARROW_QUIVER, FinVect, Rep
from commacat.linalg import Matrix

VECT = FinVect(2)
REP = Rep(ARROW_QUIVER, 2)
S0, S1 = REP.simples()
P0 = REP.projective(0)


def projective_cover_ses():
    """0 -> S1 -> P0 -> S0 -> 0, the sequence that separates the vertex
    functors by exactness."""
    incl = REP.mor(S1, P0, [Matrix.zero(1, 0, 2), Matrix.identity(1, 2)])
    proj = REP.mor(P0, S0, [Matrix.identity(1, 2), Matrix.zero(0, 1, 2)])
    return short_exact(REP, incl, proj)


def test_identity_and_zero_are_clean():
    for f in (identity_functor(VECT), zero_functor(REP, VECT)):
        report = check_functor(f, samples=10)
        assert report.flag_mismatches == ()
        assert report.laws.violations == ()


def test_tensor_preserves_composition():
    f = tensor(VECT, 2)
    rng = random.Random(7)
    m1 = random_hom(VECT, rng, 2, 3)
    m2 = random_hom(VECT, rng, 3, 1)
    lhs = apply_on_morphism(f, VECT.compose(m2, m1))
    rhs = VECT.compose(apply_on_morphism(f, m2), apply_on_morphism(f, m1))
    assert lhs == rhs
    assert apply_on_object(f, 3) == 6


def test_eval_vertex_picks_the_dimension():
    f = eval_vertex(REP, 1, VECT)
    assert apply_on_object(f, P0) == 1
    assert apply_on_object(f, S0) == 0
    report = check_functor(f, samples=12)
    assert report.flag_mismatches == ()
    assert report.left_exact.violations == ()
    assert report.right_exact.violations == ()


def test_hom_from_projective_is_exact():
    # P0 is projective, so Hom(P0, -) keeps surjections surjective
    f = hom_from(REP, P0, VECT)
    honest = dataclasses.replace(f, right_exact=True)
    report = check_functor(honest, samples=16,
                           extra_ses=[projective_cover_ses()])
    assert report.flag_mismatches == ()
    assert report.right_exact.violations == ()


def test_hom_from_simple_witnesses_right_exactness_failure():
    f = hom_from(REP, S0, VECT)
    report = check_functor(f, samples=16,
                           extra_ses=[projective_cover_ses()])
    # declared not right exact, and the checker must actually see it fail
    assert not f.right_exact
    assert report.right_exact.violations != ()
    assert report.flag_mismatches == ()
    assert report.left_exact.violations == ()


def test_hom_from_simple_matches_arrow_kernel_on_objects():
    hf = hom_from(REP, S0, VECT)
    ak = arrow_kernel(REP, 0, VECT)
    rng = random.Random(2)
    for _ in range(15):
        x = REP.sample_object(rng, 4)
        assert apply_on_object(hf, x) == apply_on_object(ak, x)


def test_hom_from_sink_simple_matches_vertex_evaluation():
    hf = hom_from(REP, S1, VECT)
    ev = eval_vertex(REP, 1, VECT)
    rng = random.Random(3)
    for _ in range(15):
        x = REP.sample_object(rng, 4)
        assert apply_on_object(hf, x) == apply_on_object(ev, x)


def test_arrow_cokernel_left_exactness_fails_honestly():
    f = arrow_cokernel(REP, 0, VECT)
    report = check_functor(f, samples=16,
                           extra_ses=[projective_cover_ses()])
    assert report.left_exact.violations != ()
    assert report.flag_mismatches == ()


def test_overdeclared_flag_is_caught():
    lying = dataclasses.replace(arrow_cokernel(REP, 0, VECT), left_exact=True)
    report = check_functor(lying, samples=16)
    assert report.flag_mismatches != ()


def test_hom_into_is_contravariant():
    g = hom_into(VECT, 1, VECT)
    rng = random.Random(5)
    m1 = random_hom(VECT, rng, 2, 3)
    m2 = random_hom(VECT, rng, 3, 2)
    # images compose in the reverse order
    lhs = apply_on_morphism(g, VECT.compose(m2, m1))
    rhs = VECT.compose(apply_on_morphism(g, m1), apply_on_morphism(g, m2))
    assert lhs == rhs
    fm = apply_on_morphism(g, m1)
    assert fm.source == apply_on_object(g, 3)
    assert fm.target == apply_on_object(g, 2)


def test_hom_into_duality_dimensions():
    g = hom_into(VECT, 1, VECT)
    assert apply_on_object(g, 4) == 4
    report = check_functor(g, samples=12)
    assert report.flag_mismatches == ()
    assert report.left_exact.violations == ()
    assert report.right_exact.violations == ()


def test_hom_into_rep_loses_output_right_exactness():
    g = hom_into(REP, P0, VECT)
    assert g.contravariant
    assert g.left_exact and not g.right_exact
    report = check_functor(g, samples=16,
                           extra_ses=[projective_cover_ses()])
    assert report.flag_mismatches == ()


def test_one_plus_breaks_everything_it_declares_broken():
    f = one_plus(VECT)
    assert not f.additive
    report = check_functor(f, samples=16)
    assert report.additivity.violations != ()
    assert report.right_exact.violations != ()
    assert report.flag_mismatches == ()
    # composition and identity laws still hold
    assert report.laws.violations == ()


def test_constant_functor_flags_depend_on_the_value():
    triv = constant(REP, VECT, 0)
    assert triv.additive and triv.left_exact
    stuck = constant(REP, VECT, 2)
    assert not stuck.additive
    report = check_functor(stuck, samples=12)
    assert report.flag_mismatches == ()
    assert report.additivity.violations != ()


def test_functor_images_are_valid_morphisms():
    g = hom_into(REP, P0, VECT)
    rng = random.Random(8)
    for _ in range(10):
        x = REP.sample_object(rng, 3)
        y = REP.sample_object(rng, 3)
        m = random_hom(REP, rng, x, y)
        fm = apply_on_morphism(g, m)
        assert (fm.source, fm.target) == (apply_on_object(g, y),
                                          apply_on_object(g, x))
