"""Hom-space solving and the constructive universal-property verifiers,
exercised on the two instance categories."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from commacat.core import (
    all_homs,
    factor_between,
    hom_dim,
    image,
    coimage,
    random_hom,
    ses_audit,
    short_exact,
    solve_right,
    solve_through_epi,
    solve_through_mono,
    subobject_ses,
    try_through_mono,
    verify_biproduct,
    verify_category,
    verify_cokernel_universal,
    verify_induced_iso,
    verify_kernel_universal,
    verify_ses,
)
from commacat.errors import ExactnessViolation
from commacat.counterexample import bundled_ses
from commacat.instances import ARROW_QUIVER, FinVect, Rep
from commacat.linalg import Matrix
from commacat.core import Mor

VECT = FinVect(2)
REP = Rep(ARROW_QUIVER, 2)

seeds = st.integers(0, 10 ** 6)


def vect_mor(rows):
    m = Matrix.from_rows(rows, 2)
    return Mor(m.cols, m.rows, m)


def test_hom_dim_finvect():
    assert hom_dim(VECT, 2, 3) == 6
    assert hom_dim(VECT, 0, 3) == 0


def test_all_homs_counts_the_whole_space():
    homs = list(all_homs(VECT, 1, 2, max_count=100))
    assert len(homs) == 4
    assert len({VECT.mor_flat(m) for m in homs}) == 4


@given(seeds)
def test_solve_right_round_trip(seed):
    rng = random.Random(seed)
    g = random_hom(VECT, rng, 2, 3)
    u = solve_right(VECT, 2, 3, [(VECT.identity(2), g)])
    assert u == g


def test_try_through_mono_reports_failure():
    # nothing maps into the first axis and lands on the second
    mono = vect_mor([[1], [0]])
    bad = vect_mor([[0], [1]])
    assert try_through_mono(VECT, mono, bad) is None


@given(seeds)
def test_factor_through_mono(seed):
    rng = random.Random(seed)
    mono = vect_mor([[1, 0], [0, 1], [0, 0]])
    inner = random_hom(VECT, rng, 2, 2)
    m = VECT.compose(mono, inner)
    lift = solve_through_mono(VECT, mono, m)
    assert VECT.compose(mono, lift) == m


@given(seeds)
def test_factor_through_epi(seed):
    rng = random.Random(seed)
    epi = vect_mor([[1, 0, 0], [0, 1, 0]])
    outer = random_hom(VECT, rng, 2, 2)
    m = VECT.compose(outer, epi)
    desc = solve_through_epi(VECT, epi, m)
    assert VECT.compose(desc, epi) == m


@given(seeds)
def test_image_factorization(seed):
    rng = random.Random(seed)
    m = random_hom(VECT, rng, 3, 2)
    iobj, into = image(VECT, m)
    cobj, onto = coimage(VECT, m)
    assert VECT.is_mono(into)
    assert VECT.is_epi(onto)
    assert iobj == cobj == 3 - VECT.kernel(m)[0]


@given(seeds)
def test_induced_morphism_is_iso(seed):
    rng = random.Random(seed)
    m = random_hom(REP, rng, REP.sample_object(rng, 3), REP.sample_object(rng, 3))
    assert verify_induced_iso(REP, m) == []


def test_kernel_universal_property_on_instances():
    rng = random.Random(5)
    for inst in (VECT, REP):
        for _ in range(20):
            x = inst.sample_object(rng, 3)
            y = inst.sample_object(rng, 3)
            m = random_hom(inst, rng, x, y)
            kobj, kmor = inst.kernel(m)
            assert verify_kernel_universal(inst, m, kobj, kmor, rng) == []
            cobj, cmor = inst.cokernel(m)
            assert verify_cokernel_universal(inst, m, cobj, cmor, rng) == []


def test_wrong_kernel_is_rejected():
    m = vect_mor([[1, 0]])  # kernel is the second axis
    bad = Mor(1, 2, Matrix.from_rows([[1], [0]], 2))
    rng = random.Random(0)
    assert verify_kernel_universal(VECT, m, 1, bad, rng) != []


def test_biproduct_laws():
    rng = random.Random(1)
    for inst in (VECT, REP):
        x = inst.sample_object(rng, 2)
        y = inst.sample_object(rng, 2)
        assert verify_biproduct(inst, x, y) == []


def test_bundled_ses_verifies():
    vect, ses = bundled_ses()
    assert verify_ses(vect, ses.sub, ses.quot) == []


def test_short_exact_rejects_non_exact():
    sub = vect_mor([[1], [0]])
    ok = short_exact(VECT, sub, vect_mor([[0, 1]]))
    assert ok.sub is sub
    with pytest.raises(ExactnessViolation):
        # quot does not kill the sub
        short_exact(VECT, sub, vect_mor([[1, 1]]))


def test_subobject_ses_over_every_subrep():
    x = REP.obj((1, 1), [Matrix.from_rows([[1]], 2)])
    for sub in REP.enumerate_subobjects(x):
        ses = subobject_ses(REP, sub)
        assert verify_ses(REP, ses.sub, ses.quot) == []


def test_factor_between_nested_subspaces():
    subs = VECT.enumerate_subobjects(3)
    lines = [s for s in subs if s.obj == 1]
    planes = [s for s in subs if s.obj == 2]
    hits = 0
    for small in lines:
        for big in planes:
            res = factor_between(VECT, small, big)
            if res is None:
                continue
            hits += 1
            incl, fobj, proj = res
            assert VECT.compose(big.mono, incl) == small.mono
            assert fobj == 1
            assert VECT.is_epi(proj)
    # every plane in F_2^3 holds exactly 3 of the 7 lines
    assert hits == 21


def test_ses_audit_hook_collects():
    vect, ses = bundled_ses()
    with ses_audit() as log:
        short_exact(vect, ses.sub, ses.quot)
        assert len(log) == 1
        inst, recorded = log[0]
        assert inst is vect
        assert recorded.sub == ses.sub


@settings(deadline=None)
@given(st.sampled_from([2, 3]))
def test_verify_category_clean_finvect(p):
    report = verify_category(FinVect(p), samples=12, max_dim=3)
    assert report.violations == ()
    assert report.checks > 0


@settings(deadline=None, max_examples=5)
@given(seeds)
def test_verify_category_clean_rep(seed):
    report = verify_category(REP, samples=8, seed=seed, max_dim=3)
    assert report.violations == ()
