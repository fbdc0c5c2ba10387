"""Stability data: half-plane validity, exact slopes, greedy against
brute-force filtrations, and the wall scan on the two-step system."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from commacat.comma import CommaCategory
from commacat.core import Mor, subobject_ses
from commacat.functors import hom_from, identity_functor
from commacat.instances import ARROW_QUIVER, FinVect, Rep, ToyGeometryConfig
from commacat.linalg import Matrix
from commacat.stability import (
    GaussianRational,
    Slope,
    StabilityFunction,
    SubobjectLattice,
    alpha_grid_probe,
    alpha_scan,
    evaluate,
    exhaustive_hn_search,
    hn_filtration,
    hn_type,
    is_semistable,
    is_stable,
    make_comma_stability,
    nested_factor_classes,
    restrict_comma_stability,
    slope,
    stability_from_geometry,
    wall_candidates,
)

VECT = FinVect(2)
REP = Rep(ARROW_QUIVER, 2)
ARROW = CommaCategory(identity_functor(VECT), identity_functor(VECT))

# the arrow-instance charge: left simples weigh -1, right simples weigh i
Z = StabilityFunction((GaussianRational(-1, 0), GaussianRational(0, 1)))

seeds = st.integers(0, 10 ** 6)


def triple(a, b, rows):
    return ARROW.obj(a, b, Mor(a, b, Matrix.from_rows(rows, 2, cols=a)))


IDENTITY_MAP = triple(1, 1, [[1]])
ZERO_MAP = triple(1, 1, [[0]])


# -- values and slopes ---------------------------------------------------


def test_gaussian_rational_arithmetic():
    v = GaussianRational(Fraction(1, 2), 3) + GaussianRational(Fraction(-1, 2), -3)
    assert v.is_zero()
    assert str(GaussianRational(1, -2)) == "1-2i"


def test_half_plane_validity():
    with pytest.raises(ValueError):
        StabilityFunction((GaussianRational(0, -1),))
    with pytest.raises(ValueError):
        StabilityFunction((GaussianRational(1, 0),))
    with pytest.raises(ValueError):
        StabilityFunction((GaussianRational(0, 0),))
    StabilityFunction((GaussianRational(-3, 0),))  # fine


def test_evaluate_is_linear():
    assert evaluate(Z, (2, 3)) == GaussianRational(-2, 3)
    with pytest.raises(ValueError):
        evaluate(Z, (1,))


def test_slope_values():
    assert slope(Z, (1, 0)) == Slope.infinite()
    assert slope(Z, (0, 1)) == Slope.of(0)
    assert slope(Z, (1, 1)) == Slope.of(1)
    with pytest.raises(ValueError):
        slope(Z, (0, 0))


def test_slope_ordering():
    inf = Slope.infinite()
    assert Slope.of(5) < inf
    assert not inf < inf
    assert Slope.of(Fraction(1, 3)) < Slope.of(Fraction(1, 2))
    assert max(Slope.of(2), inf, Slope.of(-7)) == inf


def test_weighted_sum_and_restriction_round_trip():
    za = StabilityFunction((GaussianRational(-1, 0),))
    zb = StabilityFunction((GaussianRational(0, 1), GaussianRational(-2, 1)))
    z = make_comma_stability(za, zb)
    assert z.rank == 3
    assert z.left_rank == 1
    ra, rb = restrict_comma_stability(z)
    assert ra.coefficients == za.coefficients
    assert rb.coefficients == zb.coefficients
    with pytest.raises(ValueError):
        make_comma_stability(za, zb, x=0)
    with pytest.raises(ValueError):
        restrict_comma_stability(StabilityFunction(za.coefficients))


def test_weighted_sum_scales_components():
    za = StabilityFunction((GaussianRational(-1, 0),))
    zb = StabilityFunction((GaussianRational(0, 1),))
    z = make_comma_stability(za, zb, x=2, y=3)
    assert z.coefficients[0] == GaussianRational(-2, 0)
    assert z.coefficients[1] == GaussianRational(0, 3)


# -- semistability and filtrations ---------------------------------------


def test_simples_are_stable():
    for s in ARROW.simples():
        assert is_stable(ARROW, Z, s)


def test_identity_triple_is_stable():
    assert is_stable(ARROW, Z, IDENTITY_MAP)
    assert is_semistable(ARROW, Z, IDENTITY_MAP)


def test_zero_structure_map_destabilizes():
    # the left axis sits inside with infinite slope
    assert not is_semistable(ARROW, Z, ZERO_MAP)


def test_hn_of_the_split_triple():
    hn = hn_filtration(ARROW, Z, ZERO_MAP)
    assert hn.factor_classes == ((1, 0), (0, 1))
    assert hn.factor_slopes == (Slope.infinite(), Slope.of(0))
    assert hn.length == 2


def test_hn_of_a_semistable_object_is_one_step():
    hn = hn_filtration(ARROW, Z, IDENTITY_MAP)
    assert hn.length == 1
    assert hn.factor_slopes == (Slope.of(1),)


def test_hn_classes_sum_to_the_total():
    rng = random.Random(17)
    for _ in range(20):
        x = ARROW.sample_object(rng, 4)
        if ARROW.is_zero_object(x):
            continue
        hn = hn_filtration(ARROW, Z, x)
        total = tuple(sum(c) for c in zip(*hn.factor_classes))
        assert total == ARROW.class_vector(x)


@settings(deadline=None, max_examples=20)
@given(seeds)
def test_hn_slopes_strictly_decrease(seed):
    rng = random.Random(seed)
    x = ARROW.sample_object(rng, 4)
    if ARROW.is_zero_object(x):
        return
    hn = hn_filtration(ARROW, Z, x)
    for s1, s2 in zip(hn.factor_slopes, hn.factor_slopes[1:]):
        assert s2 < s1


@settings(deadline=None, max_examples=12)
@given(seeds)
def test_greedy_matches_the_brute_force_search(seed):
    rng = random.Random(seed)
    x = ARROW.sample_object(rng, 4)
    if ARROW.is_zero_object(x):
        return
    assert hn_type(ARROW, Z, x) == exhaustive_hn_search(ARROW, Z, x)


def test_hn_rejects_the_zero_object():
    with pytest.raises(ValueError):
        hn_filtration(ARROW, Z, ARROW.zero_object())


def test_lattice_reuse_gives_identical_answers():
    lat = SubobjectLattice(ARROW, ZERO_MAP)
    assert hn_type(ARROW, Z, ZERO_MAP, lat) == hn_type(ARROW, Z, ZERO_MAP)


def test_seesaw_inequality_over_subobject_sequences():
    """On each short exact sequence the middle slope sits between the
    outer two."""
    z_rep = StabilityFunction((GaussianRational(1, 1), GaussianRational(-1, 1)))
    checked = 0
    for x in REP.enumerate_objects(3):
        if REP.is_zero_object(x):
            continue
        for s in REP.enumerate_subobjects(x):
            ses = subobject_ses(REP, s)
            parts = [ses.sub.source, ses.quot.target]
            if any(REP.is_zero_object(p) for p in parts):
                continue
            mus = slope(z_rep, REP.class_vector(ses.sub.source))
            muq = slope(z_rep, REP.class_vector(ses.quot.target))
            mum = slope(z_rep, REP.class_vector(x))
            assert min(mus, muq) <= mum <= max(mus, muq)
            checked += 1
    assert checked > 50


# -- the parameter scan --------------------------------------------------


def scan_setup():
    """Sections k mapping into the global sections of a rank-two bundle
    stand-in; one genuine wall inside (1/2, 4)."""
    probe = REP.projective(0)
    cat = CommaCategory(identity_functor(VECT), hom_from(REP, probe, VECT),
                        assume_abelian=True)
    bundle = REP.obj((1, 2), [Matrix.from_rows([[1], [0]], 2)])
    sigma = Mor(1, 1, Matrix.from_rows([[1]], 2))
    system = cat.obj(1, bundle, sigma)
    geometry = ToyGeometryConfig.scan_coherent()
    return cat, system, geometry


def test_geometry_stability_needs_positive_alpha():
    with pytest.raises(ValueError):
        stability_from_geometry(ToyGeometryConfig.scan_coherent(), 0)


def test_scan_range_validation():
    cat, system, geometry = scan_setup()
    with pytest.raises(ValueError):
        alpha_scan(cat, system, geometry, 2, 1)
    with pytest.raises(ValueError):
        alpha_scan(cat, system, geometry, 0, 1)


def test_wall_candidates_frozen():
    cat, system, geometry = scan_setup()
    lat = SubobjectLattice(cat, system)
    assert len(lat.subs) == 9
    cands = wall_candidates(lat, geometry, Fraction(1, 2), 4)
    assert cands == (Fraction(2, 3), Fraction(1), Fraction(4, 3), Fraction(2))


def test_scan_certifies_exactly_one_wall():
    cat, system, geometry = scan_setup()
    report = alpha_scan(cat, system, geometry, Fraction(1, 2), 4)
    assert report.walls == (Fraction(2),)
    cert = next(c for c in report.certificates if c.alpha == 2)
    assert cert.type_below == ((0, 0, 2), (1, 1, 0))
    assert cert.type_at == ((1, 1, 2),)
    assert cert.type_above == ((1, 1, 1), (0, 0, 1))
    # candidates that certify as non-walls keep the same type both sides
    for c in report.certificates:
        if not c.is_wall:
            assert c.type_below == c.type_above


def test_grid_oracle_agrees():
    cat, system, geometry = scan_setup()
    report = alpha_scan(cat, system, geometry, Fraction(1, 2), 4)
    oracle = alpha_grid_probe(cat, system, geometry, Fraction(1, 2), 4)
    assert tuple(sorted(report.walls)) == oracle


def test_scaling_the_geometry_moves_nothing():
    cat, system, geometry = scan_setup()
    base = alpha_scan(cat, system, geometry, Fraction(1, 2), 4)
    doubled = alpha_scan(cat, system, geometry.scaled(2), Fraction(1, 2), 4)
    assert base.walls == doubled.walls
    assert base.candidates == doubled.candidates


def test_rank_degenerate_geometry_has_candidates_but_no_walls():
    cat, system, _ = scan_setup()
    flat = ToyGeometryConfig.default_coherent()
    report = alpha_scan(cat, system, flat, Fraction(1, 2), 4)
    assert set(report.candidates) == {Fraction(1), Fraction(2)}
    assert report.walls == ()


def test_nested_factor_classes_cover_the_total():
    cat, system, _ = scan_setup()
    lat = SubobjectLattice(cat, system)
    classes = nested_factor_classes(lat)
    assert (1, 1, 2) in classes
    assert all(any(c) for c in classes)
