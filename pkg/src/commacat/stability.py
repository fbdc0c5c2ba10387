"""Slope stability in exact arithmetic.

A stability function assigns a Gaussian rational to each simple class,
subject to: imaginary part nonnegative, and purely real values strictly
negative.  That certificate on simples is equivalent to the usual axioms
on all nonzero finite-length objects, because every effective class is a
nonnegative combination of simples with at least one positive entry.

Slopes are -Re/Im with an explicit infinity for the purely real case.  No
floats appear anywhere in this module; walls in the scan parameter are
found by solving exact linear equations and certified behaviorally by
recomputing filtrations on either side.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    CategoryInstance,
    Filtration,
    Subobject,
    factor_between,
    subobject_leq,
)
from .linalg import BudgetExceeded


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def scale(self, c) -> "GaussianRational":
        c = Fraction(c)
        return GaussianRational(c * self.re, c * self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self) -> str:
        sign = "+" if self.im >= 0 else ""
        return f"{self.re}{sign}{self.im}i"


ZERO = GaussianRational(Fraction(0), Fraction(0))


@functools.total_ordering
@dataclass(frozen=True)
class Slope:
    """An exact rational with a maximal infinite element adjoined."""

    finite: bool
    value: Fraction

    @classmethod
    def of(cls, q) -> "Slope":
        return cls(True, Fraction(q))

    @classmethod
    def infinite(cls) -> "Slope":
        return cls(False, Fraction(0))

    def __lt__(self, other: "Slope") -> bool:
        if not self.finite:
            return False
        if not other.finite:
            return True
        return self.value < other.value

    def __str__(self) -> str:
        return str(self.value) if self.finite else "inf"


@dataclass(frozen=True)
class StabilityFunction:
    """Linear map on class vectors given by one coefficient per simple.

    left_rank records, for functions on a two-component class lattice, how
    many leading coefficients belong to the left component; weights keeps
    the positive pair used by the weighted-sum constructor.
    """

    coefficients: tuple
    weights: Optional[tuple] = None
    left_rank: Optional[int] = None

    def __post_init__(self):
        for c in self.coefficients:
            if c.im < 0:
                raise ValueError("coefficient with negative imaginary part")
            if c.im == 0 and c.re >= 0:
                raise ValueError(
                    "purely real coefficient must be strictly negative")

    @property
    def rank(self) -> int:
        return len(self.coefficients)


def evaluate(z: StabilityFunction, vec) -> GaussianRational:
    if len(vec) != z.rank:
        raise ValueError("class vector length does not match the function")
    total = ZERO
    for coord, c in zip(vec, z.coefficients):
        if coord:
            total = total + c.scale(coord)
    return total


def slope(z: StabilityFunction, vec) -> Slope:
    val = evaluate(z, vec)
    if val.is_zero():
        raise ValueError("the zero class has no slope")
    if val.im == 0:
        return Slope.infinite()
    return Slope.of(-val.re / val.im)


def make_comma_stability(z_a: StabilityFunction, z_b: StabilityFunction,
                         x=1, y=1) -> StabilityFunction:
    """Weighted concatenation x*Z_A ++ y*Z_B on the product class lattice."""
    x, y = Fraction(x), Fraction(y)
    if x <= 0 or y <= 0:
        raise ValueError("weights must be strictly positive")
    coeffs = tuple(c.scale(x) for c in z_a.coefficients) + \
        tuple(c.scale(y) for c in z_b.coefficients)
    return StabilityFunction(coeffs, weights=(x, y),
                             left_rank=len(z_a.coefficients))


def restrict_comma_stability(z: StabilityFunction,
                             left_rank: Optional[int] = None):
    """Recover the two component functions by evaluating on one-sided
    classes; inverse to the weight-1 concatenation."""
    k = left_rank if left_rank is not None else z.left_rank
    if k is None:
        raise ValueError("no split point recorded; pass left_rank")
    return (StabilityFunction(z.coefficients[:k]),
            StabilityFunction(z.coefficients[k:]))


# -- the subobject poset, precomputed ------------------------------------


class SubobjectLattice:
    """The full subobject poset of one ambient object with keys, classes,
    the inclusion relation, and factor data memoized.

    Filtration searches walk this poset heavily; recomputing keys or
    quotients per step would repeat identical small solves many times.
    """

    def __init__(self, cat: CategoryInstance, x):
        self.cat = cat
        self.x = x
        self.subs = cat.enumerate_subobjects(x)
        self.keys = [cat.subobject_key(s.mono) for s in self.subs]
        if len(set(self.keys)) != len(self.keys):
            raise AssertionError("subobject enumeration repeated a key")
        self.classes = [cat.class_vector(s.obj) for s in self.subs]
        self.zero_index = next(i for i, s in enumerate(self.subs)
                               if cat.is_zero_object(s.obj))
        whole_key = cat.subobject_key(cat.identity(x))
        self.whole_index = self.keys.index(whole_key)
        self._leq = {}
        self._factors = {}

    def leq(self, i: int, j: int) -> bool:
        if i == j:
            return True
        if (i, j) not in self._leq:
            self._leq[(i, j)] = subobject_leq(self.cat, self.subs[i],
                                              self.subs[j])
        return self._leq[(i, j)]

    def strictly_above(self, i: int) -> list:
        return [j for j in range(len(self.subs))
                if j != i and self.leq(i, j)]

    def diff(self, j: int, i: int) -> tuple:
        return tuple(p - q for p, q in zip(self.classes[j], self.classes[i]))

    def factor_object(self, i: int, j: int):
        """The quotient subs[j] / subs[i] for a strict inclusion i < j."""
        if (i, j) not in self._factors:
            if i == self.zero_index:
                self._factors[(i, j)] = self.subs[j].obj
            else:
                step = factor_between(self.cat, self.subs[i], self.subs[j])
                if step is None:
                    raise AssertionError("factor requested outside the order")
                self._factors[(i, j)] = step[1]
        return self._factors[(i, j)]


# -- semistability and filtrations ---------------------------------------


def proper_nontrivial_subobjects(cat: CategoryInstance, x):
    for s in cat.enumerate_subobjects(x):
        if cat.is_zero_object(s.obj):
            continue
        if cat.is_epi(s.mono):
            continue
        yield s


def is_semistable(cat: CategoryInstance, z: StabilityFunction, x) -> bool:
    if cat.is_zero_object(x):
        raise ValueError("the zero object has no slope")
    mu = slope(z, cat.class_vector(x))
    return all(slope(z, cat.class_vector(s.obj)) <= mu
               for s in proper_nontrivial_subobjects(cat, x))


def is_stable(cat: CategoryInstance, z: StabilityFunction, x) -> bool:
    if cat.is_zero_object(x):
        raise ValueError("the zero object has no slope")
    mu = slope(z, cat.class_vector(x))
    return all(slope(z, cat.class_vector(s.obj)) < mu
               for s in proper_nontrivial_subobjects(cat, x))


@dataclass(frozen=True)
class HNFiltration:
    filtration: Filtration
    factor_slopes: tuple
    factor_classes: tuple

    @property
    def length(self) -> int:
        return len(self.factor_slopes)


def hn_filtration(cat: CategoryInstance, z: StabilityFunction, x,
                  lattice: Optional[SubobjectLattice] = None) -> HNFiltration:
    """Greedy construction through the subobject lattice.

    Each step adjoins the strictly larger subobject maximizing first the
    slope of the new factor, then the factor's total class size.  That
    maximizer is unique by standard slope theory; uniqueness is asserted,
    and the finished filtration is re-verified: every factor semistable,
    slopes strictly decreasing.
    """
    if cat.is_zero_object(x):
        raise ValueError("the zero object has no filtration")
    lat = lattice if lattice is not None else SubobjectLattice(cat, x)
    chain = [lat.zero_index]
    while chain[-1] != lat.whole_index:
        cur = chain[-1]
        best = None
        best_score = None
        ties = 0
        for t in lat.strictly_above(cur):
            diff = lat.diff(t, cur)
            score = (slope(z, diff), sum(diff))
            if best_score is None or score > best_score:
                best, best_score, ties = t, score, 1
            elif score == best_score:
                ties += 1
        if best is None:
            raise AssertionError("no strictly larger subobject found")
        if ties != 1:
            raise AssertionError(
                "maximal destabilizing subobject is not unique; "
                "the greedy invariant is broken")
        chain.append(best)
    factor_slopes = []
    factor_classes = []
    factors = []
    for prev, cur in zip(chain, chain[1:]):
        fobj = lat.factor_object(prev, cur)
        diff = lat.diff(cur, prev)
        if cat.class_vector(fobj) != diff:
            raise AssertionError("factor class disagrees with the chain")
        if not is_semistable(cat, z, fobj):
            raise AssertionError("greedy factor is not semistable")
        factors.append(fobj)
        factor_slopes.append(slope(z, diff))
        factor_classes.append(diff)
    for s1, s2 in zip(factor_slopes, factor_slopes[1:]):
        if not s2 < s1:
            raise AssertionError("factor slopes are not strictly decreasing")
    filt = Filtration(tuple(lat.subs[i] for i in chain), tuple(factors))
    return HNFiltration(filt, tuple(factor_slopes), tuple(factor_classes))


def hn_type(cat: CategoryInstance, z: StabilityFunction, x,
            lattice: Optional[SubobjectLattice] = None) -> tuple:
    return hn_filtration(cat, z, x, lattice).factor_classes


def exhaustive_hn_search(cat: CategoryInstance, z: StabilityFunction, x):
    """Independent oracle: depth-first search over every chain in the
    subobject lattice, keeping those whose factors are all semistable with
    strictly decreasing slopes.  Exactly one chain must survive; returns
    its factor classes."""
    if cat.is_zero_object(x):
        raise ValueError("the zero object has no filtration")
    lat = SubobjectLattice(cat, x)
    semistable_memo = {}

    def factor_semistable(i, j):
        if (i, j) not in semistable_memo:
            semistable_memo[(i, j)] = is_semistable(cat, z,
                                                    lat.factor_object(i, j))
        return semistable_memo[(i, j)]

    survivors = []

    def extend(chain, classes, last_slope):
        cur = chain[-1]
        if cur == lat.whole_index:
            survivors.append(tuple(classes))
            return
        for t in lat.strictly_above(cur):
            diff = lat.diff(t, cur)
            mu = slope(z, diff)
            if last_slope is not None and not mu < last_slope:
                continue
            if not factor_semistable(cur, t):
                continue
            chain.append(t)
            classes.append(diff)
            extend(chain, classes, mu)
            chain.pop()
            classes.pop()

    extend([lat.zero_index], [], None)
    if len(survivors) != 1:
        raise AssertionError(
            f"{len(survivors)} filtrations satisfy the defining conditions; "
            "expected exactly one")
    return survivors[0]


# -- the scan over the weighting parameter -------------------------------


def stability_from_geometry(geometry, alpha) -> StabilityFunction:
    """Weighted function for triples over a toy geometry: left simples get
    -alpha times the dimension functional, right simples get minus the
    degree plus i times the rank."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("the scan parameter must be a positive rational")
    coeffs = [GaussianRational(-alpha * Fraction(g), Fraction(0))
              for g in geometry.dim_gamma]
    coeffs += [GaussianRational(Fraction(-d), Fraction(r))
               for d, r in zip(geometry.deg, geometry.rk)]
    return StabilityFunction(tuple(coeffs),
                             left_rank=len(geometry.dim_gamma))


def _slope_data(geometry, vec):
    """(degree, dimension, rank) functionals on a two-part class vector."""
    k = len(geometry.dim_gamma)
    g = sum(Fraction(gi) * v for gi, v in zip(geometry.dim_gamma, vec[:k]))
    d = sum(Fraction(di) * v for di, v in zip(geometry.deg, vec[k:]))
    r = sum(Fraction(ri) * v for ri, v in zip(geometry.rk, vec[k:]))
    return d, g, r


def nested_factor_classes(lat: SubobjectLattice) -> tuple:
    """Every class of the form cls(t) - cls(s) over strictly nested
    subobject pairs s < t: the classes whose slopes steer filtrations."""
    seen = set()
    for i in range(len(lat.subs)):
        for j in lat.strictly_above(i):
            seen.add(lat.diff(j, i))
    return tuple(sorted(seen))


def wall_candidates(lat: SubobjectLattice, geometry, lo, hi) -> tuple:
    """Parameter values inside (lo, hi) where two finite slope functions
    of nested-factor classes cross."""
    lo, hi = Fraction(lo), Fraction(hi)
    data = [_slope_data(geometry, c) for c in nested_factor_classes(lat)]
    out = set()
    for i in range(len(data)):
        d1, g1, r1 = data[i]
        if r1 == 0:
            continue
        for j in range(i + 1, len(data)):
            d2, g2, r2 = data[j]
            if r2 == 0:
                continue
            den = g1 * r2 - g2 * r1
            if den == 0:
                continue
            star = (d2 * r1 - d1 * r2) / den
            if lo < star < hi and star > 0:
                out.add(star)
    return tuple(sorted(out))


@dataclass(frozen=True)
class WallCertificate:
    alpha: Fraction
    type_below: tuple
    type_at: tuple
    type_above: tuple

    @property
    def is_wall(self) -> bool:
        return self.type_below != self.type_above


@dataclass(frozen=True)
class AlphaScanReport:
    lo: Fraction
    hi: Fraction
    candidates: tuple
    certificates: tuple

    @property
    def walls(self) -> tuple:
        return tuple(c.alpha for c in self.certificates if c.is_wall)


def _half_min_gap(candidates, lo, hi) -> Fraction:
    gaps = [hi - lo]
    pts = sorted(candidates)
    for p, q in zip(pts, pts[1:]):
        gaps.append(q - p)
    if pts:
        gaps.append(pts[0] - lo)
        gaps.append(hi - pts[-1])
    return min(g for g in gaps if g > 0) / 2


def alpha_scan(cat, x, geometry, lo, hi) -> AlphaScanReport:
    """Find every parameter value in (lo, hi) where the filtration type of
    x changes.

    Candidates come from exact pairwise slope-crossing equations; each is
    certified by recomputing the filtration just below, at, and just above
    it, with the probe offset set to half the minimum candidate gap.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo <= 0 or hi <= lo:
        raise ValueError("scan range must satisfy 0 < lo < hi")
    lat = SubobjectLattice(cat, x)
    candidates = wall_candidates(lat, geometry, lo, hi)
    certs = []
    if candidates:
        eps = _half_min_gap(candidates, lo, hi)
        for w in candidates:
            certs.append(WallCertificate(
                w,
                hn_type(cat, stability_from_geometry(geometry, w - eps), x, lat),
                hn_type(cat, stability_from_geometry(geometry, w), x, lat),
                hn_type(cat, stability_from_geometry(geometry, w + eps), x, lat)))
    return AlphaScanReport(lo, hi, candidates, tuple(certs))


def alpha_grid_probe(cat, x, geometry, lo, hi, step=None,
                     max_points: int = 4096) -> tuple:
    """Independent wall oracle: walk a rational grid finer than the
    minimum candidate gap and report one enclosed candidate for every
    observed type change.  Grid points that land exactly on a candidate
    are nudged upward slightly so every change stays bracketed."""
    lo, hi = Fraction(lo), Fraction(hi)
    lat = SubobjectLattice(cat, x)
    candidates = set(wall_candidates(lat, geometry, lo, hi))
    if step is None:
        step = _half_min_gap(sorted(candidates), lo, hi)
    step = Fraction(step)
    if (hi - lo) / step > max_points:
        raise BudgetExceeded("grid for the scan oracle is too fine")
    points = []
    k = 0
    while True:
        p = lo + k * step
        if p >= hi:
            break
        if p in candidates:
            p += step / 127
        points.append(p)
        k += 1
    points.append(hi)
    types = [hn_type(cat, stability_from_geometry(geometry, p), x, lat)
             for p in points]
    walls = []
    for p1, t1, p2, t2 in zip(points, types, points[1:], types[1:]):
        if t1 == t2:
            continue
        inside = [w for w in candidates if p1 < w <= p2]
        if len(inside) != 1:
            raise AssertionError(
                "a type change is not bracketed by exactly one candidate; "
                "the grid is too coarse")
        walls.append(inside[0])
    return tuple(sorted(walls))
