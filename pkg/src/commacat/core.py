"""Contract shared by every concrete category in the package, plus the
generic constructions that only need that contract.

A category instance knows its objects and morphisms as immutable values,
can enumerate a canonical basis of any hom space, and can flatten a
morphism's carrier to a coordinate tuple over F_p.  Everything else
(images, induced maps, universal-property certification, short exact
sequences) is derived here by solving linear systems in those coordinates,
so the same code certifies vector spaces, quiver representations, and the
comma-style categories built on top of them.

Convention: compose(m2, m1) applies m1 first.  A morphism equals another
iff their endpoint objects and carriers are equal as values.
"""

from __future__ import annotations

import abc
import itertools
import random
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence

from .errors import ExactnessViolation
from .linalg import BudgetExceeded, Matrix, kernel_basis, rank, solve


@dataclass(frozen=True)
class Mor:
    """A morphism: endpoint object handles plus an instance-specific carrier."""

    source: Any
    target: Any
    data: Any


@dataclass(frozen=True)
class Subobject:
    """An object together with a chosen mono into the ambient object."""

    obj: Any
    mono: Mor


@dataclass(frozen=True)
class ShortExactSequence:
    sub: Mor
    quot: Mor

    @property
    def middle(self):
        return self.sub.target


@dataclass(frozen=True)
class Filtration:
    """An ascending chain of subobjects of one ambient object.

    steps[0] is the zero subobject and steps[-1] is the whole object; the
    factors are the successive quotients steps[i] / steps[i-1].
    """

    steps: tuple
    factors: tuple


@dataclass(frozen=True)
class CategoryReport:
    checks: int
    violations: tuple

    @property
    def clean(self) -> bool:
        return not self.violations


class CategoryInstance(abc.ABC):
    """Abstract finite abelian category over a fixed prime field.

    Concrete subclasses are frozen dataclasses, so two instances built from
    the same data are interchangeable and usable as cache keys.
    """

    field: int

    # -- objects ---------------------------------------------------------

    @property
    @abc.abstractmethod
    def class_rank(self) -> int:
        """Rank of the free abelian group on the simple classes."""

    @abc.abstractmethod
    def zero_object(self):
        ...

    @abc.abstractmethod
    def is_zero_object(self, x) -> bool:
        ...

    @abc.abstractmethod
    def dim_total(self, x) -> int:
        """Total dimension over F_p, used for budgets and sweep bounds."""

    @abc.abstractmethod
    def class_vector(self, x) -> tuple:
        """Coordinates of [x] in the simple-class basis."""

    @abc.abstractmethod
    def simples(self) -> tuple:
        ...

    @abc.abstractmethod
    def enumerate_objects(self, max_total_dim: int) -> Iterator:
        ...

    @abc.abstractmethod
    def sample_object(self, rng: random.Random, max_total_dim: int):
        ...

    def describe_object(self, x) -> str:
        return repr(x)

    # -- morphisms -------------------------------------------------------

    @abc.abstractmethod
    def identity(self, x) -> Mor:
        ...

    @abc.abstractmethod
    def zero_morphism(self, x, y) -> Mor:
        ...

    @abc.abstractmethod
    def compose(self, m2: Mor, m1: Mor) -> Mor:
        ...

    @abc.abstractmethod
    def hom_basis(self, x, y) -> tuple:
        """Canonical basis of Hom(x, y); the flats of the basis form a
        reduced-row-echelon matrix, which later solves rely on."""

    @abc.abstractmethod
    def mor_flat(self, m: Mor) -> tuple:
        ...

    @abc.abstractmethod
    def mor_from_flat(self, x, y, flat: tuple) -> Mor:
        ...

    def add(self, m1: Mor, m2: Mor) -> Mor:
        if (m1.source, m1.target) != (m2.source, m2.target):
            raise ValueError("cannot add morphisms with different endpoints")
        p = self.field
        flat = tuple((a + b) % p for a, b in zip(self.mor_flat(m1), self.mor_flat(m2)))
        return self.mor_from_flat(m1.source, m1.target, flat)

    def negate(self, m: Mor) -> Mor:
        p = self.field
        return self.mor_from_flat(m.source, m.target,
                                  tuple(-a % p for a in self.mor_flat(m)))

    def scale(self, c: int, m: Mor) -> Mor:
        p = self.field
        c %= p
        return self.mor_from_flat(m.source, m.target,
                                  tuple(a * c % p for a in self.mor_flat(m)))

    # -- abelian structure ----------------------------------------------

    @abc.abstractmethod
    def kernel(self, m: Mor):
        """(kernel object, mono into m.source)."""

    @abc.abstractmethod
    def cokernel(self, m: Mor):
        """(cokernel object, epi out of m.target)."""

    @abc.abstractmethod
    def biproduct(self, x, y):
        """(sum object, (i1, i2), (p1, p2))."""

    @abc.abstractmethod
    def enumerate_subobjects(self, x) -> tuple:
        """All subobjects of x as Subobject records, canonical order,
        including the zero subobject and x itself."""

    @abc.abstractmethod
    def subobject_key(self, mono: Mor):
        """Hashable canonical key identifying the subobject a mono carves
        out; two monos with the same image get the same key."""

    def is_mono(self, m: Mor) -> bool:
        return self.is_zero_object(self.kernel(m)[0])

    def is_epi(self, m: Mor) -> bool:
        return self.is_zero_object(self.cokernel(m)[0])


# -- linear solving in hom coordinates ----------------------------------


def hom_dim(inst: CategoryInstance, x, y) -> int:
    return len(inst.hom_basis(x, y))


def _flat_len(inst, x, y) -> int:
    return len(inst.mor_flat(inst.zero_morphism(x, y)))


def _combine(inst: CategoryInstance, x, y, basis: Sequence[Mor], coords) -> Mor:
    p = inst.field
    acc = [0] * _flat_len(inst, x, y)
    for c, b in zip(coords, basis):
        if c % p:
            for i, v in enumerate(inst.mor_flat(b)):
                acc[i] = (acc[i] + c * v) % p
    return inst.mor_from_flat(x, y, tuple(acc))


def _solve_compose(inst, src, tgt, column_of, rhs_flat, unique_required=True):
    """Shared worker: find u in Hom(src, tgt) with (linear condition) = rhs.

    column_of(b) must return the flattened condition value of a hom-basis
    element b; the condition is linear in u, so solving the resulting
    matrix equation over F_p decides existence, and the matrix rank decides
    uniqueness.
    """
    p = inst.field
    basis = inst.hom_basis(src, tgt)
    cols = [column_of(b) for b in basis]
    height = len(rhs_flat)
    mat = Matrix.build(height, len(basis), p,
                       (cols[j][i] for i in range(height) for j in range(len(basis))))
    rhs = Matrix.build(height, 1, p, rhs_flat)
    x = solve(mat, rhs)
    if x is None:
        return None, False
    if unique_required and rank(mat) != len(basis):
        raise ExactnessViolation(
            "connecting-map system has a non-trivial solution space; "
            "the construction this solve supports is not valid here")
    coords = [x.entry(j, 0) for j in range(len(basis))]
    return _combine(inst, src, tgt, basis, coords), True


def try_solve_right(inst, src, tgt, equations) -> Optional[Mor]:
    """u: src -> tgt with u o r_i = rhs_i for each (r_i, rhs_i), or None.

    Each r_i maps some S_i into src and rhs_i maps S_i into tgt.
    """
    rhs_flat = []
    for _, rhs in equations:
        rhs_flat.extend(inst.mor_flat(rhs))

    def column_of(b):
        out = []
        for r, _ in equations:
            out.extend(inst.mor_flat(inst.compose(b, r)))
        return out

    u, _ = _solve_compose(inst, src, tgt, column_of, tuple(rhs_flat))
    return u


def solve_right(inst, src, tgt, equations) -> Mor:
    u = try_solve_right(inst, src, tgt, equations)
    if u is None:
        raise ExactnessViolation(
            "no morphism satisfies the requested post-composition equations; "
            "a declared exactness property fails on this data")
    return u


def try_solve_left(inst, src, tgt, equations) -> Optional[Mor]:
    """u: src -> tgt with l_i o u = rhs_i for each (l_i, rhs_i), or None.

    Each l_i maps tgt into some T_i and rhs_i maps src into T_i.
    """
    rhs_flat = []
    for _, rhs in equations:
        rhs_flat.extend(inst.mor_flat(rhs))

    def column_of(b):
        out = []
        for l, _ in equations:
            out.extend(inst.mor_flat(inst.compose(l, b)))
        return out

    u, _ = _solve_compose(inst, src, tgt, column_of, tuple(rhs_flat))
    return u


def solve_left(inst, src, tgt, equations) -> Mor:
    u = try_solve_left(inst, src, tgt, equations)
    if u is None:
        raise ExactnessViolation(
            "no morphism satisfies the requested pre-composition equations; "
            "a declared exactness property fails on this data")
    return u


def solve_through_mono(inst, mono: Mor, m: Mor) -> Mor:
    """The unique u with mono o u = m."""
    return solve_left(inst, m.source, mono.source, [(mono, m)])


def try_through_mono(inst, mono: Mor, m: Mor) -> Optional[Mor]:
    return try_solve_left(inst, m.source, mono.source, [(mono, m)])


def solve_through_epi(inst, epi: Mor, m: Mor) -> Mor:
    """The unique u with u o epi = m."""
    return solve_right(inst, epi.target, m.target, [(epi, m)])


def try_through_epi(inst, epi: Mor, m: Mor) -> Optional[Mor]:
    return try_solve_right(inst, epi.target, m.target, [(epi, m)])


def all_homs(inst: CategoryInstance, x, y, max_count: int) -> Iterator[Mor]:
    """Every morphism x -> y, zero first, by sweeping basis coefficients."""
    basis = inst.hom_basis(x, y)
    total = inst.field ** len(basis)
    if total > max_count:
        raise BudgetExceeded(
            f"hom sweep of size {total} exceeds the budget of {max_count}")
    for coords in itertools.product(range(inst.field), repeat=len(basis)):
        yield _combine(inst, x, y, basis, coords)


def random_hom(inst: CategoryInstance, rng: random.Random, x, y,
               nonzero: bool = False) -> Mor:
    basis = inst.hom_basis(x, y)
    if not basis:
        return inst.zero_morphism(x, y)
    for _ in range(32):
        coords = [rng.randrange(inst.field) for _ in basis]
        if not nonzero or any(coords):
            return _combine(inst, x, y, basis, coords)
    return basis[0]


# -- derived abelian constructions --------------------------------------


def image(inst: CategoryInstance, m: Mor):
    """(image object, mono into m.target), computed as ker(coker m)."""
    _, cmor = inst.cokernel(m)
    return inst.kernel(cmor)


def coimage(inst: CategoryInstance, m: Mor):
    """(coimage object, epi out of m.source), computed as coker(ker m)."""
    _, kmor = inst.kernel(m)
    return inst.cokernel(kmor)


def induced_morphism(inst: CategoryInstance, m: Mor):
    """The canonical map coim(m) -> im(m) together with its flanks.

    Returns (q, mbar, i) with q the coimage epi, i the image mono, and
    i o mbar o q == m.  In an abelian category mbar must be invertible;
    certifying that is the caller's job (see verify_induced_iso).
    """
    coim_obj, q = coimage(inst, m)
    im_obj, i = image(inst, m)
    through = solve_through_mono(inst, i, m)       # X -> Im with i o . = m
    mbar = solve_through_epi(inst, q, through)     # CoIm -> Im with . o q = through
    if inst.compose(i, inst.compose(mbar, q)) != m:
        raise ExactnessViolation("image/coimage factorization failed to recompose")
    return q, mbar, i


def inverse_of(inst: CategoryInstance, m: Mor) -> Optional[Mor]:
    """Two-sided inverse of m, or None when m is not invertible."""
    u = try_solve_right(inst, m.target, m.source,
                        [(m, inst.identity(m.source))])
    if u is None:
        return None
    if inst.compose(m, u) != inst.identity(m.target):
        return None
    return u


def verify_induced_iso(inst: CategoryInstance, m: Mor) -> list:
    violations = []
    try:
        _, mbar, _ = induced_morphism(inst, m)
    except ExactnessViolation as exc:
        return [f"induced morphism does not exist: {exc}"]
    if inverse_of(inst, mbar) is None:
        violations.append("induced coimage->image morphism is not invertible")
    return violations


# -- universal-property certification -----------------------------------


def _null_cones_into(inst, t, m: Mor):
    """Basis of {h: t -> m.source with m o h = 0}."""
    p = inst.field
    basis = inst.hom_basis(t, m.source)
    if not basis:
        return []
    cols = [inst.mor_flat(inst.compose(m, b)) for b in basis]
    height = len(cols[0])
    mat = Matrix.build(height, len(basis), p,
                       (cols[j][i] for i in range(height) for j in range(len(basis))))
    null = kernel_basis(mat)
    return [_combine(inst, t, m.source, basis, null.basis.row(i))
            for i in range(null.dim)]


def _null_cones_out(inst, m: Mor, t):
    """Basis of {h: m.target -> t with h o m = 0}."""
    p = inst.field
    basis = inst.hom_basis(m.target, t)
    if not basis:
        return []
    cols = [inst.mor_flat(inst.compose(b, m)) for b in basis]
    height = len(cols[0])
    mat = Matrix.build(height, len(basis), p,
                       (cols[j][i] for i in range(height) for j in range(len(basis))))
    null = kernel_basis(mat)
    return [_combine(inst, m.target, t, basis, null.basis.row(i))
            for i in range(null.dim)]


def _cone_samples(inst, rng, cone_basis, count):
    picked = list(cone_basis[:count])
    if cone_basis:
        coords = [rng.randrange(inst.field) for _ in cone_basis]
        if any(coords):
            extra = None
            for c, b in zip(coords, cone_basis):
                scaled = inst.scale(c, b)
                extra = scaled if extra is None else inst.add(extra, scaled)
            picked.append(extra)
    return picked


def verify_kernel_universal(inst: CategoryInstance, m: Mor, kobj, kmor: Mor,
                            rng: random.Random, cone_objects=(),
                            cones_per_object: int = 2) -> list:
    """Certify (kobj, kmor) as the kernel of m by constructive search.

    Checks m o kmor = 0 and kmor mono, then for each test object builds the
    space of cones killed by m and solves for the unique factorization
    through kmor.
    """
    violations = []
    if inst.compose(m, kmor) != inst.zero_morphism(kobj, m.target):
        violations.append("kernel arrow does not compose to zero")
    if not inst.is_mono(kmor):
        violations.append("kernel arrow is not mono")
    tests = list(cone_objects) or [kobj, m.source, inst.sample_object(rng, 2)]
    for t in tests:
        cones = _cone_samples(inst, rng, _null_cones_into(inst, t, m), cones_per_object)
        for h in cones:
            try:
                u = try_through_mono(inst, kmor, h)
            except ExactnessViolation:
                violations.append("factorization through kernel not unique")
                continue
            if u is None:
                violations.append("a cone killed by m does not factor through the kernel")
            elif inst.compose(kmor, u) != h:
                violations.append("kernel factorization does not recompose")
    return violations


def verify_cokernel_universal(inst: CategoryInstance, m: Mor, cobj, cmor: Mor,
                              rng: random.Random, cone_objects=(),
                              cones_per_object: int = 2) -> list:
    violations = []
    if inst.compose(cmor, m) != inst.zero_morphism(m.source, cobj):
        violations.append("cokernel arrow does not compose to zero")
    if not inst.is_epi(cmor):
        violations.append("cokernel arrow is not epi")
    tests = list(cone_objects) or [cobj, m.target, inst.sample_object(rng, 2)]
    for t in tests:
        cones = _cone_samples(inst, rng, _null_cones_out(inst, m, t), cones_per_object)
        for h in cones:
            try:
                u = try_through_epi(inst, cmor, h)
            except ExactnessViolation:
                violations.append("factorization through cokernel not unique")
                continue
            if u is None:
                violations.append("a cocone killing m does not factor through the cokernel")
            elif inst.compose(u, cmor) != h:
                violations.append("cokernel factorization does not recompose")
    return violations


def verify_biproduct(inst: CategoryInstance, x, y) -> list:
    violations = []
    s, (i1, i2), (p1, p2) = inst.biproduct(x, y)
    if inst.compose(p1, i1) != inst.identity(x):
        violations.append("p1 o i1 != id")
    if inst.compose(p2, i2) != inst.identity(y):
        violations.append("p2 o i2 != id")
    if inst.compose(p1, i2) != inst.zero_morphism(y, x):
        violations.append("p1 o i2 != 0")
    if inst.compose(p2, i1) != inst.zero_morphism(x, y):
        violations.append("p2 o i1 != 0")
    recomb = inst.add(inst.compose(i1, p1), inst.compose(i2, p2))
    if recomb != inst.identity(s):
        violations.append("i1 p1 + i2 p2 != id on the biproduct")
    return violations


# -- short exact sequences ----------------------------------------------

_SES_AUDIT: Optional[list] = None


@contextmanager
def ses_audit():
    """Collect every sequence validated by short_exact inside the block.

    Used for after-the-fact audits, e.g. re-checking class-vector
    additivity over everything a workload constructed.
    """
    global _SES_AUDIT
    prev = _SES_AUDIT
    _SES_AUDIT = []
    try:
        yield _SES_AUDIT
    finally:
        _SES_AUDIT = prev


def verify_ses(inst: CategoryInstance, sub: Mor, quot: Mor) -> list:
    violations = []
    if sub.target != quot.source:
        return ["sub and quot do not share a middle object"]
    if not inst.is_mono(sub):
        violations.append("sub arrow is not mono")
    if not inst.is_epi(quot):
        violations.append("quot arrow is not epi")
    if inst.compose(quot, sub) != inst.zero_morphism(sub.source, quot.target):
        violations.append("quot o sub != 0")
    _, imono = image(inst, sub)
    _, kmono = inst.kernel(quot)
    if inst.subobject_key(imono) != inst.subobject_key(kmono):
        violations.append("image(sub) != kernel(quot)")
    return violations


def short_exact(inst: CategoryInstance, sub: Mor, quot: Mor) -> ShortExactSequence:
    violations = verify_ses(inst, sub, quot)
    if violations:
        raise ExactnessViolation("not short exact: " + "; ".join(violations))
    ses = ShortExactSequence(sub, quot)
    if _SES_AUDIT is not None:
        _SES_AUDIT.append((inst, ses))
    return ses


def subobject_ses(inst: CategoryInstance, sub: Subobject) -> ShortExactSequence:
    """0 -> sub -> x -> x/sub -> 0 for a chosen subobject of x."""
    _, q = inst.cokernel(sub.mono)
    return short_exact(inst, sub.mono, q)


def factor_between(inst: CategoryInstance, inner: Subobject, outer: Subobject):
    """For nested subobjects inner <= outer of one ambient object, return
    (inclusion inner -> outer, factor object outer/inner, projection).
    Returns None when inner does not sit inside outer."""
    u = try_through_mono(inst, outer.mono, inner.mono)
    if u is None:
        return None
    fobj, proj = inst.cokernel(u)
    return u, fobj, proj


def subobject_leq(inst: CategoryInstance, inner: Subobject, outer: Subobject) -> bool:
    return try_through_mono(inst, outer.mono, inner.mono) is not None


# -- whole-instance audit ------------------------------------------------


def verify_category(inst: CategoryInstance, samples: int = 24, seed: int = 0,
                    max_dim: int = 3) -> CategoryReport:
    """Seeded spot-check of the category axioms and abelian structure.

    Samples morphisms and checks identity and associativity laws, kernel
    and cokernel universal properties, biproduct identities, and the
    invertibility of induced coimage->image maps.  Returns every violation
    found; a clean report is the pass certificate.
    """
    rng = random.Random(seed)
    violations = []
    checks = 0

    objs = [inst.zero_object()] + [inst.sample_object(rng, max_dim) for _ in range(6)]

    def sample_pair():
        x = objs[rng.randrange(len(objs))]
        y = objs[rng.randrange(len(objs))]
        return x, y

    for _ in range(samples):
        x, y = sample_pair()
        m = random_hom(inst, rng, x, y)
        checks += 1
        if inst.compose(inst.identity(y), m) != m or inst.compose(m, inst.identity(x)) != m:
            violations.append(f"identity law fails at {inst.describe_object(x)}")
        z = objs[rng.randrange(len(objs))]
        w = objs[rng.randrange(len(objs))]
        m2 = random_hom(inst, rng, y, z)
        m3 = random_hom(inst, rng, z, w)
        if inst.compose(m3, inst.compose(m2, m)) != inst.compose(inst.compose(m3, m2), m):
            violations.append("associativity fails on a sampled triple")

    for _ in range(max(4, samples // 3)):
        x, y = sample_pair()
        m = random_hom(inst, rng, x, y)
        checks += 1
        kobj, kmor = inst.kernel(m)
        violations.extend(verify_kernel_universal(inst, m, kobj, kmor, rng))
        cobj, cmor = inst.cokernel(m)
        violations.extend(verify_cokernel_universal(inst, m, cobj, cmor, rng))
        violations.extend(verify_induced_iso(inst, m))

    for _ in range(3):
        x, y = sample_pair()
        checks += 1
        violations.extend(verify_biproduct(inst, x, y))

    return CategoryReport(checks=checks, violations=tuple(violations))
