"""Composition series.

Simplicity is decided by literally enumerating subobjects: exactly the
zero subobject and the whole object.  A composition series is grown by
repeatedly picking a minimal nonzero subobject above the current stage;
the chosen one is either the first in canonical enumeration order or a
seeded-random pick, and the factor multiset is provably independent of
that choice, which the tests exercise rather than assume.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .core import CategoryInstance, Filtration
from .stability import SubobjectLattice


def is_simple(cat: CategoryInstance, x) -> bool:
    """Nonzero with no proper nontrivial subobject."""
    if cat.is_zero_object(x):
        return False
    count = 0
    for s in cat.enumerate_subobjects(x):
        trivial = cat.is_zero_object(s.obj) or cat.is_epi(s.mono)
        if not trivial:
            return False
        count += 1
    return count >= 2


@dataclass(frozen=True)
class JHFiltration:
    filtration: Filtration
    factor_classes: tuple

    @property
    def length(self) -> int:
        return len(self.factor_classes)

    def factor_multiset(self) -> tuple:
        return tuple(sorted(self.factor_classes))


def jh_filtration(cat: CategoryInstance, x, policy: str = "canonical",
                  seed: int = 0,
                  lattice: Optional[SubobjectLattice] = None) -> JHFiltration:
    """Build a composition series for nonzero x.

    policy "canonical" takes, at each stage, the first strictly larger
    subobject of minimal positive length jump; "random" draws uniformly
    among those, seeded.  Factors are re-verified simple.
    """
    if cat.is_zero_object(x):
        return JHFiltration(
            Filtration((), ()), ())
    if policy not in ("canonical", "random"):
        raise ValueError("policy must be 'canonical' or 'random'")
    rng = random.Random(seed)
    lat = lattice if lattice is not None else SubobjectLattice(cat, x)
    if lat.cat is not cat or lat.x != x:
        raise ValueError("lattice was built for a different object")
    chain = [lat.zero_index]
    while chain[-1] != lat.whole_index:
        cur = chain[-1]
        above = lat.strictly_above(cur)
        # a minimal jump in total length is exactly a simple factor
        best_jump = min(sum(lat.diff(t, cur)) for t in above)
        options = [t for t in above if sum(lat.diff(t, cur)) == best_jump]
        pick = options[0] if policy == "canonical" else rng.choice(options)
        chain.append(pick)
    factors = []
    classes = []
    for prev, cur in zip(chain, chain[1:]):
        fobj = lat.factor_object(prev, cur)
        if not is_simple(cat, fobj):
            raise AssertionError("composition factor is not simple")
        factors.append(fobj)
        classes.append(lat.diff(cur, prev))
    filt = Filtration(tuple(lat.subs[i] for i in chain), tuple(factors))
    return JHFiltration(filt, tuple(classes))


def length(cat: CategoryInstance, x,
           lattice: Optional[SubobjectLattice] = None) -> int:
    """Composition length; asserted independent of the selection policy."""
    canonical = jh_filtration(cat, x, "canonical", lattice=lattice)
    probe = jh_filtration(cat, x, "random", seed=1, lattice=lattice)
    if probe.length != canonical.length:
        raise AssertionError("composition length depended on the policy")
    return canonical.length


def comma_simples(cat) -> tuple:
    """The one-sided triples over component simples, each re-verified to
    have no proper nontrivial subobject."""
    out = []
    for x in cat.simples():
        if not is_simple(cat, x):
            raise AssertionError(
                f"declared simple {cat.describe_object(x)} has a proper "
                "nontrivial subobject")
        out.append(x)
    return tuple(out)
