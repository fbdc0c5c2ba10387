"""Concrete finite abelian categories: F_p vector spaces and finite
dimensional representations of finite acyclic quivers.

Objects are plain values: a vector space is its dimension, a representation
is a dimension vector plus one matrix per arrow.  Morphism carriers are
matrices (one per vertex for representations); kernels and cokernels are
computed vertexwise with the induced arrow maps solved exactly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import cache

from .core import CategoryInstance, Mor, Subobject
from .errors import ForeignMorphism
from .linalg import (
    DEFAULT_VECTOR_BUDGET,
    BudgetExceeded,
    Matrix,
    Subspace,
    block_diag,
    check_prime,
    enumerate_subspaces,
    hstack,
    image_basis,
    kernel_basis,
    quotient_map,
    rank,
    solve,
    solve_left,
    vstack,
)


@dataclass(frozen=True)
class Budget:
    """Enumeration guard rails; the CLI can override both knobs."""

    max_vectors: int = DEFAULT_VECTOR_BUDGET
    max_total_dim: int = 6


DEFAULT_BUDGET = Budget()


# -- vector spaces -------------------------------------------------------


@dataclass(frozen=True)
class FinVect(CategoryInstance):
    """Finite dimensional F_p vector spaces; an object is its dimension."""

    field: int = 2
    budget: Budget = DEFAULT_BUDGET

    def __post_init__(self):
        check_prime(self.field)

    # objects

    @property
    def class_rank(self) -> int:
        return 1

    def zero_object(self):
        return 0

    def is_zero_object(self, x) -> bool:
        return x == 0

    def dim_total(self, x) -> int:
        return x

    def class_vector(self, x) -> tuple:
        return (x,)

    def simples(self) -> tuple:
        return (1,)

    def enumerate_objects(self, max_total_dim: int):
        return iter(range(max_total_dim + 1))

    def sample_object(self, rng: random.Random, max_total_dim: int):
        return rng.randint(0, max_total_dim)

    def describe_object(self, x) -> str:
        return f"k^{x}"

    # morphisms

    def _own(self, m: Mor) -> None:
        if not isinstance(m.data, Matrix) or m.data.modulus != self.field:
            raise ForeignMorphism("not a matrix morphism over this field")
        if (m.data.rows, m.data.cols) != (m.target, m.source):
            raise ForeignMorphism("matrix shape disagrees with endpoints")

    def identity(self, x) -> Mor:
        return Mor(x, x, Matrix.identity(x, self.field))

    def zero_morphism(self, x, y) -> Mor:
        return Mor(x, y, Matrix.zero(y, x, self.field))

    def compose(self, m2: Mor, m1: Mor) -> Mor:
        self._own(m1)
        self._own(m2)
        if m1.target != m2.source:
            raise ForeignMorphism("endpoints do not match for composition")
        return Mor(m1.source, m2.target, m2.data.mul(m1.data))

    def hom_basis(self, x, y) -> tuple:
        p = self.field
        out = []
        for i in range(y):
            for j in range(x):
                ent = [0] * (y * x)
                ent[i * x + j] = 1
                out.append(Mor(x, y, Matrix(y, x, p, tuple(ent))))
        return tuple(out)

    def mor_flat(self, m: Mor) -> tuple:
        return m.data.entries

    def mor_from_flat(self, x, y, flat: tuple) -> Mor:
        return Mor(x, y, Matrix.build(y, x, self.field, flat))

    # abelian structure

    def kernel(self, m: Mor):
        self._own(m)
        k = kernel_basis(m.data)
        return k.dim, Mor(k.dim, m.source, k.basis.transpose())

    def cokernel(self, m: Mor):
        self._own(m)
        proj, q = quotient_map(m.target, image_basis(m.data))
        return q, Mor(m.target, q, proj)

    def biproduct(self, x, y):
        p = self.field
        s = x + y
        i1 = Mor(x, s, vstack([Matrix.identity(x, p), Matrix.zero(y, x, p)]))
        i2 = Mor(y, s, vstack([Matrix.zero(x, y, p), Matrix.identity(y, p)]))
        p1 = Mor(s, x, hstack([Matrix.identity(x, p), Matrix.zero(x, y, p)]))
        p2 = Mor(s, y, hstack([Matrix.zero(y, x, p), Matrix.identity(y, p)]))
        return s, (i1, i2), (p1, p2)

    def enumerate_subobjects(self, x) -> tuple:
        out = []
        for s in enumerate_subspaces(x, self.field, self.budget.max_vectors):
            out.append(Subobject(s.dim, Mor(s.dim, x, s.basis.transpose())))
        return tuple(out)

    def subobject_key(self, mono: Mor):
        return image_basis(mono.data)

    def is_mono(self, m: Mor) -> bool:
        return rank(m.data) == m.data.cols

    def is_epi(self, m: Mor) -> bool:
        return rank(m.data) == m.data.rows


# -- quivers -------------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    """A finite quiver, required acyclic so every representation category
    here has finitely many vertex simples and finite-length objects."""

    vertices: int
    arrows: tuple

    def __post_init__(self):
        if self.vertices < 0:
            raise ValueError("negative vertex count")
        for a in self.arrows:
            s, t = a
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise ValueError(f"arrow {a} out of range")
        # Kahn's algorithm; leftovers mean a directed cycle
        indeg = [0] * self.vertices
        for _, t in self.arrows:
            indeg[t] += 1
        queue = [v for v in range(self.vertices) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
        if seen != self.vertices:
            raise ValueError("quiver has a directed cycle")


ARROW_QUIVER = Quiver(2, ((0, 1),))


@cache
def _paths_from(q: Quiver, v: int):
    """All paths out of v as arrow-index tuples, grouped per end vertex,
    each group sorted lexicographically."""
    by_end = {w: [] for w in range(q.vertices)}
    stack = [((), v)]
    while stack:
        path, w = stack.pop()
        by_end[w].append(path)
        for idx, (s, t) in enumerate(q.arrows):
            if s == w:
                stack.append((path + (idx,), t))
    return {w: tuple(sorted(ps)) for w, ps in by_end.items()}


@dataclass(frozen=True)
class RepObject:
    dims: tuple
    maps: tuple


@dataclass(frozen=True)
class Rep(CategoryInstance):
    """Representations of a fixed acyclic quiver over F_p."""

    quiver: Quiver
    field: int = 2
    budget: Budget = DEFAULT_BUDGET

    def __post_init__(self):
        check_prime(self.field)

    def obj(self, dims, maps) -> RepObject:
        dims = tuple(int(d) for d in dims)
        maps = tuple(maps)
        if len(dims) != self.quiver.vertices:
            raise ValueError("dimension vector length disagrees with quiver")
        if len(maps) != len(self.quiver.arrows):
            raise ValueError("need one matrix per arrow")
        for a, (s, t) in enumerate(self.quiver.arrows):
            m = maps[a]
            if m.modulus != self.field or (m.rows, m.cols) != (dims[t], dims[s]):
                raise ValueError(f"arrow matrix {a} has the wrong shape or field")
        return RepObject(dims, maps)

    def obj_from_rows(self, dims, map_rows) -> RepObject:
        mats = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            rows = map_rows[a]
            mats.append(Matrix.from_rows(rows, self.field, cols=dims[s])
                        if rows else Matrix.zero(dims[t], dims[s], self.field))
        return self.obj(dims, mats)

    # objects

    @property
    def class_rank(self) -> int:
        return self.quiver.vertices

    def zero_object(self) -> RepObject:
        n = self.quiver.vertices
        return RepObject((0,) * n,
                         tuple(Matrix.zero(0, 0, self.field) for _ in self.quiver.arrows))

    def is_zero_object(self, x) -> bool:
        return all(d == 0 for d in x.dims)

    def dim_total(self, x) -> int:
        return sum(x.dims)

    def class_vector(self, x) -> tuple:
        return x.dims

    def simples(self) -> tuple:
        out = []
        for v in range(self.quiver.vertices):
            dims = tuple(1 if w == v else 0 for w in range(self.quiver.vertices))
            maps = tuple(Matrix.zero(dims[t], dims[s], self.field)
                         for s, t in self.quiver.arrows)
            out.append(RepObject(dims, maps))
        return tuple(out)

    def projective(self, v: int) -> RepObject:
        """The path-based projective at v: basis at w is the paths v -> w."""
        paths = _paths_from(self.quiver, v)
        dims = tuple(len(paths[w]) for w in range(self.quiver.vertices))
        maps = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            rows = [[0] * dims[s] for _ in range(dims[t])]
            for j, pth in enumerate(paths[s]):
                rows[paths[t].index(pth + (a,))][j] = 1
            maps.append(Matrix.from_rows(rows, self.field, cols=dims[s])
                        if dims[t] else Matrix.zero(0, dims[s], self.field))
        return RepObject(dims, tuple(maps))

    def enumerate_objects(self, max_total_dim: int):
        n = self.quiver.vertices
        for total in range(max_total_dim + 1):
            for dims in _dim_vectors(n, total):
                combo_count = 1
                for s, t in self.quiver.arrows:
                    combo_count *= self.field ** (dims[t] * dims[s])
                if combo_count > self.budget.max_vectors:
                    raise BudgetExceeded("arrow-matrix sweep exceeds vector budget")
                arrow_spaces = []
                for s, t in self.quiver.arrows:
                    size = dims[t] * dims[s]
                    arrow_spaces.append(
                        [Matrix.build(dims[t], dims[s], self.field, ent)
                         for ent in itertools.product(range(self.field), repeat=size)])
                for maps in itertools.product(*arrow_spaces):
                    yield RepObject(tuple(dims), tuple(maps))

    def sample_object(self, rng: random.Random, max_total_dim: int) -> RepObject:
        n = self.quiver.vertices
        remaining = rng.randint(0, max_total_dim)
        dims = []
        for v in range(n):
            d = rng.randint(0, remaining) if v < n - 1 else remaining
            dims.append(d)
            remaining -= d
        rng.shuffle(dims)
        maps = []
        for s, t in self.quiver.arrows:
            maps.append(Matrix.build(
                dims[t], dims[s], self.field,
                [rng.randrange(self.field) for _ in range(dims[t] * dims[s])]))
        return RepObject(tuple(dims), tuple(maps))

    def describe_object(self, x) -> str:
        return f"rep{tuple(x.dims)}"

    # morphisms

    def _own(self, m: Mor) -> None:
        if not isinstance(m.source, RepObject) or not isinstance(m.target, RepObject):
            raise ForeignMorphism("endpoints are not representations")
        if not isinstance(m.data, tuple) or len(m.data) != self.quiver.vertices:
            raise ForeignMorphism("carrier is not one matrix per vertex")
        for v in range(self.quiver.vertices):
            mat = m.data[v]
            if mat.modulus != self.field or \
                    (mat.rows, mat.cols) != (m.target.dims[v], m.source.dims[v]):
                raise ForeignMorphism(f"vertex {v} matrix has the wrong shape or field")

    def mor(self, x: RepObject, y: RepObject, mats) -> Mor:
        m = Mor(x, y, tuple(mats))
        self._own(m)
        for a, (s, t) in enumerate(self.quiver.arrows):
            if m.data[t].mul(x.maps[a]) != y.maps[a].mul(m.data[s]):
                raise ValueError(f"vertex maps do not intertwine arrow {a}")
        return m

    def identity(self, x) -> Mor:
        return Mor(x, x, tuple(Matrix.identity(d, self.field) for d in x.dims))

    def zero_morphism(self, x, y) -> Mor:
        return Mor(x, y, tuple(Matrix.zero(dy, dx, self.field)
                               for dy, dx in zip(y.dims, x.dims)))

    def compose(self, m2: Mor, m1: Mor) -> Mor:
        if m1.target != m2.source:
            raise ForeignMorphism("endpoints do not match for composition")
        return Mor(m1.source, m2.target,
                   tuple(b.mul(a) for b, a in zip(m2.data, m1.data)))

    def _vertex_offsets(self, x: RepObject, y: RepObject):
        off = []
        acc = 0
        for v in range(self.quiver.vertices):
            off.append(acc)
            acc += y.dims[v] * x.dims[v]
        return off, acc

    def hom_basis(self, x, y) -> tuple:
        """Basis of the intertwiner space, from the kernel of the linear
        system g_t X_a = Y_a g_s over all arrows a: s -> t."""
        p = self.field
        off, total = self._vertex_offsets(x, y)
        rows = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            xa, ya = x.maps[a], y.maps[a]
            for i in range(y.dims[t]):
                for j in range(x.dims[s]):
                    row = [0] * total
                    for k in range(x.dims[t]):
                        row[off[t] + i * x.dims[t] + k] = (
                            row[off[t] + i * x.dims[t] + k] + xa.entry(k, j)) % p
                    for k in range(y.dims[s]):
                        row[off[s] + k * x.dims[s] + j] = (
                            row[off[s] + k * x.dims[s] + j] - ya.entry(i, k)) % p
                    rows.append(row)
        if rows:
            constraint = Matrix.from_rows(rows, p, cols=total)
        else:
            constraint = Matrix.zero(0, total, p)
        null = kernel_basis(constraint)
        return tuple(self.mor_from_flat(x, y, null.basis.row(i))
                     for i in range(null.dim))

    def mor_flat(self, m: Mor) -> tuple:
        out = []
        for mat in m.data:
            out.extend(mat.entries)
        return tuple(out)

    def mor_from_flat(self, x, y, flat: tuple) -> Mor:
        off, total = self._vertex_offsets(x, y)
        if len(flat) != total:
            raise ValueError("flat length mismatch")
        mats = []
        for v in range(self.quiver.vertices):
            size = y.dims[v] * x.dims[v]
            mats.append(Matrix.build(y.dims[v], x.dims[v], self.field,
                                     flat[off[v]:off[v] + size]))
        return self.mor(x, y, mats)

    # abelian structure

    def kernel(self, m: Mor):
        self._own(m)
        x = m.source
        incls = []
        kdims = []
        for v in range(self.quiver.vertices):
            k = kernel_basis(m.data[v])
            kdims.append(k.dim)
            incls.append(k.basis.transpose())
        kmaps = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            # x's arrow map carries Ker(g_s) into Ker(g_t); restrict it
            restricted = solve(incls[t], x.maps[a].mul(incls[s]))
            assert restricted is not None
            kmaps.append(restricted)
        kobj = RepObject(tuple(kdims), tuple(kmaps))
        return kobj, self.mor(kobj, x, incls)

    def cokernel(self, m: Mor):
        self._own(m)
        y = m.target
        projs = []
        cdims = []
        for v in range(self.quiver.vertices):
            proj, q = quotient_map(y.dims[v], image_basis(m.data[v]))
            cdims.append(q)
            projs.append(proj)
        cmaps = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            induced = solve_left(projs[s], projs[t].mul(y.maps[a]))
            assert induced is not None
            cmaps.append(induced)
        cobj = RepObject(tuple(cdims), tuple(cmaps))
        return cobj, self.mor(y, cobj, projs)

    def biproduct(self, x, y):
        p = self.field
        dims = tuple(a + b for a, b in zip(x.dims, y.dims))
        maps = tuple(block_diag([x.maps[a], y.maps[a]])
                     for a in range(len(self.quiver.arrows)))
        s = RepObject(dims, maps)
        i1 = self.mor(x, s, [vstack([Matrix.identity(dx, p), Matrix.zero(dy, dx, p)])
                             for dx, dy in zip(x.dims, y.dims)])
        i2 = self.mor(y, s, [vstack([Matrix.zero(dx, dy, p), Matrix.identity(dy, p)])
                             for dx, dy in zip(x.dims, y.dims)])
        p1 = self.mor(s, x, [hstack([Matrix.identity(dx, p), Matrix.zero(dx, dy, p)])
                             for dx, dy in zip(x.dims, y.dims)])
        p2 = self.mor(s, y, [hstack([Matrix.zero(dy, dx, p), Matrix.identity(dy, p)])
                             for dx, dy in zip(x.dims, y.dims)])
        return s, (i1, i2), (p1, p2)

    def enumerate_subobjects(self, x) -> tuple:
        """Arrow-invariant tuples of vertex subspaces, with induced maps."""
        per_vertex = [enumerate_subspaces(d, self.field, self.budget.max_vectors)
                      for d in x.dims]
        out = []
        for combo in itertools.product(*per_vertex):
            incls = [s.basis.transpose() for s in combo]
            submaps = []
            ok = True
            for a, (s, t) in enumerate(self.quiver.arrows):
                restricted = solve(incls[t], x.maps[a].mul(incls[s]))
                if restricted is None:
                    ok = False
                    break
                submaps.append(restricted)
            if not ok:
                continue
            sobj = RepObject(tuple(s.dim for s in combo), tuple(submaps))
            out.append(Subobject(sobj, self.mor(sobj, x, incls)))
        return tuple(out)

    def subobject_key(self, mono: Mor):
        return tuple(image_basis(mat) for mat in mono.data)

    def is_mono(self, m: Mor) -> bool:
        return all(rank(mat) == mat.cols for mat in m.data)

    def is_epi(self, m: Mor) -> bool:
        return all(rank(mat) == mat.rows for mat in m.data)


def rep_hom_space(rep: Rep, x: RepObject, y: RepObject) -> tuple:
    """Canonical basis of the intertwiner space Hom(x, y)."""
    return rep.hom_basis(x, y)


def _dim_vectors(n: int, total: int):
    if n == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for rest in _dim_vectors(n - 1, total - head):
            yield (head,) + rest


# -- toy geometry for coherent-system scans ------------------------------


@dataclass(frozen=True)
class ToyGeometryConfig:
    """Integer degree/rank functionals on the sheaf-side class lattice and
    a dimension functional on the section side.

    Validity mirrors what the slope formulas need: rank is non-negative on
    simples, and a rank-zero simple must carry positive degree so its
    central-charge value -deg + i*rk stays in the allowed half plane.
    """

    deg: tuple
    rk: tuple
    dim_gamma: tuple = (1,)

    def __post_init__(self):
        if len(self.deg) != len(self.rk) or not self.deg or not self.dim_gamma:
            raise ValueError("deg and rk must be equal-length non-empty tuples")
        for d, r in zip(self.deg, self.rk):
            if r < 0:
                raise ValueError("rank functional must be non-negative on simples")
            if r == 0 and d <= 0:
                raise ValueError("a rank-zero simple must have positive degree")
        for g in self.dim_gamma:
            if g < 0:
                raise ValueError("dimension functional must be non-negative")

    @classmethod
    def default_coherent(cls) -> "ToyGeometryConfig":
        # arrow quiver playing the curve: deg = d2 - d1, rk = d1
        return cls(deg=(-1, 1), rk=(1, 0), dim_gamma=(1,))

    @classmethod
    def scan_coherent(cls) -> "ToyGeometryConfig":
        # total-dimension rank keeps every nonzero sheaf class at finite
        # slope, which is what makes the section weight cross a wall
        return cls(deg=(-1, 1), rk=(1, 1), dim_gamma=(1,))

    def scaled(self, c: int) -> "ToyGeometryConfig":
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return ToyGeometryConfig(tuple(c * d for d in self.deg),
                                 tuple(c * r for r in self.rk),
                                 tuple(c * g for g in self.dim_gamma))
