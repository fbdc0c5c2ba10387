"""Exact linear algebra over prime fields.

Everything in this module is a pure function on immutable values.  A matrix
is a flat tuple of machine integers reduced modulo a prime p, with p capped
well below 2**31 so entry products fit in 64-bit intermediates.  Zero-row
and zero-column matrices are first class; they carry the maps in and out of
zero-dimensional spaces and every operation must accept them.

Subspaces are stored as reduced row echelon bases, which makes equality,
hashing, and canonical enumeration order structural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache

DEFAULT_VECTOR_BUDGET = 2 ** 16
MAX_MODULUS = 2 ** 31


class BudgetExceeded(Exception):
    """An enumeration would touch more vectors than the configured budget."""


class ShapeError(ValueError):
    """Operands have incompatible shapes or moduli."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin; bases 2,3,5,7 cover everything below 3.2e9
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@cache
def check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or p >= MAX_MODULUS:
        raise ValueError(f"modulus must be a prime in [2, 2**31), got {p!r}")
    if not _is_prime(p):
        raise ValueError(f"modulus {p} is not prime")


@dataclass(frozen=True)
class FieldElement:
    """A scalar in F_p, normalized to the range [0, p)."""

    value: int
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "FieldElement":
        check_prime(modulus)
        return cls(value % modulus, modulus)

    def _match(self, other: "FieldElement") -> None:
        if self.modulus != other.modulus:
            raise ShapeError("mixed moduli")

    def __add__(self, other):
        self._match(other)
        return FieldElement((self.value + other.value) % self.modulus, self.modulus)

    def __sub__(self, other):
        self._match(other)
        return FieldElement((self.value - other.value) % self.modulus, self.modulus)

    def __mul__(self, other):
        self._match(other)
        return FieldElement(self.value * other.value % self.modulus, self.modulus)

    def __neg__(self):
        return FieldElement(-self.value % self.modulus, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(pow(self.value, self.modulus - 2, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * other.inverse()

    def __bool__(self):
        return self.value != 0


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix over F_p with entries stored as reduced ints."""

    rows: int
    cols: int
    modulus: int
    entries: tuple

    def __post_init__(self):
        check_prime(self.modulus)
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        for e in self.entries:
            if not 0 <= e < self.modulus:
                raise ShapeError(f"entry {e} not reduced mod {self.modulus}")

    @classmethod
    def build(cls, rows: int, cols: int, modulus: int, entries) -> "Matrix":
        check_prime(modulus)
        return cls(rows, cols, modulus, tuple(int(e) % modulus for e in entries))

    @classmethod
    def from_rows(cls, row_seq, modulus: int, cols: int | None = None) -> "Matrix":
        row_seq = [list(r) for r in row_seq]
        if cols is None:
            if not row_seq:
                raise ShapeError("cannot infer column count from an empty row list")
            cols = len(row_seq[0])
        flat = []
        for r in row_seq:
            if len(r) != cols:
                raise ShapeError("ragged rows")
            flat.extend(r)
        return cls.build(len(row_seq), cols, modulus, flat)

    @classmethod
    def zero(cls, rows: int, cols: int, modulus: int) -> "Matrix":
        return cls(rows, cols, modulus, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int, modulus: int) -> "Matrix":
        return cls(n, n, modulus, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def elem(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.entry(i, j), self.modulus)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def mul(self, other: "Matrix") -> "Matrix":
        if self.modulus != other.modulus:
            raise ShapeError("mixed moduli")
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        p = self.modulus
        out = []
        for i in range(self.rows):
            ri = self.entries[i * self.cols:(i + 1) * self.cols]
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    acc += ri[k] * other.entries[k * other.cols + j]
                out.append(acc % p)
        return Matrix(self.rows, other.cols, p, tuple(out))

    def _match(self, other: "Matrix") -> None:
        if self.modulus != other.modulus:
            raise ShapeError("mixed moduli")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch")

    def add(self, other: "Matrix") -> "Matrix":
        self._match(other)
        p = self.modulus
        return Matrix(self.rows, self.cols, p,
                      tuple((a + b) % p for a, b in zip(self.entries, other.entries)))

    def sub(self, other: "Matrix") -> "Matrix":
        self._match(other)
        p = self.modulus
        return Matrix(self.rows, self.cols, p,
                      tuple((a - b) % p for a, b in zip(self.entries, other.entries)))

    def neg(self) -> "Matrix":
        p = self.modulus
        return Matrix(self.rows, self.cols, p, tuple(-a % p for a in self.entries))

    def scale(self, c: int) -> "Matrix":
        p = self.modulus
        c %= p
        return Matrix(self.rows, self.cols, p, tuple(a * c % p for a in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, self.modulus,
                      tuple(self.entries[i * self.cols + j]
                            for j in range(self.cols) for i in range(self.rows)))


def compose(a: Matrix, b: Matrix) -> Matrix:
    """Matrix of the composite map (apply b first, then a)."""
    return a.mul(b)


def hstack(mats) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ShapeError("hstack of nothing")
    rows, p = mats[0].rows, mats[0].modulus
    for m in mats:
        if m.rows != rows or m.modulus != p:
            raise ShapeError("hstack mismatch")
    out = []
    for i in range(rows):
        for m in mats:
            out.extend(m.row(i))
    return Matrix(rows, sum(m.cols for m in mats), p, tuple(out))


def vstack(mats) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ShapeError("vstack of nothing")
    cols, p = mats[0].cols, mats[0].modulus
    for m in mats:
        if m.cols != cols or m.modulus != p:
            raise ShapeError("vstack mismatch")
    flat = []
    for m in mats:
        flat.extend(m.entries)
    return Matrix(sum(m.rows for m in mats), cols, p, tuple(flat))


def block_diag(mats) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ShapeError("block_diag of nothing")
    p = mats[0].modulus
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        if m.modulus != p:
            raise ShapeError("mixed moduli")
        for i in range(m.rows):
            for j in range(m.cols):
                out[r0 + i][c0 + j] = m.entry(i, j)
        r0 += m.rows
        c0 += m.cols
    return Matrix.from_rows(out, p, cols=cols) if rows else Matrix(0, cols, p, ())


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    return block_diag([a, b])


def kron(a: Matrix, b: Matrix) -> Matrix:
    if a.modulus != b.modulus:
        raise ShapeError("mixed moduli")
    p = a.modulus
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = []
    for ia in range(a.rows):
        for ib in range(b.rows):
            for ja in range(a.cols):
                aa = a.entry(ia, ja)
                for jb in range(b.cols):
                    out.append(aa * b.entry(ib, jb) % p)
    return Matrix(rows, cols, p, tuple(out))


@dataclass(frozen=True)
class RrefResult:
    matrix: Matrix
    pivots: tuple
    rank: int


@cache
def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form by Gauss-Jordan elimination."""
    p = m.modulus
    work = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if work[i][c] % p != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = pow(work[r][c], p - 2, p)
        work[r] = [x * inv % p for x in work[r]]
        for i in range(m.rows):
            if i != r and work[i][c] % p != 0:
                f = work[i][c]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    flat = tuple(x % p for row in work for x in row)
    return RrefResult(Matrix(m.rows, m.cols, p, flat), tuple(pivots), r)


def rank(m: Matrix) -> int:
    return rref(m).rank


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n held as a reduced row echelon basis.

    The RREF basis is canonical, so dataclass equality and hashing decide
    subspace equality, and sorting by (dim, basis entries) is reproducible.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise ShapeError("basis width must equal ambient dimension")
        r = rref(self.basis)
        if r.matrix != self.basis or r.rank != self.basis.rows:
            raise ShapeError("subspace basis must be a full-rank RREF matrix")

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def modulus(self) -> int:
        return self.basis.modulus

    @classmethod
    def from_rows(cls, ambient_dim: int, modulus: int, row_seq) -> "Subspace":
        rows = [list(r) for r in row_seq]
        if not rows:
            return cls.zero(ambient_dim, modulus)
        m = Matrix.from_rows(rows, modulus, cols=ambient_dim)
        r = rref(m)
        kept = [list(r.matrix.row(i)) for i in range(r.rank)]
        if not kept:
            return cls.zero(ambient_dim, modulus)
        return cls(ambient_dim, Matrix.from_rows(kept, modulus, cols=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int, modulus: int) -> "Subspace":
        return cls(ambient_dim, Matrix(0, ambient_dim, modulus, ()))

    @classmethod
    def full(cls, ambient_dim: int, modulus: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim, modulus))

    def contains_vector(self, vec) -> bool:
        p = self.modulus
        v = [int(x) % p for x in vec]
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length mismatch")
        for i, c in enumerate(rref(self.basis).pivots):
            if v[c]:
                f = v[c]
                row = self.basis.row(i)
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains_vector(other.basis.row(i)) for i in range(other.dim))

    def sort_key(self):
        return (self.dim, rref(self.basis).pivots, self.basis.entries)


def kernel_basis(m: Matrix) -> Subspace:
    """Canonical basis of the null space {v : m v = 0} in the domain."""
    r = rref(m)
    p = m.modulus
    pivots = set(r.pivots)
    free = [c for c in range(m.cols) if c not in pivots]
    rows = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for i, c in enumerate(r.pivots):
            v[c] = -r.matrix.entry(i, f) % p
        rows.append(v)
    return Subspace.from_rows(m.cols, p, rows)


def image_basis(m: Matrix) -> Subspace:
    """Canonical basis of the column span inside the codomain."""
    return Subspace.from_rows(m.rows, m.modulus, [m.col(j) for j in range(m.cols)])


def solve(m: Matrix, target: Matrix):
    """One solution X of m X = target, or None.  Free variables are set to 0."""
    if m.modulus != target.modulus:
        raise ShapeError("mixed moduli")
    if m.rows != target.rows:
        raise ShapeError("solve: row mismatch")
    aug = hstack([m, target]) if m.cols + target.cols else Matrix(m.rows, 0, m.modulus, ())
    r = rref(aug)
    for pc in r.pivots:
        if pc >= m.cols:
            return None
    out = [[0] * target.cols for _ in range(m.cols)]
    for i, pc in enumerate(r.pivots):
        for j in range(target.cols):
            out[pc][j] = r.matrix.entry(i, m.cols + j)
    if m.cols == 0:
        return Matrix(0, target.cols, m.modulus, ())
    return Matrix.from_rows(out, m.modulus, cols=target.cols)


def solve_left(m: Matrix, target: Matrix):
    """One solution X of X m = target, or None."""
    xt = solve(m.transpose(), target.transpose())
    return None if xt is None else xt.transpose()


def inverse(m: Matrix):
    if m.rows != m.cols:
        raise ShapeError("inverse of non-square matrix")
    if rank(m) != m.rows:
        return None
    return solve(m, Matrix.identity(m.rows, m.modulus))


def quotient_map(ambient_dim: int, s: Subspace):
    """Projection F_p^n -> F_p^q with kernel exactly s.

    The complement coordinates are the non-pivot columns of the RREF basis,
    so the quotient map is canonical for a canonical subspace.
    """
    if s.ambient_dim != ambient_dim:
        raise ShapeError("ambient mismatch")
    p = s.modulus
    q = ambient_dim - s.dim
    if ambient_dim == 0:
        return Matrix(0, 0, p, ()), 0
    pivots = set(rref(s.basis).pivots)
    complement = [c for c in range(ambient_dim) if c not in pivots]
    cols = [s.basis.row(i) for i in range(s.dim)]
    cols += [tuple(1 if k == c else 0 for k in range(ambient_dim)) for c in complement]
    basis_mat = Matrix.from_rows(cols, p, cols=ambient_dim).transpose()
    inv = inverse(basis_mat)
    proj_rows = [list(inv.row(i)) for i in range(s.dim, ambient_dim)]
    if not proj_rows:
        return Matrix(0, ambient_dim, p, ()), 0
    return Matrix.from_rows(proj_rows, p, cols=ambient_dim), q


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim or a.modulus != b.modulus:
        raise ShapeError("subspace mismatch")
    rows = [a.basis.row(i) for i in range(a.dim)] + [b.basis.row(i) for i in range(b.dim)]
    return Subspace.from_rows(a.ambient_dim, a.modulus, rows)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim or a.modulus != b.modulus:
        raise ShapeError("subspace mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim, a.modulus)
    # v in both spans: v = x B_a = y B_b, solved through the kernel of [B_a^T | -B_b^T]
    stacked = hstack([a.basis.transpose(), b.basis.transpose().neg()])
    k = kernel_basis(stacked)
    rows = []
    for i in range(k.dim):
        coeffs = k.basis.row(i)[:a.dim]
        v = [0] * a.ambient_dim
        for c, idx in zip(coeffs, range(a.dim)):
            row = a.basis.row(idx)
            v = [(x + c * y) % a.modulus for x, y in zip(v, row)]
        rows.append(v)
    return Subspace.from_rows(a.ambient_dim, a.modulus, rows)


def all_vectors(n: int, p: int, budget: int = DEFAULT_VECTOR_BUDGET):
    """Iterate all of F_p^n in odometer order; guarded by the vector budget."""
    if p ** n > budget:
        raise BudgetExceeded(f"{p}^{n} vectors exceed budget {budget}")
    return itertools.product(range(p), repeat=n)


@cache
def _subspaces_cached(n: int, p: int):
    out = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            pivset = set(pivots)
            free_slots = [(i, j) for i in range(k) for j in range(n)
                          if j > pivots[i] and j not in pivset]
            for fill in itertools.product(range(p), repeat=len(free_slots)):
                rows = [[0] * n for _ in range(k)]
                for i, c in enumerate(pivots):
                    rows[i][c] = 1
                for (i, j), v in zip(free_slots, fill):
                    rows[i][j] = v
                if k:
                    basis = Matrix.from_rows(rows, p, cols=n)
                else:
                    basis = Matrix(0, n, p, ())
                out.append(Subspace(n, basis))
    return tuple(out)


def enumerate_subspaces(ambient_dim: int, p: int,
                        budget: int = DEFAULT_VECTOR_BUDGET):
    """All subspaces of F_p^n in canonical order (by dim, pivots, entries).

    The echelon pattern generation touches each subspace once; the guard is
    on p^n, the number of vectors in the ambient space.
    """
    check_prime(p)
    if p ** ambient_dim > budget:
        raise BudgetExceeded(
            f"subspace enumeration in F_{p}^{ambient_dim} exceeds budget {budget}")
    return _subspaces_cached(ambient_dim, p)
