"""Dense linear algebra over F_q: RREF, subspaces, the subspace metric, GL sampling."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from spreadec.field_tower import Field

__all__ = [
    "DEFAULT_ENUM_CAP",
    "EnumerationCapError",
    "Matrix",
    "RowReducer",
    "Rng",
    "Subspace",
    "companion_matrix",
    "enum_cap",
    "enumerate_subspaces",
    "enumerate_vectors",
    "identity",
    "intersection",
    "intersection_dim",
    "make_rng",
    "matmul",
    "matrix_order",
    "random_full_rank",
    "random_gl",
    "random_matrix",
    "random_subspace",
    "rank",
    "rref",
    "subspace_distance",
    "sum_space",
]

Rng = np.random.Generator
Vector = tuple[int, ...]

DEFAULT_ENUM_CAP = 1 << 20


class EnumerationCapError(RuntimeError):
    """A requested enumeration exceeds the configured cap."""


def enum_cap() -> int:
    """The enumeration cap, overridable through ``SPREADEC_ENUM_CAP``."""
    raw = os.environ.get("SPREADEC_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


def make_rng(seed: int | np.random.SeedSequence | None = None) -> Rng:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: tuple[Vector, ...]
    ncols: int

    @classmethod
    def of(cls, field: Field, rows: Iterable[Sequence[int]], ncols: int | None = None) -> Matrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        if any(not 0 <= x < field.order for r in rows for x in r):
            raise ValueError(f"entry outside {field.name}")
        return cls(field, rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, i: int) -> Vector:
        return self.rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def vstack(self, other: Matrix) -> Matrix:
        if other.ncols != self.ncols:
            raise ValueError("column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.shape)


def identity(field: Field, n: int) -> Matrix:
    return Matrix(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    F = a.field
    cols = [b.column(j) for j in range(b.ncols)]
    rows = []
    for r in a.rows:
        row = []
        for c in cols:
            acc = 0
            for x, y in zip(r, c):
                if x and y:
                    acc = F.add(acc, F.mul(x, y))
            row.append(acc)
        rows.append(tuple(row))
    return Matrix(F, tuple(rows), b.ncols)


def _axpy(F: Field, c: int, x: Vector, y: Vector) -> Vector:
    """``y - c*x``."""
    return tuple(F.sub(yi, F.mul(c, xi)) if xi else yi for xi, yi in zip(x, y))


def _rref_rows(F: Field, rows: Sequence[Vector], ncols: int) -> tuple[list[Vector], list[int]]:
    work = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(work):
            break
        piv = next((i for i in range(top, len(work)) if work[i][col]), None)
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        inv = F.inv(work[top][col])
        if inv != 1:
            work[top] = [F.mul(inv, x) for x in work[top]]
        pivot_row = work[top]
        for i in range(len(work)):
            c = work[i][col]
            if i != top and c:
                work[i] = [F.sub(y, F.mul(c, x)) if x else y for x, y in zip(pivot_row, work[i])]
        pivots.append(col)
        top += 1
    return [tuple(r) for r in work[:top]], pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form (zero rows dropped) and rank."""
    rows, pivots = _rref_rows(m.field, m.rows, m.ncols)
    return Matrix(m.field, tuple(rows), m.ncols), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


class RowReducer:
    """Incremental RREF accumulator; ``add`` reports whether the rank grew."""

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> list[int]:
        F = self.field
        v = list(v)
        for row, col in zip(self.rows, self.pivots):
            c = v[col]
            if c:
                v = [F.sub(y, F.mul(c, x)) if x else y for x, y in zip(row, v)]
        return v

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[int]) -> bool:
        F = self.field
        v = self.reduce(v)
        col = next((j for j, x in enumerate(v) if x), None)
        if col is None:
            return False
        inv = F.inv(v[col])
        v = [F.mul(inv, x) for x in v]
        for i, row in enumerate(self.rows):
            c = row[col]
            if c:
                self.rows[i] = [F.sub(y, F.mul(c, x)) if x else y for x, y in zip(v, row)]
        at = next((i for i, p in enumerate(self.pivots) if p > col), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, col)
        return True


def companion_matrix(field: Field, poly: Sequence[int]) -> Matrix:
    """Companion matrix of a monic polynomial (constant term first).

    Ones on the superdiagonal, the negated low coefficients in the last row.
    """
    if len(poly) < 2:
        raise ValueError("polynomial must have degree >= 1")
    if poly[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    k = len(poly) - 1
    rows = [tuple(int(j == i + 1) for j in range(k)) for i in range(k - 1)]
    rows.append(tuple(field.neg(c) for c in poly[:-1]))
    return Matrix(field, tuple(rows), k)


def matrix_order(m: Matrix, cap: int) -> int:
    """Smallest ``e >= 1`` with ``m**e == I``; raise if singular or beyond ``cap``."""
    if m.nrows != m.ncols:
        raise ValueError("matrix_order needs a square matrix")
    if rank(m) < m.nrows:
        raise ValueError("singular matrix has no multiplicative order")
    eye = identity(m.field, m.nrows)
    acc = m
    for e in range(1, cap + 1):
        if acc.rows == eye.rows:
            return e
        acc = matmul(acc, m)
    raise ValueError(f"matrix order exceeds cap {cap}")


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n held by its RREF basis (no zero rows)."""

    field: Field
    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> Subspace:
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise ValueError("vector length differs from ambient dimension")
        rows, _ = _rref_rows(field, vectors, ambient_dim)
        return cls(field, ambient_dim, tuple(rows))

    @classmethod
    def row_space(cls, m: Matrix) -> Subspace:
        return cls.span(m.field, m.ncols, m.rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient_dim)

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        F = self.field
        v = list(v)
        for row, col in zip(self.basis, self.pivots()):
            c = v[col]
            if c:
                v = [F.sub(y, F.mul(c, x)) if x else y for x, y in zip(row, v)]
        return not any(v)


def _same_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {u.ambient_dim} vs {v.ambient_dim}")
    if u.field is not v.field:
        raise ValueError("subspaces over different fields")


def sum_space(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    return Subspace.span(u.field, u.ambient_dim, u.basis + v.basis)


def intersection_dim(u: Subspace, v: Subspace) -> int:
    return u.dim + v.dim - sum_space(u, v).dim


def subspace_distance(u: Subspace, v: Subspace) -> int:
    """``dim(U+V) - dim(U cap V)``."""
    s = sum_space(u, v).dim
    return s - (u.dim + v.dim - s)


def _kernel(F: Field, rows: Sequence[Vector], ncols: int) -> list[Vector]:
    """Basis of ``{x : x M = 0}`` for the matrix with the given rows (left kernel)."""
    m = len(rows)
    # left kernel of M = right kernel of M^T
    cols = [tuple(r[j] for r in rows) for j in range(ncols)]
    red, pivots = _rref_rows(F, cols, m)
    free = [j for j in range(m) if j not in pivots]
    out = []
    for f in free:
        x = [0] * m
        x[f] = 1
        for row, p in zip(red, pivots):
            x[p] = F.neg(row[f])
        out.append(tuple(x))
    return out


def intersection(u: Subspace, v: Subspace) -> Subspace:
    """Explicit basis of ``U cap V`` from the left kernel of the stacked bases."""
    _same_ambient(u, v)
    F = u.field
    stacked = u.basis + v.basis
    vecs = []
    for x in _kernel(F, stacked, u.ambient_dim):
        w = [0] * u.ambient_dim
        for c, row in zip(x[: u.dim], u.basis):
            if c:
                w = [F.add(a, F.mul(c, b)) for a, b in zip(w, row)]
        vecs.append(w)
    return Subspace.span(F, u.ambient_dim, vecs)


def enumerate_vectors(u: Subspace, cap: int | None = None) -> Iterator[Vector]:
    """All ``q**dim - 1`` nonzero vectors of ``u``."""
    F = u.field
    cap = enum_cap() if cap is None else cap
    if F.order**u.dim - 1 > cap:
        raise EnumerationCapError(f"{F.order}^{u.dim} vectors exceed enumeration cap {cap}")
    for coeffs in itertools.product(range(F.order), repeat=u.dim):
        if not any(coeffs):
            continue
        v = [0] * u.ambient_dim
        for c, row in zip(coeffs, u.basis):
            if c:
                v = [F.add(a, F.mul(c, b)) for a, b in zip(v, row)]
        yield tuple(v)


def enumerate_subspaces(field: Field, n: int, dim: int) -> Iterator[Subspace]:
    """Every ``dim``-dimensional subspace of F_q^n, once, via RREF shapes."""
    q = field.order
    for pivots in itertools.combinations(range(n), dim):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(dim)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), x in zip(free, vals):
                rows[i][j] = x
            yield Subspace(field, n, tuple(tuple(r) for r in rows))


# -- sampling ----------------------------------------------------------------


def random_matrix(field: Field, rows: int, cols: int, rng: Rng) -> Matrix:
    data = rng.integers(0, field.order, size=(rows, cols))
    return Matrix(field, tuple(tuple(int(x) for x in r) for r in data), cols)


def random_full_rank(field: Field, rows: int, cols: int, rng: Rng) -> Matrix:
    """Uniform ``rows x cols`` matrix of full row rank, by rejection."""
    if rows > cols:
        raise ValueError("full row rank impossible with rows > cols")
    while True:
        m = random_matrix(field, rows, cols, rng)
        if rank(m) == rows:
            return m


def random_gl(field: Field, dim: int, rng: Rng) -> Matrix:
    """Uniform element of GL_dim(F_q), by rejection."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return random_full_rank(field, dim, dim, rng)


def random_subspace(field: Field, n: int, dim: int, rng: Rng) -> Subspace:
    return Subspace.row_space(random_full_rank(field, dim, n, rng))
