"""Exact vectors, matrices and canonical subspaces.

Vectors and matrix rows are tuples of raw field elements (see
:mod:`evolab.field`).  A :class:`Subspace` stores its reduced row echelon
basis, so two subspaces are equal exactly when their bases are identical.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, EnumerationCapExceeded, InfiniteFieldError
from .field import FieldSpec

Vector = tuple
Matrix = tuple  # tuple of row tuples

DEFAULT_CAP = 10**6


def enumeration_cap() -> int:
    """The brute-force cap, overridable with the ``EVOLAB_CAP`` environment variable."""
    env = os.environ.get("EVOLAB_CAP")
    return int(env) if env else DEFAULT_CAP


def zero_vector(field: FieldSpec, n: int) -> Vector:
    return (field.zero,) * n


def unit_vector(field: FieldSpec, n: int, i: int) -> Vector:
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def vector(field: FieldSpec, coords: Iterable) -> Vector:
    return tuple(field.coerce(c) for c in coords)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def support(v: Sequence) -> frozenset:
    return frozenset(i for i, x in enumerate(v) if x != 0)


def vadd(field: FieldSpec, u: Sequence, v: Sequence) -> Vector:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vsub(field: FieldSpec, u: Sequence, v: Sequence) -> Vector:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vscale(field: FieldSpec, c, v: Sequence) -> Vector:
    return tuple(field.mul(c, x) for x in v)


def lincomb(field: FieldSpec, coeffs: Sequence, rows: Sequence[Sequence], n: int) -> Vector:
    out = [field.zero] * n
    for c, row in zip(coeffs, rows):
        if c == 0:
            continue
        for k, x in enumerate(row):
            if x != 0:
                out[k] = field.add(out[k], field.mul(c, x))
    return tuple(out)


def transpose(m: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def rref_with_pivots(field: FieldSpec, rows: Iterable[Sequence]) -> tuple[Matrix, tuple]:
    """Reduced row echelon form with zero rows dropped, plus the pivot columns."""
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = field.inv(work[r][c])
        work[r] = [field.mul(inv, x) for x in work[r]]
        prow = work[r]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(work[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work[:r]), tuple(pivots)


def rref(field: FieldSpec, rows: Iterable[Sequence]) -> Matrix:
    return rref_with_pivots(field, rows)[0]


def rank(field: FieldSpec, rows: Iterable[Sequence]) -> int:
    return len(rref_with_pivots(field, rows)[1])


def nullspace(field: FieldSpec, m: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{x : m x = 0}`` for a matrix with ``ncols`` columns."""
    red, pivots = rref_with_pivots(field, m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for row, pc in zip(red, pivots):
            x[pc] = field.neg(row[f])
        basis.append(tuple(x))
    return basis


def left_kernel(field: FieldSpec, rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of the coefficient vectors ``c`` with ``sum c_i rows_i = 0``."""
    if not rows:
        return []
    return nullspace(field, transpose(rows), len(rows))


def solve(field: FieldSpec, rows: Sequence[Sequence], target: Sequence) -> Optional[Vector]:
    """Coefficients ``c`` with ``sum c_i rows_i = target``, or ``None``."""
    k = len(rows)
    n = len(target)
    aug = [tuple(rows[i][j] for i in range(k)) + (target[j],) for j in range(n)]
    red, pivots = rref_with_pivots(field, aug)
    if k in pivots:
        return None
    c = [field.zero] * k
    for row, pc in zip(red, pivots):
        c[pc] = row[k]
    return tuple(c)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of ``K^n`` held by its canonical RREF basis."""

    field: FieldSpec
    ambient_dim: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple:
        return tuple(next(i for i, x in enumerate(row) if x != 0) for row in self.basis)

    @cached_property
    def sort_key(self) -> tuple:
        flat = tuple(int(x) if self.field.is_prime else x for row in self.basis for x in row)
        return (self.dim, flat)

    def __lt__(self, other: "Subspace") -> bool:
        return self.sort_key < other.sort_key

    def is_zero(self) -> bool:
        return not self.basis

    def is_whole(self) -> bool:
        return self.dim == self.ambient_dim

    def is_coordinate(self) -> bool:
        """True when spanned by a subset of the standard basis vectors."""
        return all(sum(1 for x in row if x != 0) == 1 for row in self.basis)

    def coordinate_indices(self) -> tuple:
        return self.pivots

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after clearing the pivot columns."""
        f = self.field
        out = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = out[pc]
            if c != 0:
                out = [f.sub(a, f.mul(c, b)) for a, b in zip(out, row)]
        return tuple(out)

    def coordinates(self, v: Sequence) -> Optional[Vector]:
        """Coefficients of ``v`` on the RREF basis, ``None`` if ``v`` is outside."""
        if not is_zero(self.reduce(v)):
            return None
        return tuple(v[pc] for pc in self.pivots)

    def __contains__(self, v) -> bool:
        return member(self, v)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, ())

    @classmethod
    def whole(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, tuple(unit_vector(field, n, i) for i in range(n)))

    @classmethod
    def coordinate(cls, field: FieldSpec, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(field, n, tuple(unit_vector(field, n, i) for i in sorted(set(indices))))

    def __repr__(self) -> str:
        from .render import format_subspace

        return f"Subspace({format_subspace(self)} in {self.field}^{self.ambient_dim})"


def span(field: FieldSpec, vectors: Iterable[Sequence], n: int) -> Subspace:
    rows = [tuple(v) for v in vectors]
    for v in rows:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {n}")
    return Subspace(field, n, rref(field, rows))


def _check(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {u.ambient_dim} and {v.ambient_dim}")
    if u.field != v.field:
        from .errors import MixedFieldError

        raise MixedFieldError(f"subspaces over {u.field} and {v.field}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check(u, v)
    if v.is_zero() or u.is_whole():
        return u
    if u.is_zero() or v.is_whole():
        return v
    return span(u.field, u.basis + v.basis, u.ambient_dim)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked system ``a U - b V = 0``."""
    _check(u, v)
    f, n = u.field, u.ambient_dim
    if u.is_zero() or v.is_whole():
        return u
    if v.is_zero() or u.is_whole():
        return v
    stacked = list(u.basis) + [vscale(f, f.neg(f.one), r) for r in v.basis]
    vecs = [lincomb(f, c[: u.dim], u.basis, n) for c in left_kernel(f, stacked, n)]
    return span(f, vecs, n)


def contains(u: Subspace, v: Subspace) -> bool:
    """Whether ``v`` is a subspace of ``u``."""
    _check(u, v)
    if v.dim > u.dim:
        return False
    return all(is_zero(u.reduce(r)) for r in v.basis)


def member(u: Subspace, x: Sequence) -> bool:
    if len(x) != u.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(x)} in ambient dimension {u.ambient_dim}")
    return is_zero(u.reduce(x))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``GF(q)^n``."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(q: int, n: int, dims: Optional[Iterable[int]] = None) -> int:
    dims = range(n + 1) if dims is None else dims
    return sum(gaussian_binomial(n, k, q) for k in dims)


def _dims(n: int, dim_filter) -> list[int]:
    if dim_filter is None:
        return list(range(n + 1))
    if isinstance(dim_filter, int):
        return [dim_filter] if 0 <= dim_filter <= n else []
    return sorted({d for d in dim_filter if 0 <= d <= n})


def rref_batches(p: int, n: int, k: int) -> Iterator[tuple[tuple, np.ndarray]]:
    """All RREF ``k x n`` matrices over GF(p), grouped by pivot columns.

    Yields ``(pivots, batch)`` where ``batch`` has shape ``(count, k, n)``.
    """
    if k == 0:
        yield (), np.zeros((1, 0, n), dtype=np.int64)
        return
    for pivots in itertools.combinations(range(n), k):
        pset = set(pivots)
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pset]
        count = p ** len(free)
        batch = np.zeros((count, k, n), dtype=np.int64)
        for r, pc in enumerate(pivots):
            batch[:, r, pc] = 1
        if free:
            # mixed-radix digits of 0..count-1, most significant first
            idx = np.arange(count, dtype=np.int64)
            for pos in range(len(free) - 1, -1, -1):
                r, c = free[pos]
                batch[:, r, c] = idx % p
                idx //= p
        yield pivots, batch


def all_subspaces(field: FieldSpec, n: int, dim_filter=None, cap: Optional[int] = None) -> Iterator[Subspace]:
    """Every subspace of ``GF(p)^n`` exactly once (optionally only some dimensions)."""
    if not field.is_prime:
        raise InfiniteFieldError("subspace enumeration needs a finite field")
    cap = enumeration_cap() if cap is None else cap
    dims = _dims(n, dim_filter)
    total = count_subspaces(field.p, n, dims)
    if total > cap:
        raise EnumerationCapExceeded(f"{total} subspaces of {field}^{n} exceed the cap {cap}")
    return _iter_subspaces(field, n, dims)


def _iter_subspaces(field: FieldSpec, n: int, dims: list[int]) -> Iterator[Subspace]:
    for k in dims:
        for _, batch in rref_batches(field.p, n, k):
            for mat in batch.tolist():
                yield Subspace(field, n, tuple(tuple(r) for r in mat))
