"""Evolution algebras given by a structure matrix in a natural basis.

Row ``i`` of the structure matrix holds the coordinates of ``e_i^2``; distinct
basis vectors multiply to zero, so the product of two elements is
``uv = sum_i u_i v_i e_i^2``.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .errors import (
    DimensionMismatch,
    MixedFieldError,
    NotBasicIdeal,
    NotIdeal,
    NotOneDimensional,
    NotSolvable,
    WrongDimension,
)
from .field import FieldSpec
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    contains,
    is_zero,
    left_kernel,
    lincomb,
    rank,
    span,
    support,
    unit_vector,
    zero_vector,
)


class SeriesKind(enum.Enum):
    LOWER_CENTRAL = "lower_central"
    DERIVED = "derived"


@dataclass(frozen=True)
class SeriesReport:
    """Terms of a power series of subalgebras, starting from the whole algebra.

    ``terms`` stops at the first term that equals its successor; ``index`` is
    the 1-based position of the zero term when the series reaches zero.
    """

    kind: SeriesKind
    terms: tuple
    index: Optional[int]

    @property
    def dims(self) -> tuple:
        return tuple(t.dim for t in self.terms)

    @property
    def reaches_zero(self) -> bool:
        return self.index is not None

    def term(self, k: int) -> Subspace:
        """The ``k``-th term (1-based); positions past the end repeat the fixpoint."""
        if k < 1:
            raise ValueError("series terms are numbered from 1")
        return self.terms[min(k, len(self.terms)) - 1]


@dataclass(frozen=True)
class ElementView:
    vector: Vector
    support: frozenset


class Dim2Class(enum.Enum):
    ABELIAN = "abelian"
    E2_ONE_MINUS_ONE = "E2(1,-1)"
    NILPOTENT_CHAIN = "nilpotent_chain"


@dataclass(frozen=True)
class OneDimQuotient:
    """How a quotient by a line ideal ``span{w}`` was coordinatised.

    ``e_dropped`` is rewritten as ``sum_k substitution[k] e_k`` over the kept
    indices; the images of the kept basis vectors form a natural basis.
    """

    generator: Vector
    dropped: int
    kept: tuple
    substitution: dict

    def project(self, field: FieldSpec, v: Sequence) -> Vector:
        c = v[self.dropped]
        return tuple(field.add(v[k], field.mul(c, self.substitution[k])) for k in self.kept)


@dataclass(frozen=True)
class EvolutionAlgebra:
    field: FieldSpec
    matrix: Matrix
    name: Optional[str] = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(self.field.coerce(x) for x in row) for row in self.matrix)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch(f"structure matrix must be square, got a row of length {len(row)} with {n} rows")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def zero(cls, field: FieldSpec, n: int, name: Optional[str] = None) -> "EvolutionAlgebra":
        return cls(field, tuple((field.zero,) * n for _ in range(n)), name)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"EvolutionAlgebra({label}{self.field}, n={self.n})"

    # -- elements ---------------------------------------------------------
    def vector(self, coords) -> Vector:
        coords = tuple(self.field.coerce(c) for c in coords)
        if len(coords) != self.n:
            raise DimensionMismatch(f"expected {self.n} coordinates, got {len(coords)}")
        return coords

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.field, self.n, i)

    def element_view(self, u: Sequence) -> ElementView:
        return ElementView(tuple(u), support(u))

    def _check_len(self, *vs) -> None:
        for v in vs:
            if len(v) != self.n:
                raise DimensionMismatch(f"vector of length {len(v)} in an algebra of dimension {self.n}")

    def product(self, u: Sequence, v: Sequence) -> Vector:
        self._check_len(u, v)
        f = self.field
        coeffs = [f.mul(a, b) for a, b in zip(u, v)]
        return lincomb(f, coeffs, self.matrix, self.n)

    def square(self, u: Sequence) -> Vector:
        return self.product(u, u)

    def principal_power(self, u: Sequence, k: int) -> Vector:
        """``u^1 = u`` and ``u^k = u^(k-1) u``."""
        if k < 1:
            raise ValueError("principal powers start at k = 1")
        self._check_len(u)
        w = tuple(u)
        for _ in range(k - 1):
            w = self.product(w, u)
        return w

    def plenary_power(self, u: Sequence, k: int) -> Vector:
        """``u^(0) = u`` and ``u^(k) = u^(k-1) u^(k-1)``."""
        if k < 0:
            raise ValueError("plenary powers start at k = 0")
        self._check_len(u)
        w = tuple(u)
        for _ in range(k):
            w = self.square(w)
        return w

    # -- subspaces --------------------------------------------------------
    def whole(self) -> Subspace:
        return Subspace.whole(self.field, self.n)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.n)

    def span(self, vectors) -> Subspace:
        return span(self.field, [self.vector(v) for v in vectors], self.n)

    def coordinate_space(self, indices) -> Subspace:
        return Subspace.coordinate(self.field, self.n, indices)

    def _check_space(self, *spaces: Subspace) -> None:
        for s in spaces:
            if s.ambient_dim != self.n:
                raise DimensionMismatch(f"subspace of {s.field}^{s.ambient_dim} in an algebra of dimension {self.n}")
            if s.field != self.field:
                raise MixedFieldError(f"subspace over {s.field} in an algebra over {self.field}")

    @cached_property
    def annihilator(self) -> Subspace:
        return self.coordinate_space(i for i, row in enumerate(self.matrix) if is_zero(row))

    def is_degenerate(self) -> bool:
        return not self.annihilator.is_zero()

    def subspace_product(self, u: Subspace, v: Subspace) -> Subspace:
        """Span of all products of basis vectors of ``u`` and ``v`` (enough by bilinearity)."""
        self._check_space(u, v)
        if u == v:
            pairs = [(a, b) for i, a in enumerate(u.basis) for b in u.basis[i:]]
        else:
            pairs = [(a, b) for a in u.basis for b in v.basis]
        return span(self.field, [self.product(a, b) for a, b in pairs], self.n)

    @cached_property
    def E2(self) -> Subspace:
        """The derived subalgebra, spanned by the squares of the basis."""
        return span(self.field, self.matrix, self.n)

    # -- series -----------------------------------------------------------
    @cached_property
    def derived_series(self) -> SeriesReport:
        terms = [self.whole()]
        while True:
            nxt = self.subspace_product(terms[-1], terms[-1])
            if nxt == terms[-1]:
                break
            terms.append(nxt)
            if nxt.is_zero():
                break
        index = len(terms) if terms[-1].is_zero() else None
        return SeriesReport(SeriesKind.DERIVED, tuple(terms), index)

    @cached_property
    def lower_central_series(self) -> SeriesReport:
        powers = [None, self.whole()]  # 1-based
        stable_from = 1
        while True:
            k = len(powers) - 1
            acc = self.zero_space()
            for i in range(1, (k + 1) // 2 + 1):
                prod = self.subspace_product(powers[i], powers[k + 1 - i])
                acc = span(self.field, acc.basis + prod.basis, self.n)
            powers.append(acc)
            if acc.is_zero():
                break
            if acc != powers[-2]:
                stable_from = k + 1
            elif k + 1 - stable_from >= stable_from:
                # every later term is E * E^s, which equals this plateau
                break
        terms = []
        for t in powers[1:]:
            if terms and terms[-1] == t:
                continue
            terms.append(t)
        index = len(powers) - 1 if powers[-1].is_zero() else None
        return SeriesReport(SeriesKind.LOWER_CENTRAL, tuple(terms), index)

    def is_nilpotent(self) -> bool:
        return self.lower_central_series.index is not None

    def is_solvable(self) -> bool:
        return self.derived_series.index is not None

    @property
    def nilpotency_index(self) -> Optional[int]:
        return self.lower_central_series.index

    @property
    def solvability_index(self) -> Optional[int]:
        return self.derived_series.index

    # -- ideals -----------------------------------------------------------
    def is_subalgebra(self, u: Subspace) -> bool:
        self._check_space(u)
        for i, a in enumerate(u.basis):
            for b in u.basis[i:]:
                if not is_zero(u.reduce(self.product(a, b))):
                    return False
        return True

    def is_ideal(self, u: Subspace) -> bool:
        """``E u`` inside ``u``; enough to check ``e_j u_b`` for basis vectors."""
        self._check_space(u)
        for b in u.basis:
            for j, c in enumerate(b):
                if c != 0 and not is_zero(u.reduce(self.matrix[j])):
                    return False
        return True

    def is_basic_ideal(self, u: Subspace) -> bool:
        return u.is_coordinate() and self.is_ideal(u)

    def quotient_by_basic_ideal(self, ideal: Subspace) -> tuple["EvolutionAlgebra", tuple]:
        """Delete the rows and columns of the ideal's basis indices.

        Returns the quotient and the original indices of its basis vectors.
        """
        if not self.is_basic_ideal(ideal):
            raise NotBasicIdeal("quotient needs a basic ideal")
        drop = set(ideal.coordinate_indices())
        kept = tuple(i for i in range(self.n) if i not in drop)
        rows = tuple(tuple(self.matrix[i][k] for k in kept) for i in kept)
        return EvolutionAlgebra(self.field, rows, _derived_name(self.name, "quotient")), kept

    def quotient_by_onedim_ideal(self, ideal: Subspace) -> tuple["EvolutionAlgebra", OneDimQuotient]:
        """Quotient by a one-dimensional ideal ``span{w}``.

        The largest index in the support of ``w`` is eliminated through
        ``e_j = -w_j^{-1} sum_{k != j} w_k e_k``.
        """
        if ideal.dim != 1:
            raise NotOneDimensional(f"ideal has dimension {ideal.dim}")
        if not self.is_ideal(ideal):
            raise NotIdeal("subspace is not an ideal")
        f = self.field
        w = ideal.basis[0]
        j0 = max(support(w))
        kept = tuple(k for k in range(self.n) if k != j0)
        inv = f.inv(w[j0])
        subst = {k: f.neg(f.mul(inv, w[k])) for k in kept}
        witness = OneDimQuotient(w, j0, kept, subst)
        rows = tuple(witness.project(f, self.matrix[i]) for i in kept)
        return EvolutionAlgebra(f, rows, _derived_name(self.name, "quotient")), witness

    def direct_sum(self, other: "EvolutionAlgebra") -> "EvolutionAlgebra":
        if other.field != self.field:
            raise MixedFieldError(f"cannot add algebras over {self.field} and {other.field}")
        z = self.field.zero
        rows = [row + (z,) * other.n for row in self.matrix]
        rows += [(z,) * self.n + row for row in other.matrix]
        return EvolutionAlgebra(self.field, tuple(rows))

    def element_annihilator(self, u: Sequence) -> Subspace:
        """Kernel of ``x -> xu``."""
        self._check_len(u)
        f = self.field
        images = [tuple(f.mul(c, x) for x in row) for c, row in zip(u, self.matrix)]
        return span(f, left_kernel(f, images, self.n), self.n)

    def classify_dim2_solvable(self) -> Dim2Class:
        if self.n != 2:
            raise WrongDimension(f"expected a two-dimensional algebra, got n={self.n}")
        if not self.is_solvable():
            raise NotSolvable("algebra is not solvable")
        sq = self.E2
        if sq.is_zero():
            return Dim2Class.ABELIAN
        # solvable forces E^2 = span{w} with w^2 = 0; the support of w decides the class
        if len(support(sq.basis[0])) == 2:
            return Dim2Class.E2_ONE_MINUS_ONE
        return Dim2Class.NILPOTENT_CHAIN

    # -- basis changes ------------------------------------------------------
    def permuted(self, order: Sequence[int]) -> "EvolutionAlgebra":
        """Algebra in the natural basis ``f_t = e_{order[t]}``."""
        if sorted(order) != list(range(self.n)):
            raise DimensionMismatch(f"{tuple(order)} is not a permutation of {self.n} indices")
        rows = tuple(tuple(self.matrix[i][k] for k in order) for i in order)
        return EvolutionAlgebra(self.field, rows, self.name)

    def rescaled(self, scales: Sequence) -> "EvolutionAlgebra":
        """Algebra in the natural basis ``f_i = c_i e_i``: ``a'_ik = a_ik c_i^2 / c_k``."""
        f = self.field
        cs = [f.coerce(c) for c in scales]
        rows = tuple(
            tuple(f.div(f.mul(a, f.square(cs[i])), cs[k]) for k, a in enumerate(row))
            for i, row in enumerate(self.matrix)
        )
        return EvolutionAlgebra(f, rows, self.name)

    def over(self, field: FieldSpec) -> "EvolutionAlgebra":
        """Same integer/rational structure constants read in another field."""
        return EvolutionAlgebra(field, tuple(tuple(field.coerce(x) for x in row) for row in self.matrix), self.name)

    def rank(self) -> int:
        return rank(self.field, self.matrix)


def _derived_name(name: Optional[str], suffix: str) -> Optional[str]:
    return f"{name}/{suffix}" if name else None


def is_nilpotent(a: EvolutionAlgebra) -> bool:
    return a.is_nilpotent()


def is_solvable(a: EvolutionAlgebra) -> bool:
    return a.is_solvable()
