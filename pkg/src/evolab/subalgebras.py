"""Generated subalgebras, subalgebra enumeration and quasi-ideals."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .algebra import EvolutionAlgebra
from .errors import EnumerationCapExceeded, StructuralPreconditionFailed, UnsupportedOverInfiniteField
from .linalg import (
    Subspace,
    count_subspaces,
    enumeration_cap,
    rref_batches,
    span,
    subspace_sum,
)
from .normal_forms import (
    max_solvable_normal_form,
    pair_first_chain_form,
    triangular_order,
)
from .verdict import Verdict


class Method(enum.Enum):
    BRUTE_FORCE = "brute-force"
    STRUCTURAL_CHAIN = "structural-chain"
    STRUCTURAL_MAX_SOLVABLE = "structural-max-solvable"


@dataclass(frozen=True)
class SubalgebraSet:
    """All subalgebras of an algebra, sorted by dimension then basis."""

    algebra: EvolutionAlgebra
    members: tuple
    method: Method

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.members)

    def __contains__(self, u) -> bool:
        return u in self._index

    @property
    def _index(self) -> dict:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {u: i for i, u in enumerate(self.members)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def index(self, u: Subspace) -> int:
        return self._index[u]

    def of_dim(self, d: int) -> list:
        return [u for u in self.members if u.dim == d]

    def proper_nonzero(self) -> list:
        return [u for u in self.members if not u.is_zero() and not u.is_whole()]

    def counts_by_dim(self) -> dict:
        out = {}
        for u in self.members:
            out[u.dim] = out.get(u.dim, 0) + 1
        return out


def _make_set(a: EvolutionAlgebra, members: Iterable[Subspace], method: Method) -> SubalgebraSet:
    return SubalgebraSet(a, tuple(sorted(set(members))), method)


def generated_subalgebra(a: EvolutionAlgebra, vectors: Iterable[Sequence]) -> Subspace:
    """Least subalgebra containing ``vectors``: iterate ``U <- U + U U`` to a fixpoint."""
    u = a.span(list(vectors))
    while True:
        nxt = subspace_sum(u, a.subspace_product(u, u))
        if nxt == u:
            return u
        u = nxt


def join(a: EvolutionAlgebra, u: Subspace, v: Subspace) -> Subspace:
    if u == v and a.is_subalgebra(u):
        return u
    return generated_subalgebra(a, u.basis + v.basis)


def _closed_mask(batch: np.ndarray, m: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    """Which RREF bases in ``batch`` span subspaces closed under the product."""
    count, k, _ = batch.shape
    ok = np.ones(count, dtype=bool)
    piv = list(pivots)
    for i in range(k):
        for j in range(i, k):
            idx = np.nonzero(ok)[0]
            if idx.size == 0:
                return ok
            x = batch[idx]
            prod = ((x[:, i, :] * x[:, j, :]) @ m) % p
            # subtract the combination of basis rows matching the pivot coordinates
            coeff = prod[:, piv]
            resid = (prod - np.einsum("ck,ckn->cn", coeff, x)) % p
            ok[idx] = ~resid.any(axis=1)
    return ok


def enumerate_brute_force(a: EvolutionAlgebra, cap: Optional[int] = None) -> SubalgebraSet:
    """Scan every subspace of ``GF(p)^n`` and keep the closed ones."""
    f = a.field
    if not f.is_prime:
        raise UnsupportedOverInfiniteField("brute-force enumeration needs a finite field")
    n, p = a.n, f.p
    cap = enumeration_cap() if cap is None else cap
    total = count_subspaces(p, n)
    if total > cap:
        raise EnumerationCapExceeded(f"{total} subspaces of {f}^{n} exceed the cap {cap}")
    m = np.array(a.matrix, dtype=np.int64).reshape(n, n)
    members = []
    for k in range(n + 1):
        for pivots, batch in rref_batches(p, n, k):
            ok = batch if k == 0 else batch[_closed_mask(batch, m, pivots, p)]
            for mat in ok.tolist():
                members.append(Subspace(f, n, tuple(tuple(r) for r in mat)))
    return _make_set(a, members, Method.BRUTE_FORCE)


def enumerate_structural(a: EvolutionAlgebra) -> SubalgebraSet:
    """Subalgebras read off a normal form, over any field of characteristic not 2.

    Handles nilpotent algebras with ``codim E^2 = 1`` (the lattice is a
    chain) and algebras with a leading ``(1 1; -1 -1)`` block over a strictly
    lower triangular part with full subdiagonal (a chain with rhombi).
    """
    f = a.field
    f.require_char_ne_2("structural enumeration")
    n = a.n
    if a.E2.dim == n - 1:
        tri = triangular_order(a)
        if tri is not None and a.is_nilpotent():
            chain = [a.zero_space()]
            for k in range(n - 1, -1, -1):
                chain.append(a.coordinate_space(tri.order[k:]))
            return _make_set(a, chain, Method.STRUCTURAL_CHAIN)
    form = pair_first_chain_form(a)
    if form is None or form.rank != n - 1:
        raise StructuralPreconditionFailed(
            "needs a nilpotent algebra with codim E^2 = 1 or the block-plus-chain normal form"
        )
    b = form.algebra
    one, mone, zero = f.one, f.neg(f.one), f.zero

    def unit(i):
        v = [zero] * n
        v[i] = one
        return tuple(v)

    plus = (one, one) + (zero,) * (n - 2)
    minus = (one, mone) + (zero,) * (n - 2)
    found = [b.zero_space(), b.span([plus]), b.span([minus])]
    found += [b.coordinate_space(range(k)) for k in range(2, n + 1)]
    # the lower branch span{f1-f2, f3, ..., fk} survives while each new square stays inside
    branch = b.span([minus])
    for j in range(2, n):
        if b.matrix[j] not in branch:
            break
        branch = b.span(branch.basis + (unit(j),))
        found.append(branch)
    change = form.change
    return _make_set(a, [change.space_to_original(u) for u in found], Method.STRUCTURAL_MAX_SOLVABLE)


def onedim_subalgebras_max_solvable(a: EvolutionAlgebra) -> list:
    """The ``2^m`` sign-pattern lines of a solvable algebra with ``codim E^2 = 1``."""
    f = a.field
    f.require_char_ne_2("sign-pattern subalgebras")
    if a.E2.dim != a.n - 1 or not a.is_solvable():
        raise StructuralPreconditionFailed("needs a solvable algebra with codim E^2 = 1")
    nf = max_solvable_normal_form(a)
    n, m = a.n, nf.m
    one, mone = f.one, f.neg(f.one)
    out = []
    # global sign fixed by +1 on the lowest coordinate
    for signs in itertools.product((one, mone), repeat=m):
        lead = (one,) + signs[1:] if m else ()
        x = lead + (f.zero,) * (n - 1 - m) + ((signs[0] if m else one),)
        out.append(x)
    return sorted({span(f, [nf.change.to_original(x)], n) for x in out})


def is_quasi_ideal(a: EvolutionAlgebra, u: Subspace, subalgebras: Iterable[Subspace]) -> Verdict:
    """Whether ``<U, V> = U + V`` for every subalgebra ``V``; the witness is a failing ``V``."""
    for v in subalgebras:
        if not a.is_subalgebra(subspace_sum(u, v)):
            return Verdict(False, v)
    return Verdict(True)


def enumerate_subalgebras(a: EvolutionAlgebra, cap: Optional[int] = None) -> SubalgebraSet:
    """Structural enumeration when a normal form applies, brute force otherwise."""
    if a.field.char_ne_2:
        try:
            return enumerate_structural(a)
        except StructuralPreconditionFailed:
            pass
    return enumerate_brute_force(a, cap)
