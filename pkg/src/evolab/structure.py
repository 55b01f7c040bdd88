"""Structural analyzers: maximum solvability, supersolvability, normal forms and
the lattice-theoretic characterizations built on them."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional

from .algebra import EvolutionAlgebra
from .errors import NormalFormScalingUnavailable, NotSolvable, StructuralPreconditionFailed
from .linalg import (
    Subspace,
    enumeration_cap,
    is_zero,
    left_kernel,
    subspace_sum,
    support,
    unit_vector,
)
from .normal_forms import (
    BlockForm,
    MaxSolvableNormalForm,
    block_normal_form,
    max_solvable_normal_form,
    triangular_order,
)
from .subalgebras import enumerate_brute_force
from .verdict import Verdict

__all__ = [
    "has_max_solvability_index",
    "max_solvable_normal_form",
    "onedim_ideals",
    "is_supersolvable",
    "check_supersolvable_theorem",
    "nilpotent_distributivity_bundle",
    "nilpotent_modularity_checks",
    "derived_series_basic_pattern",
    "max_solvable_supersolvable_equivalence",
    "modularity_criterion_max_solvable",
    "analyze",
    "StructureVerdict",
    "absolute_nilpotent_outside_ann",
    "family_one_basic_ideal",
    "lambda_pairs",
]


def has_max_solvability_index(a: EvolutionAlgebra) -> bool:
    """Solvable with index ``n + 1``, which happens exactly when ``codim E^2 = 1``."""
    if not a.is_solvable():
        raise NotSolvable("maximum solvability index is defined for solvable algebras")
    return a.n > 0 and a.E2.dim == a.n - 1


def _require_max_solvable(a: EvolutionAlgebra) -> None:
    a.field.require_char_ne_2()
    if not has_max_solvability_index(a):
        raise StructuralPreconditionFailed("needs a solvable algebra with codim E^2 = 1")


# -- supersolvability ------------------------------------------------------

def onedim_ideals(a: EvolutionAlgebra) -> list:
    """One-dimensional ideals spanned by a basis square or an annihilator basis vector.

    A line ``span{w}`` is an ideal iff ``e_j^2`` lies in it for every ``j`` in
    the support of ``w``.  If some such square is nonzero the line is
    ``span{e_j^2}``; otherwise ``w`` lies in the annihilator, so these
    candidates exhaust the ideal lines up to the other lines of a
    multi-dimensional annihilator.
    """
    found = set()
    for row in a.matrix:
        if is_zero(row):
            continue
        line = a.span([row])
        if a.is_ideal(line):
            found.add(line)
    for i in a.annihilator.pivots:
        found.add(a.coordinate_space([i]))
    return sorted(found)


def _lift(chain_maps: list, v: tuple, f) -> tuple:
    """Representative in the original coordinates of a vector of a nested quotient."""
    for kept, n in reversed(chain_maps):
        out = [f.zero] * n
        for k, x in zip(kept, v):
            out[k] = x
        v = tuple(out)
    return v


@dataclass(frozen=True)
class QuotientLevel:
    algebra: EvolutionAlgebra
    generator: Optional[tuple]  # the one-dimensional ideal used, in this level's coordinates


def _flag_levels(a: EvolutionAlgebra) -> tuple:
    """Greedy descent through quotients by one-dimensional ideals.

    Quotients of a supersolvable algebra are supersolvable, so it never
    matters which ideal is chosen: the descent reaches dimension zero iff
    the algebra is supersolvable.
    """
    levels = []
    maps = []
    cur = a
    flag = []
    f = a.field
    while cur.n:
        ideals = onedim_ideals(cur)
        if not ideals:
            levels.append(QuotientLevel(cur, None))
            return tuple(levels), tuple(flag), False
        w = ideals[0].basis[0]
        levels.append(QuotientLevel(cur, w))
        lifted = _lift(maps, w, f)
        prev = flag[-1] if flag else a.zero_space()
        flag.append(subspace_sum(prev, a.span([lifted])))
        cur, q = cur.quotient_by_onedim_ideal(ideals[0])
        maps.append((q.kept, levels[-1].algebra.n))
    levels.append(QuotientLevel(cur, None))
    return tuple(levels), tuple(flag), True


def is_supersolvable(a: EvolutionAlgebra) -> Verdict:
    """A complete flag of ideals exists; the witness is the flag (or the stuck quotient)."""
    levels, flag, ok = _flag_levels(a)
    if ok:
        return Verdict(True, flag)
    return Verdict(False, levels[-1].algebra)


def family_one_basic_ideal(a: EvolutionAlgebra) -> Optional[tuple]:
    """Indices ``L`` of a basic ideal with one-dimensional, absolutely nilpotent square.

    Such an ideal is a rescaled copy of ``e_i^2 = lambda_i (e_1 + ... + e_k)``:
    the squares of ``e_i`` (``i`` in ``L``) are multiples of one vector ``w``
    supported exactly on ``L``, and ``w^2 = 0``.
    """
    for row in a.matrix:
        if is_zero(row):
            continue
        idx = sorted(support(row))
        if len(idx) < 2:
            continue
        line = a.span([row])
        if all(a.matrix[i] in line for i in idx) and is_zero(a.square(row)):
            return tuple(idx)
    return None


@dataclass(frozen=True)
class SupersolvableReport:
    supersolvable: bool
    levels: tuple  # (dimension, degenerate, family-one basic ideal or None) per quotient
    consistent: bool


def check_supersolvable_theorem(a: EvolutionAlgebra) -> SupersolvableReport:
    """Compare supersolvability with the quotient criterion along the greedy flag.

    Every quotient met on the way must be degenerate or carry a basic ideal
    from the first family when the algebra is supersolvable; when it is not,
    the quotient where the descent stops must have neither.
    """
    if not a.is_solvable():
        raise NotSolvable("the quotient criterion is stated for solvable algebras")
    levels, _, ok = _flag_levels(a)
    rows = [(lv.algebra.n, lv.algebra.is_degenerate(), family_one_basic_ideal(lv.algebra)) for lv in levels]
    good = [dim == 0 or deg or fam is not None for dim, deg, fam in rows]
    consistent = all(good) if ok else all(good[:-1]) and not good[-1]
    return SupersolvableReport(ok, tuple(rows), consistent)


# -- nilpotent algebras ----------------------------------------------------

def _principal_span(a: EvolutionAlgebra, u) -> Subspace:
    powers = [tuple(u)]
    for _ in range(a.n - 1):
        powers.append(a.product(powers[-1], u))
    return a.span(powers)


@dataclass(frozen=True)
class NilpotentBundle:
    codim_one: bool
    chain: bool
    distributive: bool
    generator: Optional[tuple]
    method: str
    certificate: Optional[tuple] = None

    @property
    def conditions(self) -> tuple:
        return (self.codim_one, self.chain, self.distributive, self.generator is not None)

    @property
    def agree(self) -> bool:
        return len(set(self.conditions)) == 1


def nilpotent_distributivity_bundle(a: EvolutionAlgebra) -> NilpotentBundle:
    """The four equivalent conditions for nilpotent algebras, each computed on its own.

    Over GF(p) the lattice is enumerated and a generator of principal powers
    is searched among all vectors.  Over the rationals the chain and
    distributivity verdicts come with certificates: a zero superdiagonal entry
    ``a_{k,k+1}`` in the triangular basis yields the subalgebras
    ``W = span{e_{k+2}..e_n}``, ``W + e_k``, ``W + e_{k+1}`` and ``W + (e_k + e_{k+1})``,
    which form a diamond.
    """
    if not a.is_nilpotent():
        raise StructuralPreconditionFailed("needs a nilpotent algebra")
    tri = triangular_order(a)
    if tri is None:
        raise StructuralPreconditionFailed("no basis permutation makes the structure matrix triangular")
    f = a.field
    n = a.n
    codim_one = a.E2.dim == n - 1
    if f.is_prime and f.p ** n <= enumeration_cap():
        from .lattice import build_lattice, is_distributive

        lat = build_lattice(a, enumerate_brute_force(a))
        chain = lat.is_chain()
        dist = is_distributive(lat).holds
        gen = None
        for coords in itertools.product(range(f.p), repeat=n):
            if _principal_span(a, coords).is_whole():
                gen = coords
                break
        return NilpotentBundle(codim_one, chain, dist, gen, "enumeration")
    b = tri.apply(a)
    order = tri.order
    gaps = [k for k in range(n - 1) if b.matrix[k][k + 1] == 0]
    if not gaps:
        u = tuple(f.one for _ in range(n))
        gen = u if _principal_span(a, u).is_whole() else None
        return NilpotentBundle(codim_one, True, True, gen, "certificate")
    k = gaps[0]
    w = [order[t] for t in range(k + 2, n)]
    base = [unit_vector(f, n, i) for i in w]
    ek, ek1 = unit_vector(f, n, order[k]), unit_vector(f, n, order[k + 1])
    mid = tuple(f.add(x, y) for x, y in zip(ek, ek1))
    trio = tuple(a.span(base + [v]) for v in (ek, ek1, mid))
    return NilpotentBundle(codim_one, False, False, None, "certificate", trio)


class Search(enum.Enum):
    FOUND = "found"
    NONE = "none"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class NilpotentModularityReport:
    absolute_nilpotent: Search
    witness: Optional[tuple]
    modular: Optional[bool]
    distributive: Optional[bool]
    consistent: Optional[bool]  # modular implies no absolutely nilpotent element outside ann
    closed_field_check: Optional[bool]  # modular == distributive, see ``approximation``
    approximation: Optional[str] = None
    notes: tuple = field(default=())


def absolute_nilpotent_outside_ann(a: EvolutionAlgebra) -> tuple:
    """Search ``u`` with ``u^2 = 0`` and ``u`` not in the annihilator.

    Over GF(p) every line is tried.  Over the rationals the candidates come
    from dependencies ``sum alpha_i e_i^2 = 0`` among the nonzero squares:
    a solution needs ``mu_i^2 = t alpha_i``, so with ``t = alpha_lead`` it
    exists iff every ``alpha_lead alpha_i`` is a rational square.  This
    decides the case of a single dependency; with several, a miss on the
    basis dependencies is reported as unknown.
    """
    f = a.field
    n = a.n
    ann = a.annihilator
    if f.is_prime:
        if f.p ** n > enumeration_cap():
            return Search.UNKNOWN, None
        for coords in itertools.product(range(f.p), repeat=n):
            nz = next((c for c in coords if c), 0)
            if nz != 1:
                continue
            if coords not in ann and is_zero(a.square(coords)):
                return Search.FOUND, coords
        return Search.NONE, None
    live = [i for i in range(n) if not is_zero(a.matrix[i])]
    deps = left_kernel(f, [a.matrix[i] for i in live], n)
    if not deps:
        return Search.NONE, None
    for dep in deps:
        # u^2 = 0 needs mu_i^2 proportional to dep; scale by the first nonzero entry
        lead = next(c for c in dep if c != 0)
        roots = [f.sqrt(f.mul(lead, c)) for c in dep]
        if all(r is not None for r in roots):
            u = [f.zero] * n
            for i, r in zip(live, roots):
                u[i] = r
            return Search.FOUND, tuple(u)
    if len(deps) == 1:
        # the dependency is unique up to scale, so no other candidate exists
        return Search.NONE, None
    return Search.UNKNOWN, None


def nilpotent_modularity_checks(a: EvolutionAlgebra, lattice=None) -> NilpotentModularityReport:
    """Absolutely nilpotent elements against modularity for nilpotent algebras.

    Over GF(p) with ``p = 1 mod 4`` and a one-dimensional annihilator the
    modular/distributive comparison stands in for a quadratically closed
    field; the report labels it as an approximation.
    """
    f = a.field
    f.require_char_ne_2("the modularity checks")
    if not a.is_nilpotent():
        raise StructuralPreconditionFailed("needs a nilpotent algebra")
    status, witness = absolute_nilpotent_outside_ann(a)
    modular = distributive = consistent = closed = None
    approx = None
    if f.is_prime:
        from .lattice import build_lattice, is_distributive, is_modular

        lat = lattice or build_lattice(a, enumerate_brute_force(a))
        modular = is_modular(lat).holds
        distributive = is_distributive(lat).holds
        consistent = not (modular and status is Search.FOUND)
        if a.annihilator.dim == 1 and f.p % 4 == 1:
            closed = modular == distributive
            approx = f"GF({f.p}) with p = 1 mod 4 used in place of a quadratically closed field"
    return NilpotentModularityReport(status, witness, modular, distributive, consistent, closed, approx)


# -- maximum solvability ---------------------------------------------------

def derived_series_basic_pattern(a: EvolutionAlgebra) -> Verdict:
    """No two consecutive derived terms fail to be basic ideals; witness = 1-based positions."""
    if not a.is_solvable():
        raise NotSolvable("the derived series must reach zero")
    terms = a.derived_series.terms
    basic = [a.is_basic_ideal(t) for t in terms]
    for k in range(len(terms) - 1):
        if not basic[k] and not basic[k + 1]:
            return Verdict(False, (k + 1, k + 2))
    return Verdict(True)


def lambda_pairs(form: BlockForm) -> tuple:
    """The ``(1 1; -1 -1)`` block positions as pairs of original basis indices."""
    order = form.change.order
    return tuple((order[i], order[j]) for i, j in form.pairs)


@dataclass(frozen=True)
class EquivalenceReport:
    supersolvable: bool
    block_form: bool
    basic_pattern: bool
    form: Optional[BlockForm]

    @property
    def agree(self) -> bool:
        return self.supersolvable == self.block_form == self.basic_pattern


def max_solvable_supersolvable_equivalence(a: EvolutionAlgebra) -> EquivalenceReport:
    """Supersolvable, block normal form of rank ``n - 1``, and the derived-series pattern."""
    _require_max_solvable(a)
    form = block_normal_form(a)
    has_form = form is not None and form.rank == a.n - 1
    return EquivalenceReport(
        is_supersolvable(a).holds,
        has_form,
        derived_series_basic_pattern(a).holds,
        form if has_form else None,
    )


def modularity_criterion_max_solvable(a: EvolutionAlgebra) -> Verdict:
    """Modularity decided from the derived series and the block normal form.

    The witness is ``("derived", positions)`` when two consecutive derived
    terms are non-basic, or the offending subalgebra
    ``K + span{e_i - e_{i+1}, e_j +- e_{j+1}}`` (in the original basis).  The
    projection condition is applied to the squares ``e_j^2`` and ``e_{j+1}^2``.
    """
    _require_max_solvable(a)
    pattern = derived_series_basic_pattern(a)
    if not pattern:
        return Verdict(False, ("derived", pattern.witness))
    form = block_normal_form(a)
    if form is None or form.rank != a.n - 1:
        raise StructuralPreconditionFailed("no block normal form over this field")
    b = form.algebra
    f = a.field
    n = a.n
    one, mone, zero = f.one, f.neg(f.one), f.zero

    def vec(entries):
        v = [zero] * n
        for k, x in entries:
            v[k] = x
        return tuple(v)

    for (i, i1), (j, j1) in itertools.combinations(form.pairs, 2):
        diff = vec([(i, one), (i1, mone)])
        line = b.span([diff])
        proj_bad = any(
            vec([(i, b.matrix[r][i]), (i1, b.matrix[r][i1])]) not in line for r in (j, j1)
        )
        if not proj_bad:
            continue
        others = [k for k in range(n) if k not in (i, i1, j, j1)]
        for sign in (one, mone):
            pair_vec = vec([(j, one), (j1, sign)])
            for size in range(len(others) + 1):
                for ks in itertools.combinations(others, size):
                    u = b.span([diff, pair_vec] + [vec([(k, one)]) for k in ks])
                    if b.is_subalgebra(u):
                        return Verdict(False, form.change.space_to_original(u))
    return Verdict(True)


# -- summary ---------------------------------------------------------------

@dataclass(frozen=True)
class StructureVerdict:
    algebra: EvolutionAlgebra
    nilpotent: bool
    solvable: bool
    max_solvability_index: bool
    max_nilpotency_index: bool
    supersolvable: bool
    degenerate: bool
    nilpotency_index: Optional[int]
    solvability_index: Optional[int]
    normal_form: Optional[MaxSolvableNormalForm] = None
    block_form: Optional[BlockForm] = None
    lambda_pairs: Optional[tuple] = None
    notes: tuple = ()


def analyze(a: EvolutionAlgebra) -> StructureVerdict:
    """Every structural flag at once, with normal forms where they exist."""
    codim_one = a.n > 0 and a.E2.dim == a.n - 1
    solvable = a.is_solvable()
    nilpotent = a.is_nilpotent()
    nf = bf = pairs = None
    notes = []
    if solvable and codim_one and a.field.char_ne_2:
        try:
            nf = max_solvable_normal_form(a)
        except NormalFormScalingUnavailable as exc:
            notes.append(f"normal form unavailable: {exc}")
        bf = block_normal_form(a)
        if bf is not None and bf.rank == a.n - 1:
            pairs = lambda_pairs(bf)
        else:
            bf = None
    return StructureVerdict(
        algebra=a,
        nilpotent=nilpotent,
        solvable=solvable,
        max_solvability_index=solvable and codim_one,
        max_nilpotency_index=nilpotent and codim_one,
        supersolvable=is_supersolvable(a).holds,
        degenerate=a.is_degenerate(),
        nilpotency_index=a.nilpotency_index,
        solvability_index=a.solvability_index,
        normal_form=nf,
        block_form=bf,
        lambda_pairs=pairs,
        notes=tuple(notes),
    )
