"""Distinguished families of evolution algebras and seeded random generators."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Optional

from .algebra import EvolutionAlgebra
from .errors import (
    InvalidFamilySpec,
    NormalFormScalingUnavailable,
    UnsatisfiableProfile,
)
from .field import FieldSpec
from .linalg import rank
from .normal_forms import max_solvable_normal_form


@dataclass(frozen=True)
class FamilyOneSpec:
    """``e_i^2 = lambda_i (e_1 + ... + e_k)`` with ``lambda_1 + ... + lambda_k = 0``."""

    field: FieldSpec
    n: int
    k: int
    lambdas: tuple

    def __post_init__(self):
        lams = tuple(self.field.coerce(x) for x in self.lambdas)
        object.__setattr__(self, "lambdas", lams)
        self.validate()

    def validate(self) -> None:
        f = self.field
        if self.n < 1 or len(self.lambdas) != self.n:
            raise InvalidFamilySpec(f"need {self.n} lambdas, got {len(self.lambdas)}")
        if not 1 <= self.k <= self.n:
            raise InvalidFamilySpec(f"k={self.k} outside 1..{self.n}")
        total = f.zero
        for lam in self.lambdas[: self.k]:
            total = f.add(total, lam)
        if total != 0:
            raise InvalidFamilySpec(f"lambda_1+...+lambda_k = {f.format(total)}, expected 0")
        if all(lam == 0 for lam in self.lambdas):
            raise InvalidFamilySpec("all lambdas vanish")

    @property
    def is_nilpotent(self) -> bool:
        return all(lam == 0 for lam in self.lambdas[: self.k])

    def rows(self) -> list:
        f = self.field
        ones = [f.one] * self.k + [f.zero] * (self.n - self.k)
        return [[f.mul(lam, x) for x in ones] for lam in self.lambdas]


@dataclass(frozen=True)
class FamilyTwoSpec:
    """Block matrix ``[[A, 0], [C, L]]`` with ``A`` the block diagonal of the parts."""

    parts: tuple
    C: tuple = ()
    L: tuple = ()

    def __post_init__(self):
        if not self.parts:
            raise InvalidFamilySpec("need at least one part")
        object.__setattr__(self, "parts", tuple(self.parts))
        f = self.field
        for p in self.parts:
            if p.field != f:
                raise InvalidFamilySpec("parts over different fields")
        object.__setattr__(self, "C", tuple(tuple(f.coerce(x) for x in r) for r in self.C))
        object.__setattr__(self, "L", tuple(tuple(f.coerce(x) for x in r) for r in self.L))
        m, rest = self.m, len(self.L)
        if len(self.C) != rest and not (rest == 0 and not self.C):
            raise InvalidFamilySpec(f"C has {len(self.C)} rows, L has {rest}")
        for r in self.C:
            if len(r) != m:
                raise InvalidFamilySpec(f"C rows need {m} entries")
        for i, r in enumerate(self.L):
            if len(r) != rest:
                raise InvalidFamilySpec("L must be square")
            if any(r[j] != 0 for j in range(i, rest)):
                raise InvalidFamilySpec("L must be strictly lower triangular")

    @property
    def field(self) -> FieldSpec:
        return self.parts[0].field

    @property
    def m(self) -> int:
        return sum(p.n for p in self.parts)

    @property
    def n(self) -> int:
        return self.m + len(self.L)

    def part_offsets(self) -> list:
        out, at = [], 0
        for p in self.parts:
            out.append(at)
            at += p.n
        return out


def make_family_one(spec: FamilyOneSpec) -> EvolutionAlgebra:
    spec.field.require_char_ne_2("the first family")
    spec.validate()
    return EvolutionAlgebra(spec.field, spec.rows(), f"E_{spec.k}")


def make_family_two(spec: FamilyTwoSpec) -> EvolutionAlgebra:
    f = spec.field
    f.require_char_ne_2("the second family")
    n, m = spec.n, spec.m
    rows = [[f.zero] * n for _ in range(n)]
    for p, at in zip(spec.parts, spec.part_offsets()):
        for i, r in enumerate(p.rows()):
            rows[at + i][at : at + p.n] = r
    for t in range(n - m):
        rows[m + t][:m] = spec.C[t]
        rows[m + t][m:] = spec.L[t]
    return EvolutionAlgebra(f, rows, "F")


def drop_nilpotent_part(spec: FamilyTwoSpec, i: int) -> tuple[FamilyTwoSpec, tuple]:
    """Re-express the algebra of ``spec`` without the nilpotent part ``i``.

    The part's basis vectors move to the front of the strictly lower
    triangular region.  Returns the new spec and the basis order ``order``
    with ``make_family_two(new) == make_family_two(spec).permuted(order)``.
    """
    part = spec.parts[i]
    if not part.is_nilpotent:
        raise InvalidFamilySpec(f"part {i} is not nilpotent")
    if len(spec.parts) == 1:
        raise InvalidFamilySpec("cannot drop the only part")
    offsets = spec.part_offsets()
    kept = [j for j in range(len(spec.parts)) if j != i]
    head = [offsets[j] + t for j in kept for t in range(spec.parts[j].n)]
    moved = [offsets[i] + t for t in range(part.n)]
    tail = list(range(spec.m, spec.n))
    order = tuple(head + moved + tail)
    old = make_family_two(spec).matrix
    lower = moved + tail
    C = [[old[r][c] for c in head] for r in lower]
    L = [[old[r][c] for c in lower] for r in lower]
    return FamilyTwoSpec(tuple(spec.parts[j] for j in kept), C, L), order


class Profile(enum.Enum):
    GENERAL = "general"
    STRICT_UPPER_TRIANGULAR = "strict-upper"
    STRICT_TRIANGULAR_FULL_SUPERDIAG = "strict-upper-full"
    MAX_SOLVABLE = "max-solvable"
    FAMILY_ONE = "family-one"
    FAMILY_TWO = "family-two"


@dataclass
class _Sampler:
    field: FieldSpec
    rng: random.Random
    small: tuple = field(default=(-3, -2, -1, 0, 1, 2, 3))

    def any(self):
        if self.field.is_prime:
            return self.rng.randrange(self.field.p)
        return self.field.coerce(self.rng.choice(self.small))

    def nonzero(self):
        if self.field.is_prime:
            return self.rng.randrange(1, self.field.p)
        return self.field.coerce(self.rng.choice([x for x in self.small if x]))

    def sparse(self, pz: float):
        if self.rng.random() < pz:
            return self.field.zero
        return self.field.coerce(self.rng.choice((1, -1)))


def random_algebra(
    spec: FieldSpec,
    n: int,
    profile: Profile = Profile.GENERAL,
    seed: Optional[int] = 0,
    max_tries: int = 1000,
) -> EvolutionAlgebra:
    """A random algebra of the given profile, deterministic in ``seed``.

    Over the rationals entries are drawn from small integers.  For
    ``MAX_SOLVABLE`` the output is in the normal form
    ``e_n^2 = -(e_1^2 + ... + e_m^2)`` with the first ``n-1`` squares
    independent, and is solvable.
    """
    profile = Profile(profile)
    if n < 1:
        raise UnsatisfiableProfile("dimension must be positive")
    s = _Sampler(spec, random.Random(seed))
    if profile is Profile.GENERAL:
        return EvolutionAlgebra(spec, [[s.any() for _ in range(n)] for _ in range(n)])
    if profile in (Profile.STRICT_UPPER_TRIANGULAR, Profile.STRICT_TRIANGULAR_FULL_SUPERDIAG):
        full = profile is Profile.STRICT_TRIANGULAR_FULL_SUPERDIAG
        rows = [[spec.zero] * n for _ in range(n)]
        for i in range(n):
            for k in range(i + 1, n):
                rows[i][k] = s.nonzero() if full and k == i + 1 else s.any()
        return EvolutionAlgebra(spec, rows)
    spec.require_char_ne_2(f"the {profile.value} profile")
    if profile is Profile.FAMILY_ONE:
        return make_family_one(_random_family_one(s, n, max_tries))
    if profile is Profile.FAMILY_TWO:
        return make_family_two(random_family_two_spec(spec, n, seed, max_tries))
    return _random_max_solvable(s, n, max_tries)


def _random_family_one(s: _Sampler, n: int, max_tries: int, k: Optional[int] = None) -> FamilyOneSpec:
    f = s.field
    if n < 2:
        raise UnsatisfiableProfile("the first family needs dimension at least 2")
    for _ in range(max_tries):
        kk = k or s.rng.randint(1, n)
        lams = [s.any() for _ in range(n)]
        total = f.zero
        for x in lams[: kk - 1]:
            total = f.add(total, x)
        lams[kk - 1] = f.neg(total)
        if any(x != 0 for x in lams):
            return FamilyOneSpec(f, n, kk, tuple(lams))
    raise UnsatisfiableProfile("no valid lambdas within the retry budget")


def random_family_two_spec(spec: FieldSpec, n: int, seed: Optional[int] = 0, max_tries: int = 1000) -> FamilyTwoSpec:
    """A random spec for the second family in dimension ``n`` (parts of size at least 2)."""
    if n < 2:
        raise UnsatisfiableProfile("the second family needs dimension at least 2")
    s = _Sampler(spec, random.Random(seed))
    m = s.rng.randint(2, n)
    sizes = []
    left = m
    while left:
        size = left if left < 4 else s.rng.randint(2, left - 2)
        sizes.append(size)
        left -= size
    parts = tuple(_random_family_one(s, size, max_tries) for size in sizes)
    rest = n - m
    C = [[s.any() for _ in range(m)] for _ in range(rest)]
    L = [[s.any() if j < i else spec.zero for j in range(rest)] for i in range(rest)]
    return FamilyTwoSpec(parts, C, L)


def _sparse_max_solvable(s: _Sampler, n: int):
    """The rejection recipe: independent first rows, last row the negated partial sum."""
    f = s.field
    top = [[s.sparse(0.65) for _ in range(n)] for _ in range(n - 1)]
    if rank(f, top) != n - 1:
        return None
    m = s.rng.randint(1, n - 1)
    last = [f.zero] * n
    for row in top[:m]:
        last = [f.sub(a, b) for a, b in zip(last, row)]
    return EvolutionAlgebra(f, top + [last])


def _block_max_solvable(s: _Sampler, n: int):
    """A block lower triangular algebra with diagonal blocks ``0`` or ``(1 1; -1 -1)``,
    disguised by a random permutation and rescaling."""
    f = s.field
    sizes = []
    while sum(sizes) < n:
        sizes.append(2 if n - sum(sizes) >= 2 and s.rng.random() < 0.5 else 1)
    rows = [[f.zero] * n for _ in range(n)]
    at = 0
    for size in sizes:
        for i in range(at, at + size):
            for k in range(at):
                rows[i][k] = s.sparse(0.5) if s.rng.random() < 0.5 else s.any()
        if size == 2:
            one, mone = f.one, f.neg(f.one)
            rows[at][at : at + 2] = [one, one]
            rows[at + 1][at : at + 2] = [mone, mone]
        at += size
    order = list(range(n))
    s.rng.shuffle(order)
    scales = [s.nonzero() for _ in range(n)]
    return EvolutionAlgebra(f, rows).permuted(order).rescaled(scales)


def _random_max_solvable(s: _Sampler, n: int, max_tries: int) -> EvolutionAlgebra:
    # Plain rejection almost never lands on a solvable algebra once n >= 5, so
    # half the samples come from supersolvable block constructions instead.
    if n < 2:
        raise UnsatisfiableProfile("maximum solvability needs dimension at least 2")
    f = s.field
    sparse_first = s.rng.random() < 0.5
    for attempt in range(max_tries):
        use_sparse = sparse_first and attempt < max_tries // 2
        a = _sparse_max_solvable(s, n) if use_sparse else _block_max_solvable(s, n)
        if a is None or a.E2.dim != n - 1 or not a.is_solvable():
            continue
        try:
            nf = max_solvable_normal_form(a)
        except NormalFormScalingUnavailable:
            continue
        if nf.m == 0:
            continue
        return _disguise_normal_form(s, nf.algebra, nf.m)
    raise UnsatisfiableProfile(f"no solvable algebra with codim E^2 = 1 after {max_tries} tries")


def _disguise_normal_form(s: _Sampler, a: EvolutionAlgebra, m: int) -> EvolutionAlgebra:
    """Random symmetries of the normal form: shuffles inside the sum part and
    the free part, sign flips ``c_i = +-c_n`` on the sum part, free scaling elsewhere."""
    n = a.n
    head = list(range(m))
    mid = list(range(m, n - 1))
    s.rng.shuffle(head)
    s.rng.shuffle(mid)
    order = head + mid + [n - 1]
    cn = s.nonzero()
    scales = [cn if s.rng.random() < 0.5 else s.field.neg(cn) for _ in range(m)]
    scales += [s.nonzero() for _ in mid] + [cn]
    out = a.permuted(order).rescaled(scales)
    return EvolutionAlgebra(out.field, out.matrix, "max-solvable")



def random_pair_chain_algebra(spec: FieldSpec, n: int, seed: Optional[int] = 0, max_tries: int = 1000) -> EvolutionAlgebra:
    """A leading ``(1 1; -1 -1)`` block over a strictly lower triangular part with
    nonzero first subdiagonal, rank ``n - 1``, in a shuffled and rescaled basis."""
    spec.require_char_ne_2("the block-plus-chain shape")
    if n < 2:
        raise UnsatisfiableProfile("needs dimension at least 2")
    s = _Sampler(spec, random.Random(seed))
    one, mone = spec.one, spec.neg(spec.one)
    for _ in range(max_tries):
        rows = [[spec.zero] * n for _ in range(n)]
        rows[0][:2] = [one, one]
        rows[1][:2] = [mone, mone]
        for t in range(2, n):
            for k in range(t):
                rows[t][k] = s.nonzero() if (t >= 3 and k == t - 1) else s.sparse(0.4) if s.rng.random() < 0.5 else s.any()
        a = EvolutionAlgebra(spec, rows)
        if a.rank() != n - 1:
            continue
        order = list(range(n))
        s.rng.shuffle(order)
        return a.permuted(order).rescaled([s.nonzero() for _ in range(n)])
    raise UnsatisfiableProfile(f"no rank {n - 1} sample after {max_tries} tries")
