"""Property suites and golden-example checks behind ``evolab verify``.

Each check tallies passes, failures and expected deviations (results that
rest on a quadratically closed field and are run over GF(p) instead).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

from .algebra import EvolutionAlgebra
from .documents import load_corpus
from .families import (
    FamilyOneSpec,
    Profile,
    drop_nilpotent_part,
    make_family_one,
    make_family_two,
    random_algebra,
    random_family_two_spec,
)
from .field import GF, FieldSpec
from .lattice import (
    build_lattice,
    find_diamond,
    find_pentagon,
    is_distributive,
    is_j_algebra,
    is_lower_semimodular,
    is_modular,
    is_upper_semimodular,
    quasi_ideal_mask,
)
from .linalg import span
from .structure import (
    Search,
    check_supersolvable_theorem,
    derived_series_basic_pattern,
    has_max_solvability_index,
    is_supersolvable,
    max_solvable_normal_form,
    max_solvable_supersolvable_equivalence,
    modularity_criterion_max_solvable,
    nilpotent_distributivity_bundle,
    nilpotent_modularity_checks,
    onedim_ideals,
)
from .subalgebras import (
    enumerate_brute_force,
    enumerate_structural,
    generated_subalgebra,
    is_quasi_ideal,
    onedim_subalgebras_max_solvable,
)


class Suite(enum.Enum):
    NILPOTENT = "nilpotent"
    MAXSOLVABLE = "maxsolvable"
    FAMILIES = "families"
    PAPER_EXAMPLES = "paper-examples"


@dataclass
class Tally:
    name: str
    passed: int = 0
    failed: int = 0
    deviations: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: Optional[bool], detail: str = "") -> None:
        """``ok`` is True, False, or None for an expected deviation."""
        if ok is None:
            self.deviations += 1
        elif ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(detail)

    def line(self) -> str:
        status = "PASS" if not self.failed else "FAIL"
        extra = f", {self.deviations} expected deviations" if self.deviations else ""
        return f"[{status}] {self.name}: {self.passed} passed, {self.failed} failed{extra}"


@dataclass
class Report:
    suite: Suite
    tallies: list

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.tallies)

    def lines(self) -> list:
        out = [f"suite {self.suite.value}"]
        for t in self.tallies:
            out.append("  " + t.line())
            out.extend(f"    - {d}" for d in t.failures)
        return out


def _seed(base: int, i: int) -> int:
    return base * 1_000_003 + i


def _lattice(a: EvolutionAlgebra):
    return build_lattice(a, enumerate_brute_force(a))


# -- suites -------------------------------------------------------------------

def suite_nilpotent(seed: int = 0, count: int = 200, p: int = 3) -> Report:
    f = GF(p)
    bundle = Tally(f"four nilpotent conditions agree over GF({p})")
    nil_mod = Tally("modular nilpotent algebras have no absolutely nilpotent element outside ann")
    supersolv = Tally("nilpotent algebras are supersolvable")
    closed = Tally("one-dimensional annihilator: modular iff distributive (p = 1 mod 4 stand-in)")
    f5 = GF(5)
    for i in range(count):
        n = 3 + i % 3
        a = random_algebra(f, n, Profile.STRICT_UPPER_TRIANGULAR, _seed(seed, i))
        b = nilpotent_distributivity_bundle(a)
        bundle.record(b.agree, f"{a.matrix}: {b.conditions}")
        supersolv.record(is_supersolvable(a).holds, str(a.matrix))
        rep = nilpotent_modularity_checks(a)
        nil_mod.record(rep.consistent, str(a.matrix))
        c = random_algebra(f5, 3 + i % 2, Profile.STRICT_UPPER_TRIANGULAR, _seed(seed, i))
        rep5 = nilpotent_modularity_checks(c)
        if rep5.closed_field_check is not None:
            closed.record(True if rep5.closed_field_check else None, str(c.matrix))
    return Report(Suite.NILPOTENT, [bundle, supersolv, nil_mod, closed])


def suite_maxsolvable(seed: int = 0, count: int = 100, p: int = 5) -> Report:
    f = GF(p)
    count_t = Tally(f"2^m one-dimensional subalgebras over GF({p}), confirmed by brute force")
    equiv = Tally("supersolvable, block form and derived pattern agree")
    crit = Tally("modularity criterion agrees with the lattice")
    nec = Tally("modular implies E^(n) or E^(n-1) basic")
    two = Tally("E^(n-1) has at most two one-dimensional subalgebras")
    quot = Tally("quotient by a basic derived term E^(k) has solvability index k")
    lsm = Tally("supersolvable implies lower semimodular and J-algebra")
    for i in range(count):
        n = 3 + i % 3
        a = random_algebra(f, n, Profile.MAX_SOLVABLE, _seed(seed, i))
        subs = enumerate_brute_force(a)
        lat = build_lattice(a, subs)
        m = max_solvable_normal_form(a).m
        ones = onedim_subalgebras_max_solvable(a)
        count_t.record(len(ones) == 2**m and set(ones) == set(subs.of_dim(1)), str(a.matrix))
        eq = max_solvable_supersolvable_equivalence(a)
        equiv.record(eq.agree, f"{a.matrix}: {eq.supersolvable, eq.block_form, eq.basic_pattern}")
        modular = is_modular(lat).holds
        if eq.block_form or not eq.basic_pattern:
            crit.record(modularity_criterion_max_solvable(a).holds == modular, str(a.matrix))
        terms = a.derived_series.terms  # terms[k-1] is E^(k)
        if modular:
            nec.record(a.is_basic_ideal(terms[n - 1]) or a.is_basic_ideal(terms[n - 2]), str(a.matrix))
        t = terms[n - 2]
        two.record(sum(1 for u in subs.of_dim(1) if t.dim and all(r in t for r in u.basis)) <= 2, str(a.matrix))
        for k, term in enumerate(terms, start=1):
            if 0 < term.dim < n and a.is_basic_ideal(term):
                q, _ = a.quotient_by_basic_ideal(term)
                quot.record(q.solvability_index == k, f"{a.matrix} at k={k}")
        if eq.supersolvable:
            lsm.record(is_lower_semimodular(lat).holds and is_j_algebra(lat).holds, str(a.matrix))
    return Report(Suite.MAXSOLVABLE, [count_t, equiv, crit, nec, two, quot, lsm])


def suite_families(seed: int = 0, count: int = 60, p: int = 7) -> Report:
    f = GF(p)
    ss = Tally(f"second family over GF({p}): solvable, supersolvable, lower semimodular")
    thm = Tally("quotient criterion consistent on the second family")
    drop = Tally("dropping a nilpotent part gives the same algebra")
    lemma = Tally("first family, non-nilpotent: modular iff n = 2")
    dsum = Tally("direct sums of two-dimensional blocks are not modular")
    closed = Tally("second family, non-nilpotent: distributive iff modular iff codim E^2 = 1")
    for i in range(count):
        n = 2 + i % 4
        spec = random_family_two_spec(f, n, _seed(seed, i))
        a = make_family_two(spec)
        lat = _lattice(a)
        ok = a.is_solvable() and is_supersolvable(a).holds and is_lower_semimodular(lat).holds
        ss.record(ok, str(a.matrix))
        thm.record(check_supersolvable_theorem(a).consistent, str(a.matrix))
        for j, part in enumerate(spec.parts):
            if part.is_nilpotent and len(spec.parts) > 1:
                new, order = drop_nilpotent_part(spec, j)
                drop.record(make_family_two(new).matrix == a.permuted(order).matrix, str(a.matrix))
        if not a.is_nilpotent():
            d, m = is_distributive(lat).holds, is_modular(lat).holds
            c = a.E2.dim == a.n - 1
            # the equivalence assumes a quadratically closed field
            closed.record(True if d == m == c else None, str(a.matrix))
        b = random_algebra(f, 2 + i % 3, Profile.FAMILY_ONE, _seed(seed, i))
        if not b.is_nilpotent():
            lemma.record(is_modular(_lattice(b)).holds == (b.n == 2), str(b.matrix))
    block = make_family_one(FamilyOneSpec(GF(3), 2, 2, (1, -1)))
    for k in (2, 3):
        s = block
        for _ in range(k - 1):
            s = s.direct_sum(block)
        dsum.record(not is_modular(_lattice(s)).holds, f"{k} blocks")
    return Report(Suite.FAMILIES, [ss, thm, drop, lemma, dsum, closed])


def _labels(subs) -> set:
    from .render import format_subspace

    return {format_subspace(u) for u in subs}


def _gf(name: str, p: int) -> EvolutionAlgebra:
    return load_corpus()[name].algebra().over(GF(p))


def paper_example_checks() -> list:
    """``(name, bool)`` pairs for the golden corpus."""
    corpus = {k: v.algebra() for k, v in load_corpus().items()}
    out = []

    def check(name, ok):
        out.append((name, bool(ok)))

    a = corpus["sign_pattern_3d"]
    check("sign_pattern_3d derived dims", a.derived_series.dims == (3, 2, 1, 0))
    check("sign_pattern_3d maximum solvability", has_max_solvability_index(a))
    check("sign_pattern_3d normal form m = 2", max_solvable_normal_form(a).m == 2)
    check(
        "sign_pattern_3d one-dim table",
        _labels(onedim_subalgebras_max_solvable(a)) == {"e1+e2+e3", "e1-e2+e3", "e1+e2-e3", "e1-e2-e3"},
    )
    g = _gf("sign_pattern_3d", 7)
    subs = enumerate_brute_force(g)
    lat = build_lattice(g, subs)
    check("sign_pattern_3d over GF(7): 4 + 1 proper subalgebras", subs.counts_by_dim() == {0: 1, 1: 4, 2: 1, 3: 1})
    check("sign_pattern_3d two-dim", _labels(subs.of_dim(2)) == {"e1+e2;e3"})
    check("sign_pattern_3d lattice: 7 nodes, not distributive", len(lat) == 7 and not is_distributive(lat).holds)

    b = corpus["rhombus_stem_3d"]
    s = enumerate_structural(b)
    check("rhombus_stem_3d structural table", _labels(s.proper_nonzero()) == {"e1+e2", "e1-e2", "e1;e2"})
    g = _gf("rhombus_stem_3d", 5)
    check("rhombus_stem_3d brute force GF(5)", _labels(enumerate_brute_force(g).proper_nonzero()) == {"e1+e2", "e1+4e2", "e1;e2"})
    lat = build_lattice(b, s)
    check("rhombus_stem_3d lattice 5 nodes, 5 covers", len(lat) == 5 and len(lat.hasse) == 5)
    check("rhombus_stem_3d supersolvable", is_supersolvable(b).holds)

    c = _gf("nilpotent_6d_quasi_ideal_failure", 3)
    e1 = c.span([(1, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 1)])
    e2 = c.span([(1, 0, 1, 0, 0, 0), (0, 0, 0, 1, 1, 0)])
    subs = enumerate_brute_force(c)
    lat = build_lattice(c, subs)
    check("6d join of E1 and E2", generated_subalgebra(c, e1.basis + e2.basis) == c.span(
        [(1, 1, 0, 0, 0, 0), (1, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)]))
    check("6d E1 not a quasi-ideal (E2 violates)", not is_quasi_ideal(c, e1, subs).holds and not is_quasi_ideal(c, e1, [e2]).holds)
    check("6d not modular, not upper semimodular", not is_modular(lat).holds and not is_upper_semimodular(lat).holds)
    rep = nilpotent_modularity_checks(c, lat)
    check("6d no absolutely nilpotent element outside ann", rep.absolute_nilpotent is Search.NONE)

    d5 = _gf("squares_to_e3", 5)
    lat5 = _lattice(d5)
    check("squares_to_e3 GF(5): pentagon, not modular", find_pentagon(lat5) is not None and not is_modular(lat5).holds)
    check("squares_to_e3 GF(5): e1+2e2 absolutely nilpotent", nilpotent_modularity_checks(d5, lat5).witness == (1, 2, 0))
    d3 = _gf("squares_to_e3", 3)
    subs3 = enumerate_brute_force(d3)
    lat3 = build_lattice(d3, subs3)
    check("squares_to_e3 GF(3): modular, no pentagon", is_modular(lat3).holds and find_pentagon(lat3) is None)
    qi = [d3.span([(0, 0, 1)]), d3.span([(1, 0, 0), (0, 0, 1)]), d3.span([(0, 1, 0), (0, 0, 1)])]
    check("squares_to_e3 GF(3): listed quasi-ideals", all(is_quasi_ideal(d3, u, subs3).holds for u in qi))

    e = _gf("modular_not_distributive_3d", 3)
    lat = _lattice(e)
    check("modular_not_distributive_3d GF(3)", is_modular(lat).holds and not is_distributive(lat).holds)

    r = corpus["no_onedim_ideals_3d"]
    check("no_onedim_ideals_3d: no one-dim ideals, not supersolvable", not onedim_ideals(r) and not is_supersolvable(r).holds)
    reg = corpus["regular_2d"]
    check("regular_2d supersolvable, not solvable", is_supersolvable(reg).holds and not reg.is_solvable())

    t = corpus["two_blocks_modular_4d"]
    expected = {"e1+e2", "e1-e2", "e1;e2", "e1-e2;e3+e4", "e1-e2;e3-e4", "e1;e2;e3+e4", "e1;e2;e3-e4", "e1-e2;e3;e4"}
    tg = t.over(GF(5))
    subs = enumerate_brute_force(tg)
    g5 = {s.replace("+4e", "-e") for s in _labels(subs.proper_nonzero())}
    check("two_blocks_modular_4d table over GF(5)", len(subs) == 10 and g5 == expected)
    check("two_blocks_modular_4d modular", is_modular(build_lattice(tg, subs)).holds and modularity_criterion_max_solvable(t).holds)

    w = corpus["alternating_basic_4d"]
    v = modularity_criterion_max_solvable(w)
    check("alternating_basic_4d pattern holds", derived_series_basic_pattern(w).holds)
    check("alternating_basic_4d not modular, witness e1-e2;e3+e4", not v.holds and v.witness == w.span([(1, -1, 0, 0), (0, 0, 1, 1)]))
    check("alternating_basic_4d lattice over GF(5) not modular", not is_modular(_lattice(w.over(GF(5)))).holds)

    ch = corpus["chain_3d"]
    check("chain_3d lattice is a 4-element chain", len(enumerate_structural(ch)) == 4 and nilpotent_distributivity_bundle(ch).agree)
    fam = corpus["family_two_chain_4d"]
    check("family_two_chain_4d solvability index 5", fam.solvability_index == 5)
    blk = corpus["e2_one_minus_one"]
    check("e2_one_minus_one rhombus", _labels(enumerate_structural(blk).proper_nonzero()) == {"e1+e2", "e1-e2"})
    check("nonbasic_square_3d: E^2 not basic", not corpus["nonbasic_square_3d"].is_basic_ideal(corpus["nonbasic_square_3d"].E2))

    for name in sorted(corpus):
        a = corpus[name]
        for p in (3, 5):
            if a.n > 5 and p > 3:
                continue
            g = a.over(GF(p))
            lat = _lattice(g)
            bir = is_distributive(lat).holds == (find_pentagon(lat) is None and find_diamond(lat) is None)
            ded = is_modular(lat).holds == (find_pentagon(lat) is None)
            check(f"{name} GF({p}) identity vs forbidden sublattice", bir and ded)
            if g.is_solvable():
                mod = is_modular(lat).holds
                qi = bool(quasi_ideal_mask(lat).all())
                check(f"{name} GF({p}) modular, upper semimodular, all quasi-ideals agree",
                      mod == is_upper_semimodular(lat).holds == qi)
                check(f"{name} GF({p}) lower semimodular iff J-algebra",
                      is_lower_semimodular(lat).holds == is_j_algebra(lat).holds)
    return out


def suite_paper_examples() -> Report:
    tallies = []
    for name, ok in paper_example_checks():
        t = Tally(name)
        t.record(ok, name)
        tallies.append(t)
    return Report(Suite.PAPER_EXAMPLES, tallies)


RUNNERS: dict = {
    Suite.NILPOTENT: suite_nilpotent,
    Suite.MAXSOLVABLE: suite_maxsolvable,
    Suite.FAMILIES: suite_families,
    Suite.PAPER_EXAMPLES: suite_paper_examples,
}


def run_suite(suite, seed: int = 0, count: Optional[int] = None) -> Report:
    suite = Suite(suite)
    runner: Callable = RUNNERS[suite]
    if suite is Suite.PAPER_EXAMPLES:
        return runner()
    return runner(seed=seed) if count is None else runner(seed=seed, count=count)
