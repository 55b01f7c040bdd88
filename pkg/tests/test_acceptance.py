"""Acceptance gate: ten timed end-to-end criteria.

Each test prints one ``criterion N: PASS|FAIL`` line with its wall time and
budget.  ``python3 tests/test_acceptance.py`` runs only this gate.
"""

from __future__ import annotations

import itertools
import random
import time
from contextlib import contextmanager

import pytest

from evolab.documents import load_corpus
from evolab.errors import EvolabError
from evolab.families import Profile, make_family_two, random_algebra, random_family_two_spec
from evolab.field import GF, QQ
from evolab.lattice import (
    build_lattice,
    find_diamond,
    find_pentagon,
    is_distributive,
    is_lower_semimodular,
    is_modular,
    is_upper_semimodular,
)
from evolab.linalg import rank, span, subspace_intersect, subspace_sum
from evolab.normal_forms import max_solvable_normal_form
from evolab.render import format_subspace
from evolab.structure import (
    has_max_solvability_index,
    is_supersolvable,
    max_solvable_supersolvable_equivalence,
    modularity_criterion_max_solvable,
    nilpotent_distributivity_bundle,
    onedim_ideals,
)
from evolab.subalgebras import (
    enumerate_brute_force,
    enumerate_structural,
    is_quasi_ideal,
    onedim_subalgebras_max_solvable,
)

SEED = 20240611


@contextmanager
def criterion(num: int, limit: float, capsys):
    """Time the block, print a one-line verdict, and enforce the budget."""
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < limit
        with capsys.disabled():
            print(f"\ncriterion {num}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s, limit {limit:g} s)")
    assert elapsed < limit, f"criterion {num} took {elapsed:.2f} s, limit {limit} s"


def labels(subs, p=None) -> set:
    out = {format_subspace(u) for u in subs}
    if p is not None:
        out = {s.replace(f"+{p - 1}e", "-e") for s in out}
    return out


@pytest.fixture(scope="module")
def corpus():
    return {k: v.algebra() for k, v in load_corpus().items()}


def test_criterion_1_sign_pattern(corpus, capsys):
    with criterion(1, 1.0, capsys):
        a = corpus["sign_pattern_3d"]
        assert a.derived_series.dims == (3, 2, 1, 0)
        assert has_max_solvability_index(a)
        ones = onedim_subalgebras_max_solvable(a)
        assert labels(ones) == {"e1+e2+e3", "e1-e2+e3", "e1+e2-e3", "e1-e2-e3"}
        g = a.over(GF(7))
        subs = enumerate_brute_force(g)
        assert subs.counts_by_dim() == {0: 1, 1: 4, 2: 1, 3: 1}
        assert labels(subs.of_dim(1), 7) == labels(ones)
        assert labels(subs.of_dim(2)) == {"e1+e2;e3"}
        lat = build_lattice(g, subs)
        assert len(lat) == 7
        assert not is_distributive(lat).holds


def test_criterion_2_rhombus_stem(corpus, capsys):
    with criterion(2, 1.0, capsys):
        a = corpus["rhombus_stem_3d"]
        s = enumerate_structural(a)
        assert labels(s.proper_nonzero()) == {"e1+e2", "e1-e2", "e1;e2"}
        g = a.over(GF(5))
        b = enumerate_brute_force(g)
        assert labels(b.proper_nonzero(), 5) == {"e1+e2", "e1-e2", "e1;e2"}
        lat = build_lattice(a, s)
        # bottom, two atoms, their join, top
        names = [format_subspace(u) for u in lat.nodes]
        idx = {x: i for i, x in enumerate(names)}
        bot, top, mid = idx["0"], idx["e1;e2;e3"], idx["e1;e2"]
        atoms = [idx["e1+e2"], idx["e1-e2"]]
        expected = {(bot, x) for x in atoms} | {(x, mid) for x in atoms} | {(mid, top)}
        assert set(lat.hasse) == expected
        assert not lat.is_chain()
        assert is_supersolvable(a).holds


def test_criterion_3_nilpotent_6d(corpus, capsys):
    with criterion(3, 30.0, capsys):
        c = corpus["nilpotent_6d_quasi_ideal_failure"].over(GF(3))
        e1 = c.span([(1, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 1)])
        e2 = c.span([(1, 0, 1, 0, 0, 0), (0, 0, 0, 1, 1, 0)])
        assert c.is_subalgebra(e1) and c.is_subalgebra(e2)
        subs = enumerate_brute_force(c)
        assert not is_quasi_ideal(c, e1, subs).holds
        v = is_quasi_ideal(c, e1, [e2])
        assert not v.holds and v.witness == e2
        lat = build_lattice(c, subs)
        assert not is_modular(lat).holds
        assert not is_upper_semimodular(lat).holds


def test_criterion_4_twin_run(corpus, capsys):
    with criterion(4, 5.0, capsys):
        base = corpus["squares_to_e3"]
        d5 = base.over(GF(5))
        lat5 = build_lattice(d5, enumerate_brute_force(d5))
        assert not is_modular(lat5).holds
        assert find_pentagon(lat5) is not None
        d3 = base.over(GF(3))
        subs3 = enumerate_brute_force(d3)
        lat3 = build_lattice(d3, subs3)
        assert is_modular(lat3).holds
        assert find_pentagon(lat3) is None
        qi = [d3.span([(0, 0, 1)]), d3.span([(1, 0, 0), (0, 0, 1)]), d3.span([(0, 1, 0), (0, 0, 1)])]
        assert all(u in subs3 for u in qi)
        assert all(is_quasi_ideal(d3, u, subs3).holds for u in qi)


def test_criterion_5_modular_not_distributive(corpus, capsys):
    with criterion(5, 5.0, capsys):
        e = corpus["modular_not_distributive_3d"].over(GF(3))
        assert e.annihilator.dim > 1
        lat = build_lattice(e, enumerate_brute_force(e))
        assert is_modular(lat).holds
        assert not is_distributive(lat).holds


def test_criterion_6_nilpotent_bundle(capsys):
    with criterion(6, 60.0, capsys):
        f = GF(3)
        bad = []
        for i in range(200):
            a = random_algebra(f, 3 + i % 3, Profile.STRICT_UPPER_TRIANGULAR, SEED + i)
            b = nilpotent_distributivity_bundle(a)
            if not b.agree:
                bad.append((a.matrix, b.conditions))
        assert not bad, bad[:3]


def test_criterion_7_onedim_count(capsys):
    with criterion(7, 60.0, capsys):
        f = GF(5)
        bad = []
        for i in range(100):
            a = random_algebra(f, 3 + i % 3, Profile.MAX_SOLVABLE, SEED + i)
            m = max_solvable_normal_form(a).m
            ones = onedim_subalgebras_max_solvable(a)
            brute = enumerate_brute_force(a).of_dim(1)
            if not (len(ones) == 2**m == len(brute) and set(ones) == set(brute)):
                bad.append(a.matrix)
        assert not bad, bad[:3]


def test_criterion_8_families(corpus, capsys):
    with criterion(8, 30.0, capsys):
        f = GF(5)
        bad = []
        for i in range(100):
            a = make_family_two(random_family_two_spec(f, 2 + i % 4, SEED + i))
            if not is_supersolvable(a).holds:
                bad.append(("supersolvable", a.matrix))
            elif not is_lower_semimodular(build_lattice(a, enumerate_brute_force(a))).holds:
                bad.append(("lower semimodular", a.matrix))
        assert not bad, bad[:3]
        r = corpus["no_onedim_ideals_3d"]
        assert onedim_ideals(r) == []
        assert not is_supersolvable(r).holds
        reg = corpus["regular_2d"]
        assert is_supersolvable(reg).holds
        assert not reg.is_solvable()


def test_criterion_9_max_solvable_modularity(corpus, capsys):
    with criterion(9, 120.0, capsys):
        t = corpus["two_blocks_modular_4d"].over(GF(5))
        subs = enumerate_brute_force(t)
        assert len(subs) == 10
        assert labels(subs.proper_nonzero(), 5) == {
            "e1+e2", "e1-e2", "e1;e2",
            "e1-e2;e3+e4", "e1-e2;e3-e4",
            "e1;e2;e3+e4", "e1;e2;e3-e4", "e1-e2;e3;e4",
        }
        assert is_modular(build_lattice(t, subs)).holds

        w = corpus["alternating_basic_4d"]
        v = modularity_criterion_max_solvable(w)
        assert not v.holds
        assert v.witness == w.span([(1, -1, 0, 0), (0, 0, 1, 1)])

        f = GF(5)
        bad = []
        for i in range(100):
            a = random_algebra(f, 3 + i % 3, Profile.MAX_SOLVABLE, SEED + 7 * i)
            if not max_solvable_supersolvable_equivalence(a).agree:
                bad.append(a.matrix)
        assert not bad, bad[:3]

        checked = 0
        for name, a in sorted(corpus.items()):
            g = a.over(f)
            try:
                verdict = modularity_criterion_max_solvable(g)
            except EvolabError:
                continue  # no normal form over GF(5)
            lat = build_lattice(g, enumerate_brute_force(g))
            assert verdict.holds == is_modular(lat).holds, name
            checked += 1
        assert checked >= 9


def _grassmann_pairs(count: int):
    rng = random.Random(SEED)
    for _ in range(count):
        f = rng.choice((QQ, GF(3), GF(5)))
        n = rng.randint(1, 5)
        draw = (lambda: rng.randint(-2, 2)) if not f.is_prime else (lambda: rng.randrange(f.p))
        u = [[draw() for _ in range(n)] for _ in range(rng.randint(0, n))]
        v = [[draw() for _ in range(n)] for _ in range(rng.randint(0, n))]
        yield f, n, u, v


def _brute_meet_dim(f, n, u, v) -> int:
    # count the vectors of GF(p)^n lying in both spans
    def members(rows):
        out = set()
        for coeffs in itertools.product(range(f.p), repeat=len(rows)):
            out.add(tuple(sum(c * r[k] for c, r in zip(coeffs, rows)) % f.p for k in range(n)))
        return out

    size = len(members(u) & members(v))
    d = 0
    while f.p**d < size:
        d += 1
    return d


def test_criterion_10_lattice_self_consistency(corpus, capsys):
    with criterion(10, 30.0, capsys):
        for name, a in sorted(corpus.items()):
            g = a.over(GF(3))
            lat = build_lattice(g, enumerate_brute_force(g))
            n5, m3 = find_pentagon(lat), find_diamond(lat)
            assert is_distributive(lat).holds == (n5 is None and m3 is None), name
            assert is_modular(lat).holds == (n5 is None), name
        for f, n, u, v in _grassmann_pairs(1000):
            U, V = span(f, u, n), span(f, v, n)
            s, m = subspace_sum(U, V), subspace_intersect(U, V)
            assert s.dim == rank(f, u + v)
            assert s.dim + m.dim == U.dim + V.dim
            if f.is_prime:
                assert m.dim == _brute_meet_dim(f, n, u, v)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
