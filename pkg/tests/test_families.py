import pytest
from hypothesis import given
from hypothesis import strategies as st

from evolab.errors import CharacteristicTwoError, InvalidFamilySpec, UnsatisfiableProfile
from evolab.families import (
    FamilyOneSpec,
    FamilyTwoSpec,
    Profile,
    drop_nilpotent_part,
    make_family_one,
    make_family_two,
    random_algebra,
    random_family_two_spec,
    random_pair_chain_algebra,
)
from evolab.field import GF, QQ
from evolab.lattice import build_lattice, is_lower_semimodular
from evolab.linalg import rank
from evolab.structure import is_supersolvable
from evolab.subalgebras import enumerate_brute_force


def test_family_one_examples():
    assert make_family_one(FamilyOneSpec(QQ, 2, 2, (1, -1))).matrix == ((1, 1), (-1, -1))
    a = make_family_one(FamilyOneSpec(QQ, 3, 2, (1, -1, 0)))
    assert a.matrix == ((1, 1, 0), (-1, -1, 0), (0, 0, 0))
    nil = FamilyOneSpec(QQ, 3, 2, (0, 0, 5))
    assert nil.is_nilpotent and make_family_one(nil).is_nilpotent()


def test_family_one_validation():
    with pytest.raises(InvalidFamilySpec):
        FamilyOneSpec(QQ, 2, 2, (1, 1))
    with pytest.raises(InvalidFamilySpec):
        FamilyOneSpec(QQ, 2, 2, (0, 0))
    with pytest.raises(InvalidFamilySpec):
        FamilyOneSpec(QQ, 2, 3, (1, -1))
    with pytest.raises(CharacteristicTwoError):
        make_family_one(FamilyOneSpec(GF(2), 2, 2, (1, 1)))


def test_family_two_examples():
    block = FamilyOneSpec(QQ, 2, 2, (1, -1))
    a = make_family_two(FamilyTwoSpec((block,), [[0, 1], [0, 0]], [[0, 0], [1, 0]]))
    assert a.matrix == ((1, 1, 0, 0), (-1, -1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))
    assert a.solvability_index == 5
    assert make_family_two(FamilyTwoSpec((block,))).matrix == make_family_one(block).matrix
    q, _ = a.quotient_by_basic_ideal(a.coordinate_space([0, 1]))
    assert q.is_nilpotent()
    with pytest.raises(InvalidFamilySpec):
        FamilyTwoSpec((block,), [[0, 1]], [[1]])


def test_random_is_deterministic():
    f = GF(5)
    for profile in Profile:
        assert random_algebra(f, 4, profile, seed=7).matrix == random_algebra(f, 4, profile, seed=7).matrix
    a = random_algebra(GF(3), 3, Profile.STRICT_UPPER_TRIANGULAR, seed=1)
    assert a.is_nilpotent()
    with pytest.raises(CharacteristicTwoError):
        random_algebra(GF(2), 3, Profile.MAX_SOLVABLE)
    with pytest.raises(UnsatisfiableProfile):
        random_algebra(GF(5), 1, Profile.MAX_SOLVABLE)


@pytest.mark.parametrize("seed", range(30))
def test_max_solvable_profile(seed):
    f = GF(5)
    n = 3 + seed % 3
    a = random_algebra(f, n, Profile.MAX_SOLVABLE, seed)
    assert a.E2.dim == n - 1 and a.is_solvable()
    assert rank(f, a.matrix[:-1]) == n - 1
    # the last square is minus a partial sum of the first ones
    last = a.matrix[-1]
    m = 0
    acc = [0] * n
    while tuple(f.neg(x) for x in acc) != last:
        acc = [f.add(x, y) for x, y in zip(acc, a.matrix[m])]
        m += 1
        assert m < n
    assert m >= 1


@pytest.mark.parametrize("seed", range(20))
def test_family_two_supersolvable_and_lower_semimodular(seed):
    f = GF(3)
    spec = random_family_two_spec(f, 2 + seed % 3, seed)
    a = make_family_two(spec)
    assert a.is_solvable()
    assert is_supersolvable(a).holds
    assert is_lower_semimodular(build_lattice(a, enumerate_brute_force(a))).holds


@given(st.integers(0, 10**6), st.integers(3, 6))
def test_drop_nilpotent_part(seed, n):
    f = GF(7)
    spec = random_family_two_spec(f, n, seed)
    parts = list(spec.parts) + [FamilyOneSpec(f, 3, 2, (0, 0, 1))]
    m = sum(p.n for p in parts)
    rest = len(spec.L)
    C = [list(r) + [1, 2, 3] for r in spec.C]
    big = FamilyTwoSpec(tuple(parts), C, spec.L)
    assert big.m == m
    new, order = drop_nilpotent_part(big, len(parts) - 1)
    assert make_family_two(new).matrix == make_family_two(big).permuted(order).matrix
    assert len(new.parts) == len(spec.parts) and len(new.L) == rest + 3


def test_drop_rejects_non_nilpotent():
    block = FamilyOneSpec(QQ, 2, 2, (1, -1))
    with pytest.raises(InvalidFamilySpec):
        drop_nilpotent_part(FamilyTwoSpec((block, block)), 0)


def test_pair_chain_generator():
    for seed in range(10):
        a = random_pair_chain_algebra(GF(5), 4, seed)
        assert a.rank() == 3 and a.is_solvable()
