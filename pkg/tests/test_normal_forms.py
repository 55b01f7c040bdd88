import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import algebra
from evolab.errors import CharacteristicTwoError, DimensionMismatch, NormalFormScalingUnavailable, StructuralPreconditionFailed
from evolab.families import Profile, random_algebra, random_pair_chain_algebra
from evolab.field import GF, QQ
from evolab.normal_forms import (
    BasisChange,
    block_normal_form,
    max_solvable_normal_form,
    pair_first_chain_form,
    triangular_order,
)


def test_max_solvable_examples():
    a = algebra([[2, 2, 4], [2, 2, 0], [-4, -4, -4]])
    nf = max_solvable_normal_form(a)
    assert nf.m == 2 and nf.change.order == (0, 1, 2) and nf.algebra.matrix == a.matrix
    e2 = max_solvable_normal_form(algebra([[1, 1], [-1, -1]]))
    assert e2.m == 1 and e2.algebra.matrix[1] == tuple(-x for x in e2.algebra.matrix[0])


def test_scaling_unavailable():
    # e2^2 = e1^2 needs f2^2 = -f1^2 after scaling by sqrt(-1), missing in GF(3)
    with pytest.raises(NormalFormScalingUnavailable):
        max_solvable_normal_form(algebra([[1, 1], [1, 1]], GF(3)))
    assert max_solvable_normal_form(algebra([[1, 1], [1, 1]], GF(5))).m == 1


def test_preconditions():
    with pytest.raises(StructuralPreconditionFailed):
        max_solvable_normal_form(algebra([[1, 0], [0, 1]]))
    with pytest.raises(CharacteristicTwoError):
        max_solvable_normal_form(algebra([[1, 1], [1, 1]], GF(2)))


def test_normal_form_shape_on_rescaled_input():
    # f_i = c_i e_i and a permutation hide the form; it must be recovered
    base = algebra([[1, 0, 1, 0], [0, 0, 1, 1], [0, 1, 0, 0], [-1, 0, -1, 0]])
    hidden = base.permuted([2, 3, 0, 1]).rescaled([3, -2, 5, 7])
    nf = max_solvable_normal_form(hidden)
    b = nf.algebra
    n = b.n
    last = tuple(-sum(b.matrix[i][k] for i in range(nf.m)) for k in range(n))
    assert b.matrix[-1] == last
    assert nf.change.apply(hidden).matrix == b.matrix


@pytest.mark.parametrize("seed", range(25))
def test_basis_change_round_trip(seed):
    f = GF(7)
    a = random_algebra(f, 4, Profile.MAX_SOLVABLE, seed)
    nf = max_solvable_normal_form(a)
    ch, b = nf.change, nf.algebra
    x = (1, 2, 3, 4)
    assert ch.from_original(ch.to_original(x)) == x
    # products agree after mapping coordinates
    u, v = ch.to_original(x), ch.to_original((0, 1, 5, 2))
    assert ch.from_original(a.product(u, v)) == b.product(x, (0, 1, 5, 2))


def test_triangular_order():
    a = algebra([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    t = triangular_order(a)
    m = t.apply(a).matrix
    assert all(m[i][k] == 0 for i in range(3) for k in range(i + 1))
    assert triangular_order(algebra([[0, 1], [1, 0]])) is None
    assert triangular_order(algebra([[1, 0], [0, 0]])) is None
    with pytest.raises(DimensionMismatch):
        BasisChange.permutation(QQ, [1, 0]).apply(a)


def test_block_form_examples():
    t = algebra([[1, 1, 0, 0], [-1, -1, 0, 0], [1, -1, 1, 1], [1, -1, -1, -1]])
    bf = block_normal_form(t)
    assert bf is not None and bf.rank == 3 and len(bf.pairs) == 2
    for i, j in bf.pairs:
        m = bf.algebra.matrix
        assert (m[i][i], m[i][j], m[j][i], m[j][j]) == (1, 1, -1, -1)
    assert block_normal_form(algebra([[1, 1, 0], [0, 0, 1], [-1, -1, -1]])) is None


@given(st.integers(0, 10**6), st.integers(2, 6))
def test_pair_chain_round_trip(seed, n):
    a = random_pair_chain_algebra(GF(5), n, seed)
    form = pair_first_chain_form(a)
    assert form is not None and form.rank == n - 1
    assert form.change.apply(a).matrix == form.algebra.matrix
