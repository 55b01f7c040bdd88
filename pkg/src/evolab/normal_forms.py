"""Natural-basis changes (permutations and rescalings) into canonical shapes.

Only permutations and per-vector rescalings ``f_t = c_t e_order[t]`` are
searched: these are the moves that keep a natural basis natural.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx

from .algebra import EvolutionAlgebra
from .errors import NormalFormScalingUnavailable, StructuralPreconditionFailed
from .field import FieldSpec
from .linalg import Subspace, Vector, left_kernel, span, support


@dataclass(frozen=True)
class BasisChange:
    """New basis ``f_t = scales[t] * e_{order[t]}``."""

    field: FieldSpec
    order: tuple
    scales: tuple

    def apply(self, a: EvolutionAlgebra) -> EvolutionAlgebra:
        return a.permuted(self.order).rescaled(self.scales)

    def to_original(self, x: Sequence) -> Vector:
        f = self.field
        y = [f.zero] * len(self.order)
        for t, (i, c) in enumerate(zip(self.order, self.scales)):
            y[i] = f.mul(c, x[t])
        return tuple(y)

    def from_original(self, y: Sequence) -> Vector:
        f = self.field
        return tuple(f.div(y[i], c) for i, c in zip(self.order, self.scales))

    def space_to_original(self, s: Subspace) -> Subspace:
        return span(self.field, [self.to_original(r) for r in s.basis], s.ambient_dim)

    @classmethod
    def permutation(cls, field: FieldSpec, order: Sequence[int]) -> "BasisChange":
        return cls(field, tuple(order), (field.one,) * len(order))


def dependency_graph(a: EvolutionAlgebra) -> nx.DiGraph:
    """Edge ``i -> k`` when ``e_i^2`` has a nonzero ``e_k`` coordinate (``i != k``)."""
    g = nx.DiGraph()
    g.add_nodes_from(range(a.n))
    for i, row in enumerate(a.matrix):
        for k, x in enumerate(row):
            if x != 0 and k != i:
                g.add_edge(i, k)
    return g


def triangular_order(a: EvolutionAlgebra) -> Optional[BasisChange]:
    """A basis permutation making the structure matrix strictly upper triangular.

    ``None`` when no permutation works (a nonzero diagonal or a cycle).
    """
    if any(a.matrix[i][i] != 0 for i in range(a.n)):
        return None
    g = dependency_graph(a)
    try:
        order = list(nx.lexicographical_topological_sort(g))
    except nx.NetworkXUnfeasible:
        return None
    return BasisChange.permutation(a.field, order)


@dataclass(frozen=True)
class MaxSolvableNormalForm:
    """``f_n^2 = -(f_1^2 + ... + f_m^2)`` with ``f_1^2..f_{n-1}^2`` independent."""

    change: BasisChange
    m: int
    algebra: EvolutionAlgebra


def max_solvable_normal_form(a: EvolutionAlgebra) -> MaxSolvableNormalForm:
    """Reorder and rescale so the unique dependency among squares reads ``f_n^2 = -sum_{i<=m} f_i^2``.

    Needs ``codim E^2 = 1``.  The rescaling takes square roots of the
    dependency ratios; when one is missing in the field the form does not
    exist over it and :class:`NormalFormScalingUnavailable` is raised (this
    cannot happen for solvable algebras).
    """
    f = a.field
    f.require_char_ne_2("the maximum-solvability normal form")
    n = a.n
    if n == 0 or a.E2.dim != n - 1:
        raise StructuralPreconditionFailed("needs codim E^2 = 1")
    (dep,) = left_kernel(f, a.matrix, n)
    last = max(support(dep))
    ratios = {i: f.div(dep[i], dep[last]) for i in support(dep) if i != last}
    roots = {}
    for i, r in ratios.items():
        s = f.sqrt(r)
        if s is None:
            raise NormalFormScalingUnavailable(
                f"dependency coefficient {f.format(r)} of e{i + 1}^2 is not a square in {f}"
            )
        roots[i] = s
    first = sorted(roots)
    middle = [i for i in range(n) if i not in roots and i != last]
    order = tuple(first + middle + [last])
    scales = tuple(roots.get(i, f.one) for i in order)
    change = BasisChange(f, order, scales)
    return MaxSolvableNormalForm(change, len(first), change.apply(a))



@dataclass(frozen=True)
class BlockForm:
    """Block lower triangular shape with diagonal blocks ``0`` or ``(1 1; -1 -1)``.

    ``blocks`` lists ``(start, size)`` in the new basis; ``pairs`` are the
    ``(t, t+1)`` positions of the two-by-two blocks (0-based).
    """

    change: BasisChange
    blocks: tuple
    pairs: tuple
    algebra: EvolutionAlgebra
    rank: int


def _pair_scaling(f: FieldSpec, a: EvolutionAlgebra, i: int, j: int):
    """Scales ``(c_i, c_j)`` turning the ``{i, j}`` diagonal block into ``(1 1; -1 -1)``."""
    aa, b = a.matrix[i][i], a.matrix[i][j]
    c, d = a.matrix[j][i], a.matrix[j][j]
    if aa == 0 or b == 0:
        return None
    a2 = f.square(aa)
    if d != f.neg(f.div(a2, b)) or c != f.neg(f.div(f.mul(a2, aa), f.square(b))):
        return None
    return f.inv(aa), f.div(b, a2)


def block_normal_form(a: EvolutionAlgebra) -> Optional[BlockForm]:
    """Find a permutation and rescaling giving the block lower triangular shape.

    Strongly connected pieces of the dependency graph must be single basis
    vectors with zero square coordinate, or pairs that rescale to
    ``(1 1; -1 -1)``; blocks are then ordered so every square only reaches
    earlier blocks.  ``None`` when the shape is unreachable.
    """
    f = a.field
    g = dependency_graph(a)
    comps = [tuple(sorted(c)) for c in nx.strongly_connected_components(g)]
    block_of = {}
    members = {}
    for c in comps:
        if len(c) > 2:
            return None
        if len(c) == 1:
            (i,) = c
            if a.matrix[i][i] != 0:
                return None
            members[c] = ((i,), (f.one,))
        else:
            i, j = c
            sc = _pair_scaling(f, a, i, j)
            if sc is not None:
                members[c] = ((i, j), sc)
            else:
                sc = _pair_scaling(f, a, j, i)
                if sc is None:
                    return None
                members[c] = ((j, i), sc)
        for i in c:
            block_of[i] = c
    cond = nx.DiGraph()
    cond.add_nodes_from(comps)
    for i, k in g.edges:
        if block_of[i] != block_of[k]:
            cond.add_edge(block_of[k], block_of[i])  # k's block must come first
    order, scales, blocks, pairs = [], [], [], []
    for c in nx.lexicographical_topological_sort(cond, key=lambda c: c[0]):
        idx, sc = members[c]
        blocks.append((len(order), len(idx)))
        if len(idx) == 2:
            pairs.append((len(order), len(order) + 1))
        order.extend(idx)
        scales.extend(sc)
    change = BasisChange(f, tuple(order), tuple(scales))
    b = change.apply(a)
    return BlockForm(change, tuple(blocks), tuple(pairs), b, b.rank())


def pair_first_chain_form(a: EvolutionAlgebra) -> Optional[BlockForm]:
    """The shape with one leading ``(1 1; -1 -1)`` block followed by a strictly
    lower triangular part whose first subdiagonal has no zeros.
    """
    bf = block_normal_form(a)
    if bf is None or len(bf.pairs) != 1:
        return None
    f = a.field
    (p, q) = bf.pairs[0]
    pair = (bf.change.order[p], bf.change.order[q])
    pair_scales = (bf.change.scales[p], bf.change.scales[q])
    rest = [i for i in range(a.n) if i not in pair]
    # the chain order of the remaining vectors is forced by the full subdiagonal
    g = dependency_graph(a).subgraph(rest)
    chain = []
    remaining = set(rest)
    while remaining:
        sources = [i for i in remaining if not any(k in remaining for k in g.successors(i))]
        if len(sources) != 1:
            return None
        (s,) = sources
        chain.append(s)
        remaining.remove(s)
    order = tuple(pair) + tuple(chain)
    scales = tuple(pair_scales) + (f.one,) * len(chain)
    change = BasisChange(f, order, scales)
    b = change.apply(a)
    m = b.matrix
    if m[0][0] != 1 or m[0][1] != 1 or m[1][0] != f.neg(f.one) or m[1][1] != f.neg(f.one):
        return None
    for t in range(2, a.n):
        if any(m[t][k] != 0 for k in range(t, a.n)):
            return None
        if t >= 3 and m[t][t - 1] == 0:
            return None
    if any(m[t][k] != 0 for t in range(2) for k in range(2, a.n)):
        return None
    blocks = ((0, 2),) + tuple((t, 1) for t in range(2, a.n))
    return BlockForm(change, blocks, ((0, 1),), b, b.rank())
