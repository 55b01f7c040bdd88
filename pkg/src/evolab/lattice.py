"""Finite lattices of subalgebras and their lattice-theoretic properties.

Nodes are indexed in (dimension, basis) order, so every strict inclusion
goes from a smaller index to a larger one.  Joins and meets are precomputed
as integer tables from the order relation; all property checks are
vectorized scans over those tables.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .algebra import EvolutionAlgebra
from .errors import JoinEscapesSet
from .linalg import contains
from .render import format_subspace
from .subalgebras import Method, SubalgebraSet, generated_subalgebra
from .verdict import Verdict


class Labels(enum.Enum):
    DIMS = "dims"
    BASIS = "basis"


@dataclass(eq=False)
class Lattice:
    """A finite lattice given by its order relation ``leq[i, j]`` (node i below node j).

    ``nodes`` are the subalgebras (or arbitrary labels for synthetic lattices);
    node 0 is the bottom and the last node the top.
    """

    nodes: tuple
    leq: np.ndarray
    algebra: Optional[EvolutionAlgebra] = None
    names: tuple = field(default=())

    def __post_init__(self):
        self.leq = np.asarray(self.leq, dtype=bool)
        if not self.names:
            self.names = tuple(
                format_subspace(u) if hasattr(u, "basis") else str(u) for u in self.nodes
            )

    def __len__(self) -> int:
        return len(self.nodes)

    @classmethod
    def from_leq(cls, leq, names: Sequence[str]) -> "Lattice":
        """A synthetic lattice; nodes must be listed in a linear extension of the order."""
        return cls(tuple(names), np.asarray(leq, dtype=bool), None, tuple(names))

    @cached_property
    def index(self) -> dict:
        return {u: i for i, u in enumerate(self.nodes)}

    def node(self, u) -> int:
        return u if isinstance(u, (int, np.integer)) else self.index[u]

    @cached_property
    def join_table(self) -> np.ndarray:
        n = len(self)
        out = np.empty((n, n), dtype=np.int64)
        for u in range(n):
            common = self.leq[u][None, :] & self.leq
            out[u] = common.argmax(axis=1)
        return out

    @cached_property
    def meet_table(self) -> np.ndarray:
        n = len(self)
        low = self.leq.T[:, ::-1]
        out = np.empty((n, n), dtype=np.int64)
        for u in range(n):
            common = low[u][None, :] & low
            out[u] = n - 1 - common.argmax(axis=1)
        return out

    def join(self, u, v):
        return self.nodes[self.join_table[self.node(u), self.node(v)]]

    def meet(self, u, v):
        return self.nodes[self.meet_table[self.node(u), self.node(v)]]

    @cached_property
    def covers(self) -> np.ndarray:
        """``covers[i, j]``: node j covers node i."""
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        li = lt.astype(np.int64)
        return lt & ~((li @ li) > 0)

    @property
    def hasse(self) -> list:
        return [tuple(map(int, e)) for e in np.argwhere(self.covers)]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self) - 1

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())

    def triple(self, *idx) -> tuple:
        return tuple(self.nodes[int(i)] for i in idx)

    def longest_shortest_from_bottom(self) -> tuple:
        n = len(self)
        hi = np.zeros(n, dtype=np.int64)
        lo = np.zeros(n, dtype=np.int64)
        for v in range(1, n):
            preds = np.nonzero(self.covers[:, v])[0]
            hi[v] = hi[preds].max() + 1
            lo[v] = lo[preds].min() + 1
        return lo, hi


def _containment_matrix(nodes: Sequence) -> np.ndarray:
    n = len(nodes)
    leq = np.zeros((n, n), dtype=bool)
    if n == 0:
        return leq
    f = nodes[0].field
    if f.is_prime:
        p = f.p
        amb = nodes[0].ambient_dim
        rows = np.array([r for u in nodes for r in u.basis], dtype=np.int64).reshape(-1, amb)
        owner = np.repeat(np.arange(n), [u.dim for u in nodes])
        for j, u in enumerate(nodes):
            if u.dim == amb:
                leq[:, j] = True
                continue
            if not u.basis:
                leq[:, j] = [v.dim == 0 for v in nodes]
                continue
            b = np.array(u.basis, dtype=np.int64)
            resid = (rows - rows[:, list(u.pivots)] @ b) % p
            outside = resid.any(axis=1)
            bad = np.zeros(n, dtype=bool)
            np.logical_or.at(bad, owner, outside)
            leq[:, j] = ~bad
        return leq
    for i, v in enumerate(nodes):
        for j, u in enumerate(nodes):
            leq[i, j] = contains(u, v)
    return leq


def build_lattice(a: EvolutionAlgebra, s: SubalgebraSet, check_joins: Optional[bool] = None) -> Lattice:
    """The subalgebra lattice: meet is intersection, join the generated subalgebra.

    Joins are read off the order; when ``check_joins`` (default: small sets and
    structural enumerations) each is recomputed by closure and must lie in the
    set, otherwise :class:`JoinEscapesSet` is raised.
    """
    nodes = s.members
    lat = Lattice(nodes, _containment_matrix(nodes), a)
    if check_joins is None:
        check_joins = s.method is not Method.BRUTE_FORCE or len(nodes) <= 40
    if check_joins:
        jt = lat.join_table
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                g = generated_subalgebra(a, nodes[i].basis + nodes[j].basis)
                if g != nodes[jt[i, j]]:
                    raise JoinEscapesSet(
                        f"join of {format_subspace(nodes[i])} and {format_subspace(nodes[j])} is "
                        f"{format_subspace(g)}, not found in the subalgebra set"
                    )
    return lat


def is_distributive(lat: Lattice) -> Verdict:
    """``u v (v ^ w) = (u v v) ^ (u v w)`` for every triple; witness ``(u, v, w)``."""
    J, M = lat.join_table, lat.meet_table
    for u in range(len(lat)):
        lhs = J[u][M]
        rhs = M[np.ix_(J[u], J[u])]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            v, w = bad[0]
            return Verdict(False, lat.triple(u, v, w))
    return Verdict(True)


def is_modular(lat: Lattice) -> Verdict:
    """``u v (v ^ w) = (u v v) ^ w`` whenever ``u <= w``; witness ``(u, v, w)``."""
    J, M = lat.join_table, lat.meet_table
    for u in range(len(lat)):
        ws = np.nonzero(lat.leq[u])[0]
        lhs = J[u][M[:, ws]]
        rhs = M[J[u]][:, ws]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            v, k = bad[0]
            return Verdict(False, lat.triple(u, v, ws[k]))
    return Verdict(True)


def find_pentagon(lat: Lattice) -> Optional[tuple]:
    """Nodes ``(bottom, a, c, b, top)`` of an N5 sublattice with ``a < c``, or ``None``."""
    J, M = lat.join_table, lat.meet_table
    lt = lat.leq & ~np.eye(len(lat), dtype=bool)
    for a in range(len(lat)):
        cs = np.nonzero(lt[a])[0]
        if cs.size == 0:
            continue
        hit = (J[cs] == J[a]) & (M[cs] == M[a])
        found = np.argwhere(hit)
        if found.size:
            k, b = found[0]
            c = cs[k]
            return lat.triple(M[a, b], a, c, b, J[a, b])
    return None


def find_diamond(lat: Lattice) -> Optional[tuple]:
    """Nodes ``(bottom, x, y, z, top)`` of an M3 sublattice, or ``None``."""
    J, M = lat.join_table, lat.meet_table
    n = len(lat)
    comparable = lat.leq | lat.leq.T
    for x in range(n):
        jx, mx = J[x], M[x]
        same = (jx[:, None] == jx[None, :]) & (mx[:, None] == mx[None, :])
        ok = same & (J == jx[:, None]) & (M == mx[:, None]) & ~comparable
        ok &= ~comparable[x][:, None] & ~comparable[x][None, :]
        ok[:x + 1, :] = False
        ok[:, :x + 1] = False
        found = np.argwhere(ok)
        if found.size:
            y, z = found[0]
            return lat.triple(M[x, y], x, y, z, J[x, y])
    return None


def is_upper_semimodular(lat: Lattice) -> Verdict:
    """``U ^ V`` covered by ``V`` implies ``U`` covered by ``U v V``; witness ``(U, V)``."""
    J, M, C = lat.join_table, lat.meet_table, lat.covers
    idx = np.arange(len(lat))
    for u in range(len(lat)):
        bad = C[M[u], idx] & ~C[u, J[u]]
        if bad.any():
            return Verdict(False, lat.triple(u, np.argmax(bad)))
    return Verdict(True)


def is_lower_semimodular(lat: Lattice) -> Verdict:
    """``V`` covered by ``U v V`` implies ``U ^ V`` covered by ``U``; witness ``(U, V)``."""
    J, M, C = lat.join_table, lat.meet_table, lat.covers
    idx = np.arange(len(lat))
    for u in range(len(lat)):
        bad = C[idx, J[u]] & ~C[M[u], u]
        if bad.any():
            return Verdict(False, lat.triple(u, np.argmax(bad)))
    return Verdict(True)


def is_j_algebra(lat: Lattice) -> Verdict:
    """All maximal chains between comparable nodes have one length.

    It is enough to compare the shortest and longest cover chains from the
    bottom: two chains of different length in any interval extend to two
    maximal chains of different length in the whole lattice.  The witness is
    ``(bottom, v, shortest, longest)`` for the first node ``v`` where they differ.
    """
    lo, hi = lat.longest_shortest_from_bottom()
    bad = np.nonzero(lo != hi)[0]
    if bad.size:
        v = int(bad[0])
        return Verdict(False, (lat.nodes[0], lat.nodes[v], int(lo[v]), int(hi[v])))
    return Verdict(True)


def quasi_ideal_mask(lat: Lattice) -> np.ndarray:
    """``mask[u]``: node u is a quasi-ideal, i.e. ``dim <U, V> = dim (U + V)`` for every V.

    Meets are intersections, so ``dim (U + V)`` is read off the meet table.
    """
    d = np.array([u.dim for u in lat.nodes], dtype=np.int64)
    J, M = lat.join_table, lat.meet_table
    return (d[J] == d[:, None] + d[None, :] - d[M]).all(axis=1)


def emit_hasse_dot(lat: Lattice, labels: Labels = Labels.DIMS) -> str:
    """The Hasse diagram as a DOT digraph drawn bottom to top."""
    labels = Labels(labels)
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box];"]
    for i, u in enumerate(lat.nodes):
        if labels is Labels.DIMS and hasattr(u, "dim"):
            text = f"dim={u.dim}"
        else:
            text = lat.names[i]
        text = text.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  n{i} [label="{text}"];')
    for i, j in lat.hasse:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
