"""Contexonym graphs and their maximal cliques.

A headword's contexonyms form a graph whose edges are attested relations
between the contexonyms themselves; each maximal clique of that graph is
one atomic sense unit.  Enumeration uses Bron-Kerbosch with pivoting over
a degeneracy ordering; a subset-enumeration oracle is kept alongside for
equivalence testing on small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .morpho import LexicalUnit
from .relations import FrequencyTable, canonical_pair


@dataclass(frozen=True)
class Clique:
    """A maximal set of pairwise-related contexonyms (headword excluded).

    support_ctx unions the contexts attesting the member-member edges and
    the member-headword pairs; it feeds the sense index.
    """

    clique_id: int
    members: tuple[LexicalUnit, ...]
    support_ctx: frozenset[int]


class ContexonymGraph:
    """Undirected graph over one headword's contexonyms.

    Node order is deterministic: descending pair count with the headword,
    then lexicographic.  Adjacency is kept as per-node bitmasks.
    """

    def __init__(
        self,
        headword: LexicalUnit,
        nodes: tuple[LexicalUnit, ...],
        adj: tuple[int, ...],
        edge_support: dict[tuple[int, int], int],
        edge_ctxs: dict[tuple[int, int], frozenset[int]],
        head_ctxs: tuple[frozenset[int], ...],
    ) -> None:
        self.headword = headword
        self.nodes = nodes
        self.adj = adj
        self.edge_support = edge_support
        self.edge_ctxs = edge_ctxs
        self.head_ctxs = head_ctxs

    def __len__(self) -> int:
        return len(self.nodes)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    @property
    def n_edges(self) -> int:
        return len(self.edge_support)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()


def build_graph(
    w: LexicalUnit,
    ctxs: Iterable[LexicalUnit],
    stats: FrequencyTable,
    edge_min: int = 1,
) -> ContexonymGraph:
    """Connect contexonyms of w wherever their own pair count reaches edge_min.

    Edges are attested anywhere in the corpus, not only in contexts that
    also contain w.
    """
    if edge_min < 1:
        raise ValueError("edge_min must be >= 1")
    nodes = tuple(sorted(ctxs, key=lambda u: (-stats.pair_count(w, u), u)))
    n = len(nodes)
    adj = [0] * n
    edge_support: dict[tuple[int, int], int] = {}
    edge_ctxs: dict[tuple[int, int], frozenset[int]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            count = stats.pair_count(nodes[i], nodes[j])
            if count >= edge_min:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                edge_support[(i, j)] = count
                edge_ctxs[(i, j)] = stats.pair_contexts(nodes[i], nodes[j])
    head_ctxs = tuple(stats.pair_contexts(w, u) for u in nodes)
    return ContexonymGraph(w, nodes, tuple(adj), edge_support, edge_ctxs, head_ctxs)


@dataclass(frozen=True)
class CliqueEnumeration:
    cliques: tuple[Clique, ...]
    capped: bool

    def __iter__(self):
        return iter(self.cliques)

    def __len__(self) -> int:
        return len(self.cliques)


def _degeneracy_order(adj: tuple[int, ...]) -> list[int]:
    """Peel minimum-degree nodes first; ties by node index."""
    n = len(adj)
    remaining = (1 << n) - 1
    deg = [adj[i].bit_count() for i in range(n)]
    order = []
    for _ in range(n):
        best = -1
        for i in range(n):
            if remaining >> i & 1 and (best < 0 or deg[i] < deg[best]):
                best = i
        order.append(best)
        remaining &= ~(1 << best)
        rest = adj[best] & remaining
        while rest:
            low = rest & -rest
            deg[low.bit_length() - 1] -= 1
            rest ^= low
    return order


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _materialize(g: ContexonymGraph, masks: Iterable[int], capped: bool) -> CliqueEnumeration:
    """Shared finishing step: sort, assign ids, attach support contexts."""
    raw = []
    for mask in masks:
        idxs = list(_bits(mask))
        members = tuple(sorted(g.nodes[i] for i in idxs))
        support: set[int] = set()
        for a in range(len(idxs)):
            support |= g.head_ctxs[idxs[a]]
            for b in range(a + 1, len(idxs)):
                i, j = min(idxs[a], idxs[b]), max(idxs[a], idxs[b])
                support |= g.edge_ctxs.get((i, j), frozenset())
        raw.append((members, frozenset(support)))
    raw.sort(key=lambda t: (-len(t[0]), t[0]))
    cliques = tuple(Clique(cid, members, support) for cid, (members, support) in enumerate(raw))
    return CliqueEnumeration(cliques, capped)


def maximal_cliques(
    g: ContexonymGraph,
    max_cliques: int = 10000,
    max_clique_size: int = 64,
) -> CliqueEnumeration:
    """All maximal cliques of size >= 2, sorted by descending size then members.

    Enumeration stops once either cap is hit and the result is flagged
    capped; a capped result is an explicit partial answer, never a silent
    truncation.
    """
    n = len(g)
    found: list[int] = []
    capped = False

    def expand(r_mask: int, r_size: int, p: int, x: int) -> bool:
        nonlocal capped
        if p == 0 and x == 0:
            if r_size >= 2:
                if len(found) >= max_cliques:
                    capped = True
                    return False
                found.append(r_mask)
            return True
        if r_size >= max_clique_size:
            capped = True
            return False
        # Pivot on the P|X node covering most of P; only its non-neighbors branch.
        pivot, best = -1, -1
        for u in _bits(p | x):
            cover = (p & g.adj[u]).bit_count()
            if cover > best:
                pivot, best = u, cover
        for v in _bits(p & ~g.adj[pivot]):
            bit = 1 << v
            if not expand(r_mask | bit, r_size + 1, p & g.adj[v], x & g.adj[v]):
                return False
            p &= ~bit
            x |= bit
        return True

    order = _degeneracy_order(g.adj)
    later = (1 << n) - 1
    for v in order:
        later &= ~(1 << v)
        p = g.adj[v] & later
        x = g.adj[v] & ~later & ((1 << n) - 1) & ~(1 << v)
        if not expand(1 << v, 1, p, x):
            break
    return _materialize(g, found, capped)


def brute_force_cliques(g: ContexonymGraph) -> CliqueEnumeration:
    """Subset-enumeration oracle; independent of the pivoting search.

    Walks every complete subset (members added in increasing index) and
    keeps those with no common external neighbor.
    """
    n = len(g)
    if n > 20:
        raise ValueError(f"oracle limited to 20 nodes, got {n}")
    found: list[int] = []

    def rec(last: int, mask: int, size: int, common: int) -> None:
        if common == 0 and size >= 2:
            found.append(mask)
        ext = common
        while ext:
            low = ext & -ext
            i = low.bit_length() - 1
            ext ^= low
            if i > last:
                rec(i, mask | low, size + 1, common & g.adj[i])

    for i in range(n):
        rec(i, 1 << i, 1, g.adj[i])
    return _materialize(g, found, False)
