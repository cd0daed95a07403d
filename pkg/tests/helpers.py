"""Shared fixture builders for the test suite."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from lexatlas import (
    ContexonymGraph,
    LexicalUnit,
    NormalizedDoc,
    NormalizedSentence,
    POSTag,
)


def U(key: str, pos: POSTag = POSTag.X) -> LexicalUnit:
    return LexicalUnit(key, pos)


def ndoc(rows: list[list[str]], doc_id: str = "d", start_ctx: int = 0) -> NormalizedDoc:
    """Normalized doc from bare keys; one row per sentence, POS X throughout."""
    sentences = []
    for i, keys in enumerate(rows):
        units = tuple(U(k) for k in keys)
        sentences.append(
            NormalizedSentence(
                ctx_id=start_ctx + i,
                text=" ".join(keys),
                token_units=units,
                heads=tuple(None for _ in keys),
            )
        )
    return NormalizedDoc(doc_id=doc_id, sentences=tuple(sentences))


def graph_from_edges(n: int, edges: list[tuple[int, int]], headword: str = "head") -> ContexonymGraph:
    """Bare graph over nodes n0..n(n-1); support metadata kept minimal."""
    nodes = tuple(U(f"n{i:02d}") for i in range(n))
    adj = [0] * n
    edge_support: dict[tuple[int, int], int] = {}
    edge_ctxs: dict[tuple[int, int], frozenset[int]] = {}
    for a, b in edges:
        i, j = min(a, b), max(a, b)
        if i == j:
            raise ValueError("self-loop in fixture")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        edge_support[(i, j)] = 1
        edge_ctxs[(i, j)] = frozenset({i * n + j})
    return ContexonymGraph(
        headword=U(headword),
        nodes=nodes,
        adj=tuple(adj),
        edge_support=edge_support,
        edge_ctxs=edge_ctxs,
        head_ctxs=tuple(frozenset() for _ in range(n)),
    )


def random_graph(rng: np.random.Generator, n: int, density: float) -> ContexonymGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return graph_from_edges(n, edges)


def random_contingency(rng: np.random.Generator, R: int, C: int, high: int = 9) -> np.ndarray:
    """Nonnegative integer table with no all-zero row or column."""
    N = rng.integers(0, high, size=(R, C)).astype(float)
    for i in range(R):
        if not N[i].any():
            N[i, rng.integers(0, C)] = float(rng.integers(1, high))
    for j in range(C):
        if not N[:, j].any():
            N[rng.integers(0, R), j] = float(rng.integers(1, high))
    return N


def standardized_residuals(N: np.ndarray) -> np.ndarray:
    """Textbook residual formula, kept separate from the implementation."""
    n = N.sum()
    P = N / n
    r = P.sum(axis=1)
    c = P.sum(axis=0)
    E = np.outer(r, c)
    return (P - E) / np.sqrt(E)


def pearson_chi2(N: np.ndarray) -> float:
    """Plain chi-square with explicit loops; the independent oracle."""
    n = N.sum()
    rows = N.sum(axis=1)
    cols = N.sum(axis=0)
    total = 0.0
    for i in range(N.shape[0]):
        for j in range(N.shape[1]):
            expected = rows[i] * cols[j] / n
            total += (N[i, j] - expected) ** 2 / expected
    return total


TARG_COMMUNITY_A = ("borin", "malket", "sorund", "pelvin")
TARG_COMMUNITY_B = ("quarib", "tefnol", "ulgora", "vistrem")
TARG_DECOYS = ("zukol", "yamrel", "xilbot")


def write_targ_corpus(corpus_dir: Path, reps: int = 25) -> Path:
    """Two engineered sense communities for "targ" plus a disjoint decoy set.

    Community A sentences overlap on borin+malket, community B on
    quarib+tefnol; the two communities never share a sentence, so the
    contexonym graph of targ splits into two components of two
    overlapping triangles each.  Decoy sentences never contain targ.
    """
    corpus_dir.mkdir(parents=True, exist_ok=True)
    sentences = []
    for _ in range(reps):
        sentences.append("Targ borin malket sorund.")
        sentences.append("Targ borin malket pelvin.")
        sentences.append("Targ quarib tefnol ulgora.")
        sentences.append("Targ quarib tefnol vistrem.")
    for _ in range(reps):
        sentences.append("Zukol yamrel xilbot.")
    (corpus_dir / "targ.txt").write_text(" ".join(sentences), encoding="utf-8")
    return corpus_dir


def assert_well_formed_cliques(g, enum) -> None:
    """Completeness, maximality, uniqueness, and edge coverage of an enumeration."""
    node_index = {u: i for i, u in enumerate(g.nodes)}
    seen = set()
    covered = set()
    for q in enum.cliques:
        idx = sorted(node_index[u] for u in q.members)
        assert len(idx) >= 2
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                assert g.adjacent(idx[a], idx[b]), "clique not complete"
                covered.add((idx[a], idx[b]))
        outside = set(range(len(g))) - set(idx)
        for v in outside:
            assert not all(g.adjacent(v, i) for i in idx), "clique not maximal"
        key = frozenset(idx)
        assert key not in seen, "duplicate clique"
        seen.add(key)
    assert covered == set(g.edge_support), "edge not covered by any clique"
