"""Correspondence analysis of the clique-by-contexonym table.

Standard chain: correspondence matrix, standardized residuals, SVD,
principal coordinates.  Two things are non-negotiable here and shape the
implementation: results must be bit-identical across runs and platforms
for the same table (fixed sign convention, canonical row ordering fed to
the SVD), and every number must survive a 12-significant-digit round trip
unchanged (coordinates are snapped once, at construction, so memory,
files and API responses all carry the same value).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .cliques import Clique, ContexonymGraph
from .errors import ComputationError, NotMappableError
from .morpho import LexicalUnit

NULL_FACTOR_RTOL = 1e-12  # singular values below this fraction of sigma_1 are noise
NULL_FACTOR_ATOL = 1e-12  # sigma <= 1 always holds here, so this is also an absolute floor


class Weighting(str, Enum):
    BINARY = "binary"
    SUPPORT = "support"


def snap12(x: float) -> float:
    """Round to 12 significant digits; the canonical numeric precision.

    12 digits round-trip through repr exactly, so serialized resources,
    API responses and in-memory values stay bitwise comparable.
    """
    return float(f"{x:.12g}")


def snap12_array(a: np.ndarray) -> np.ndarray:
    out = np.array([snap12(x) for x in a.ravel()], dtype=float)
    return out.reshape(a.shape)


@dataclass(frozen=True)
class ContingencyTable:
    """Cleaned nonnegative table: rows are cliques, columns contexonyms."""

    row_ids: tuple[int, ...]
    col_units: tuple[LexicalUnit, ...]
    N: np.ndarray
    weighting: Weighting

    def __post_init__(self) -> None:
        if self.N.shape != (len(self.row_ids), len(self.col_units)):
            raise ValueError("table shape does not match its labels")


def contingency(
    cliques: list[Clique] | tuple[Clique, ...],
    weighting: Weighting = Weighting.BINARY,
    graph: ContexonymGraph | None = None,
) -> ContingencyTable:
    """Build the clique-membership table (binary or support-weighted).

    All-zero rows and columns are dropped; the surviving row_ids map back
    to the original clique ids.  Fewer than 2 surviving rows or columns
    means the word has no usable geometry (NOT_MAPPABLE).
    """
    cols = sorted({u for q in cliques for u in q.members})
    col_index = {u: j for j, u in enumerate(cols)}
    n_rows, n_cols = len(cliques), len(cols)
    N = np.zeros((n_rows, n_cols), dtype=float)

    if weighting is Weighting.BINARY:
        for i, q in enumerate(cliques):
            for u in q.members:
                N[i, col_index[u]] = 1.0
    else:
        if graph is None:
            raise ValueError("support weighting needs the contexonym graph")
        node_index = {u: i for i, u in enumerate(graph.nodes)}
        for i, q in enumerate(cliques):
            idxs = sorted(node_index[u] for u in q.members)
            for a in idxs:
                # Cell value: how many distinct contexts attest this
                # member's edges to the other members of the clique.
                ctx: set[int] = set()
                for b in idxs:
                    if a == b:
                        continue
                    ctx |= graph.edge_ctxs.get((min(a, b), max(a, b)), frozenset())
                N[i, col_index[graph.nodes[a]]] = float(len(ctx))

    keep_rows = [i for i in range(n_rows) if N[i].any()]
    keep_cols = [j for j in range(n_cols) if N[:, j].any()]
    if len(keep_rows) < 2:
        raise NotMappableError(f"fewer than 2 non-empty cliques ({len(keep_rows)})")
    if len(keep_cols) < 2:
        raise NotMappableError(f"fewer than 2 attested contexonym columns ({len(keep_cols)})")
    N = N[np.ix_(keep_rows, keep_cols)]
    return ContingencyTable(
        row_ids=tuple(cliques[i].clique_id for i in keep_rows),
        col_units=tuple(cols[j] for j in keep_cols),
        N=N,
        weighting=weighting,
    )


@dataclass(frozen=True)
class CAResult:
    """Principal coordinates and inertia decomposition, snapped to 12 digits.

    K = min(R, C) - 1 axes are kept; null factors (sigma below 1e-12 of
    sigma_1) are zeroed outright rather than carried as noise.
    """

    row_ids: tuple[int, ...]
    col_units: tuple[LexicalUnit, ...]
    row_coords: np.ndarray
    col_coords: np.ndarray
    singular_values: np.ndarray
    inertia_total: float
    inertia_share: np.ndarray
    row_masses: np.ndarray
    col_masses: np.ndarray

    @property
    def n_axes(self) -> int:
        return len(self.singular_values)


def _canonical_row_order(N: np.ndarray) -> list[int]:
    """Sort rows by content; equal rows keep their relative order."""
    return sorted(range(N.shape[0]), key=lambda i: tuple(N[i]))


def correspondence_analysis(t: ContingencyTable) -> CAResult:
    """Decompose the table's chi-square residuals into principal coordinates.

    The SVD always runs on the canonically row-sorted matrix and results
    are scattered back, so any row permutation of the input permutes
    row_coords bitwise-identically and changes nothing else.
    """
    N_orig = np.asarray(t.N, dtype=float)
    R, C = N_orig.shape
    if min(R, C) < 2:
        raise NotMappableError(f"table {R}x{C} spans no factor space")
    order = _canonical_row_order(N_orig)
    N = N_orig[order]

    n = N.sum()
    if n <= 0:
        raise ValueError("contingency table has zero grand total")
    P = N / n
    r = P.sum(axis=1)
    c = P.sum(axis=0)
    if (r <= 0).any() or (c <= 0).any():
        raise ValueError("table not cleaned: zero row or column mass")

    E = np.outer(r, c)
    S = (P - E) / np.sqrt(E)
    try:
        U, sigma, Vt = np.linalg.svd(S, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ComputationError(f"SVD failed to converge on a {R}x{C} table") from exc

    K = min(R, C) - 1  # centering kills the trivial factor
    U, sigma, Vt = U[:, :K], sigma[:K], Vt[:K, :]

    # Null factors: relative to sigma_1, plus an absolute floor so an
    # exactly independent table (sigma_1 itself is rounding noise) comes
    # out all-zero instead of carrying 1e-17-scale ghosts.
    null = (sigma < NULL_FACTOR_RTOL * sigma[0]) | (sigma < NULL_FACTOR_ATOL)
    sigma = np.where(null, 0.0, sigma)

    F = (U * sigma) / np.sqrt(r)[:, None]
    G = (Vt.T * sigma) / np.sqrt(c)[:, None]
    F[:, null] = 0.0
    G[:, null] = 0.0

    # Sign convention: the largest-magnitude row loading on each axis is
    # positive.  Resolved on the canonical ordering, so it is stable too.
    for k in range(K):
        i_star = int(np.argmax(np.abs(F[:, k])))
        if F[i_star, k] < 0:
            F[:, k] = -F[:, k]
            G[:, k] = -G[:, k]

    # Equal table rows must yield bitwise-equal coordinates, otherwise
    # permuting two identical rows would be observable.
    for i in range(1, len(order)):
        if tuple(N[i]) == tuple(N[i - 1]):
            F[i] = F[i - 1]

    inertia_total = float((sigma**2).sum())
    share = sigma**2 / inertia_total if inertia_total > 0 else np.zeros(K)

    inv = np.empty(R, dtype=int)
    for pos, i in enumerate(order):
        inv[i] = pos
    F_out = F[inv]
    r_out = r[inv]

    return CAResult(
        row_ids=t.row_ids,
        col_units=t.col_units,
        row_coords=snap12_array(F_out),
        col_coords=snap12_array(G),
        singular_values=snap12_array(sigma),
        inertia_total=snap12(inertia_total),
        inertia_share=snap12_array(share),
        row_masses=snap12_array(r_out),
        col_masses=snap12_array(c),
    )


@dataclass(frozen=True)
class Projection:
    axis_pair: tuple[int, int]
    points: np.ndarray
    labels: np.ndarray


def project(res: CAResult, k1: int = 1, k2: int = 2) -> Projection:
    """Slice two axes (1-based) of the coordinates for plotting.

    Axes beyond the stored K are filled with zeros, so a K=1 map can still
    be asked for the conventional (1, 2) plane.
    """
    if k1 < 1 or k2 < 1:
        raise ValueError(f"axes are 1-based, got ({k1}, {k2})")
    if k1 == k2:
        raise ValueError("projection axes must be distinct")

    def column(coords: np.ndarray, k: int) -> np.ndarray:
        if k <= res.n_axes:
            return coords[:, k - 1]
        return np.zeros(coords.shape[0])

    points = np.column_stack([column(res.row_coords, k1), column(res.row_coords, k2)])
    labels = np.column_stack([column(res.col_coords, k1), column(res.col_coords, k2)])
    return Projection(axis_pair=(k1, k2), points=points, labels=labels)
