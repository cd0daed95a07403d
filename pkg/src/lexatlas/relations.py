"""Relation extraction and statistical filtering.

Four ways of relating lexical units are supported: co-occurrence within a
sliding window, co-occurrence within a sentence, direct or once-interrupted
dependency links, and synonym pairs read from an external list.  A
FrequencyTable aggregates the instances; `contexonyms` then applies the
stoplist, absolute threshold, quantile and reciprocal filters to produce the
partner set a headword's graph is built from.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .corpus import ROOT
from .errors import RelationError
from .morpho import LexicalUnit, NormalizedDoc, POSTag

log = logging.getLogger(__name__)


class RelationKind(str, Enum):
    WINDOW = "WINDOW"
    SENTENCE = "SENTENCE"
    SYN_PRIMARY = "SYN_PRIMARY"
    SYN_SECONDARY = "SYN_SECONDARY"
    SYNONYM = "SYNONYM"


PROXIMITY_KINDS = frozenset({RelationKind.WINDOW, RelationKind.SENTENCE})


@dataclass(frozen=True)
class RelationInstance:
    """One attestation of a relation between two distinct units.

    Endpoints are stored in canonical (sorted) order so (a,b) and (b,a)
    collapse to the same key everywhere downstream.
    """

    a: LexicalUnit
    b: LexicalUnit
    kind: RelationKind
    ctx_id: int

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError(f"self-relation on {self.a}")
        if self.b < self.a:
            first, second = self.b, self.a
            object.__setattr__(self, "a", first)
            object.__setattr__(self, "b", second)

    @property
    def pair(self) -> tuple[LexicalUnit, LexicalUnit]:
        return (self.a, self.b)


def canonical_pair(u: LexicalUnit, v: LexicalUnit) -> tuple[LexicalUnit, LexicalUnit]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class FilterConfig:
    """Thresholds of the contexonym filters.

    `context_quantile` keeps, per headword, the partners whose pair count
    falls in the top fraction of that word's own count distribution;
    `reciprocal_filter` additionally requires the headword to pass the same
    test from the partner's side.
    """

    stop_top_k: int = 500
    context_quantile: float = 0.05
    min_pair_count: int = 2
    reciprocal_filter: bool = True

    def __post_init__(self) -> None:
        if not 0 < self.context_quantile <= 1:
            raise ValueError(f"context_quantile must be in (0, 1], got {self.context_quantile}")
        if self.stop_top_k < 0:
            raise ValueError("stop_top_k must be >= 0")
        if self.min_pair_count < 1:
            raise ValueError("min_pair_count must be >= 1")

    @classmethod
    def for_mode(cls, kind: RelationKind, **overrides) -> "FilterConfig":
        if kind in PROXIMITY_KINDS:
            base = dict(stop_top_k=500, context_quantile=0.05, min_pair_count=2, reciprocal_filter=True)
        else:
            base = dict(stop_top_k=500, context_quantile=0.05, min_pair_count=1, reciprocal_filter=False)
        base.update(overrides)
        return cls(**base)


class FrequencyTable:
    """Aggregated unit and pair statistics for one relation mode.

    `pair_freq` counts distinct (pair, context) attestations, so a pair seen
    three times inside one sentence still counts once for that sentence.
    """

    def __init__(
        self,
        kind: RelationKind,
        unit_freq: dict[LexicalUnit, int],
        unit_ctxs: dict[LexicalUnit, frozenset[int]],
        pair_ctxs: dict[tuple[LexicalUnit, LexicalUnit], frozenset[int]],
        n_contexts: int,
    ) -> None:
        self.kind = kind
        self.unit_freq = unit_freq
        self.unit_ctxs = unit_ctxs
        self.pair_ctxs = pair_ctxs
        self.pair_freq = {p: len(cs) for p, cs in pair_ctxs.items()}
        self.n_contexts = n_contexts
        self._partners: dict[LexicalUnit, list[tuple[LexicalUnit, int]]] | None = None
        self._freq_order: list[LexicalUnit] | None = None

    def pair_count(self, u: LexicalUnit, v: LexicalUnit) -> int:
        return self.pair_freq.get(canonical_pair(u, v), 0)

    def pair_contexts(self, u: LexicalUnit, v: LexicalUnit) -> frozenset[int]:
        return self.pair_ctxs.get(canonical_pair(u, v), frozenset())

    def partners(self, w: LexicalUnit) -> list[tuple[LexicalUnit, int]]:
        """All units paired with w, sorted by descending count then unit."""
        if self._partners is None:
            acc: dict[LexicalUnit, list[tuple[LexicalUnit, int]]] = {}
            for (a, b), n in self.pair_freq.items():
                acc.setdefault(a, []).append((b, n))
                acc.setdefault(b, []).append((a, n))
            for lst in acc.values():
                lst.sort(key=lambda t: (-t[1], t[0]))
            self._partners = acc
        return list(self._partners.get(w, []))

    def top_units(self, k: int) -> frozenset[LexicalUnit]:
        """The k globally most frequent units (ties resolved lexicographically)."""
        if k <= 0:
            return frozenset()
        if self._freq_order is None:
            self._freq_order = sorted(self.unit_freq, key=lambda u: (-self.unit_freq[u], u))
        return frozenset(self._freq_order[:k])

    @property
    def vocabulary(self) -> list[LexicalUnit]:
        return sorted(self.unit_freq)


def _units_with_ctx(doc: NormalizedDoc) -> list[tuple[LexicalUnit, int]]:
    seq = []
    for sent in doc.sentences:
        for u in sent.token_units:
            if u is not None:
                seq.append((u, sent.ctx_id))
    return seq


def extract_window(docs: Sequence[NormalizedDoc], width: int = 50) -> list[RelationInstance]:
    """Forward-only sliding window over surviving units, per document.

    Position p is paired with each distinct unit among the next width-1 unit
    positions; ctx_id is the sentence of the left member.  Distance is
    measured in surviving units, not raw tokens.
    """
    if width < 2:
        raise ValueError("window width must be >= 2")
    out: list[RelationInstance] = []
    for doc in docs:
        seq = _units_with_ctx(doc)
        n = len(seq)
        for p in range(n):
            u, ctx = seq[p]
            seen: set[LexicalUnit] = set()
            for q in range(p + 1, min(p + width, n)):
                v = seq[q][0]
                if v == u or v in seen:
                    continue
                seen.add(v)
                out.append(RelationInstance(u, v, RelationKind.WINDOW, ctx))
    out.sort(key=lambda r: (r.ctx_id, r.a, r.b))
    return out


def extract_sentence(docs: Sequence[NormalizedDoc]) -> list[RelationInstance]:
    """One SENTENCE instance per unordered pair of distinct units per sentence."""
    out: list[RelationInstance] = []
    for doc in docs:
        for sent in doc.sentences:
            units = sorted(set(sent.units))
            for i in range(len(units)):
                for j in range(i + 1, len(units)):
                    out.append(RelationInstance(units[i], units[j], RelationKind.SENTENCE, sent.ctx_id))
    out.sort(key=lambda r: (r.ctx_id, r.a, r.b))
    return out


def extract_syntactic(docs: Sequence[NormalizedDoc]) -> list[RelationInstance]:
    """Dependency-based relations: direct links and once-interrupted paths.

    SYN_PRIMARY joins the endpoints of each dependency edge when both
    survive normalization.  SYN_SECONDARY joins units exactly two edges
    apart (the intermediate token may be anything, dropped or not), unless
    a SYN_PRIMARY already links the same unit pair in the same sentence.
    """
    out: list[RelationInstance] = []
    for doc in docs:
        for sent in doc.sentences:
            if any(h is None for h in sent.heads):
                raise RelationError(f"missing head annotation in context {sent.ctx_id}")
            n = len(sent.token_units)
            adj: list[list[int]] = [[] for _ in range(n)]
            for i, h in enumerate(sent.heads):
                if h == ROOT:
                    continue
                if not 0 <= h < n:
                    raise RelationError(f"head {h} out of range in context {sent.ctx_id}")
                adj[i].append(h)
                adj[h].append(i)

            units = sent.token_units
            primary: set[tuple[LexicalUnit, LexicalUnit]] = set()
            for i, h in enumerate(sent.heads):
                if h == ROOT:
                    continue
                u, v = units[i], units[h]
                if u is not None and v is not None and u != v:
                    primary.add(canonical_pair(u, v))

            secondary: set[tuple[LexicalUnit, LexicalUnit]] = set()
            for mid in range(n):
                nbrs = adj[mid]
                for x in range(len(nbrs)):
                    for y in range(x + 1, len(nbrs)):
                        u, v = units[nbrs[x]], units[nbrs[y]]
                        if u is None or v is None or u == v:
                            continue
                        pair = canonical_pair(u, v)
                        if pair not in primary:
                            secondary.add(pair)

            for a, b in sorted(primary):
                out.append(RelationInstance(a, b, RelationKind.SYN_PRIMARY, sent.ctx_id))
            for a, b in sorted(secondary):
                out.append(RelationInstance(a, b, RelationKind.SYN_SECONDARY, sent.ctx_id))
    out.sort(key=lambda r: (r.ctx_id, r.kind.value, r.a, r.b))
    return out


def load_synonym_pairs(lines: Iterable[str], source: str = "<synonyms>") -> list[RelationInstance]:
    """Read WORD1 <tab> WORD2 <tab> SOURCE [<tab> POS1 [<tab> POS2]] lines.

    Without POS columns the units default to POS X.  Self-pairs are dropped
    with a warning; the line number doubles as the instance's ctx_id.
    """
    out: list[RelationInstance] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if not 3 <= len(cols) <= 5:
            raise RelationError(f"{source}:{lineno}: expected 3 to 5 columns, got {len(cols)}")
        w1, w2 = cols[0].strip(), cols[1].strip()
        if not w1 or not w2:
            raise RelationError(f"{source}:{lineno}: empty word field")
        pos1 = POSTag.parse(cols[3]) if len(cols) >= 4 else POSTag.X
        pos2 = POSTag.parse(cols[4]) if len(cols) >= 5 else pos1
        a = LexicalUnit(w1, pos1)
        b = LexicalUnit(w2, pos2)
        if a == b:
            log.warning("%s:%d: self-pair %r skipped", source, lineno, w1)
            continue
        out.append(RelationInstance(a, b, RelationKind.SYNONYM, lineno))
    return out


def corpus_stats(
    instances: Sequence[RelationInstance],
    docs: Sequence[NormalizedDoc] | None = None,
    kind: RelationKind | None = None,
) -> FrequencyTable:
    """Aggregate instances (and, when given, the corpus itself) into a table.

    With docs, unit frequencies count token occurrences in the normalized
    corpus.  Without docs (synonym lists have no corpus) endpoints of the
    instances are counted instead.
    """
    kinds = {r.kind for r in instances}
    syntactic = {RelationKind.SYN_PRIMARY, RelationKind.SYN_SECONDARY}
    if len(kinds) > 1 and not kinds <= syntactic:
        # Primary and secondary links are two halves of one syntactic mode;
        # any other mixture is a caller bug.
        raise ValueError(f"mixed relation kinds in one table: {sorted(k.value for k in kinds)}")
    if kind is None:
        kind = RelationKind.SYN_PRIMARY if kinds <= syntactic and kinds else next(iter(kinds), RelationKind.SENTENCE)

    pair_sets: dict[tuple[LexicalUnit, LexicalUnit], set[int]] = {}
    for r in instances:
        pair_sets.setdefault(r.pair, set()).add(r.ctx_id)

    unit_freq: dict[LexicalUnit, int] = {}
    unit_sets: dict[LexicalUnit, set[int]] = {}
    if docs is not None:
        n_contexts = 0
        for doc in docs:
            for sent in doc.sentences:
                n_contexts += 1
                for u in sent.units:
                    unit_freq[u] = unit_freq.get(u, 0) + 1
                    unit_sets.setdefault(u, set()).add(sent.ctx_id)
    else:
        ctxs: set[int] = set()
        for r in instances:
            ctxs.add(r.ctx_id)
            for u in (r.a, r.b):
                unit_freq[u] = unit_freq.get(u, 0) + 1
                unit_sets.setdefault(u, set()).add(r.ctx_id)
        n_contexts = len(ctxs)

    return FrequencyTable(
        kind=kind,
        unit_freq=unit_freq,
        unit_ctxs={u: frozenset(s) for u, s in unit_sets.items()},
        pair_ctxs={p: frozenset(s) for p, s in pair_sets.items()},
        n_contexts=n_contexts,
    )


def _quantile_threshold(counts: Sequence[int], quantile: float) -> int:
    """Smallest count still inside the top `quantile` fraction (rank rule).

    With m counts sorted descending, rank k = max(1, ceil(quantile * m));
    the threshold is the k-th count.  Ties at the threshold are kept, and at
    least one item always passes.
    """
    ordered = sorted(counts, reverse=True)
    k = max(1, math.ceil(quantile * len(ordered)))
    return ordered[k - 1]


def _surviving_partners(
    w: LexicalUnit,
    stats: FrequencyTable,
    cfg: FilterConfig,
    stop: frozenset[LexicalUnit],
) -> dict[LexicalUnit, int]:
    """Partners of w after the stoplist, absolute and quantile filters."""
    kept = {u: n for u, n in stats.partners(w) if u not in stop and n >= cfg.min_pair_count}
    if not kept:
        return {}
    threshold = _quantile_threshold(list(kept.values()), cfg.context_quantile)
    return {u: n for u, n in kept.items() if n >= threshold}


def contexonyms(w: LexicalUnit, stats: FrequencyTable, cfg: FilterConfig) -> set[LexicalUnit]:
    """Filtered partner set of w; empty when w is unseen (not an error)."""
    stop = stats.top_units(cfg.stop_top_k)
    kept = _surviving_partners(w, stats, cfg, stop)
    if not cfg.reciprocal_filter:
        return set(kept)
    # The headword must be a top-quantile partner of each candidate too.
    # It is exempted from the candidate's stoplist: frequent headwords
    # would otherwise lose every partner.
    stop_for_back = stop - {w}
    out = set()
    for u in kept:
        back = _surviving_partners(u, stats, cfg, stop_for_back)
        if w in back:
            out.add(u)
    return out
