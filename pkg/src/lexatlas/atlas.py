"""Per-word pipeline, resource assembly, persistence and comparison.

A Resource bundles every semantic map built from one corpus with the
sentence store and the sense index (clique id to context ids), and is
persisted as a plain directory: manifest.json, vocabulary.tsv,
contexts.tsv, not_mappable.json and one JSON file per mapped word.  The
layout is diff-friendly on purpose; rebuilding from the same corpus and
config yields byte-identical files except for the manifest timestamp.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence
from urllib.parse import quote

import numpy as np

from .ca import CAResult, contingency, correspondence_analysis
from .cliques import Clique, build_graph, maximal_cliques
from .config import BuildConfig, Mode
from .corpus import Document, corpus_fingerprint
from .errors import NotFoundError, NotMappableError
from .morpho import LexicalUnit, MorphoLexicon, NormalizedDoc, POSTag, normalize_corpus
from .relations import (
    FrequencyTable,
    RelationKind,
    contexonyms,
    corpus_stats,
    extract_sentence,
    extract_syntactic,
    extract_window,
    load_synonym_pairs,
)

log = logging.getLogger(__name__)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Cluster:
    cluster_id: int
    clique_ids: tuple[int, ...]
    label: tuple[LexicalUnit, ...]


class SemanticMap:
    """One headword's cliques plus their factor-space geometry."""

    def __init__(
        self,
        headword: LexicalUnit,
        cliques: tuple[Clique, ...],
        ca: CAResult,
        clusters: tuple[Cluster, ...],
        capped: bool = False,
    ) -> None:
        self.headword = headword
        self.cliques = cliques
        self.ca = ca
        self.clusters = clusters
        self.capped = capped

    def clique(self, clique_id: int) -> Clique:
        for q in self.cliques:
            if q.clique_id == clique_id:
                return q
        raise NotFoundError(f"no clique {clique_id} for {self.headword}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemanticMap):
            return NotImplemented
        return (
            self.headword == other.headword
            and self.cliques == other.cliques
            and self.clusters == other.clusters
            and self.capped == other.capped
            and ca_results_equal(self.ca, other.ca)
        )

    def __repr__(self) -> str:
        return f"SemanticMap({self.headword}, {len(self.cliques)} cliques, {self.ca.n_axes} axes)"


def ca_results_equal(a: CAResult, b: CAResult) -> bool:
    """Field-by-field equality; arrays must match exactly, not approximately."""
    return (
        a.row_ids == b.row_ids
        and a.col_units == b.col_units
        and np.array_equal(a.row_coords, b.row_coords)
        and np.array_equal(a.col_coords, b.col_coords)
        and np.array_equal(a.singular_values, b.singular_values)
        and a.inertia_total == b.inertia_total
        and np.array_equal(a.inertia_share, b.inertia_share)
        and np.array_equal(a.row_masses, b.row_masses)
        and np.array_equal(a.col_masses, b.col_masses)
    )


def build_map(w: LexicalUnit, stats: FrequencyTable, cfg: BuildConfig) -> SemanticMap:
    """Contexonyms, graph, cliques, contingency, CA; raises NotMappableError
    at whichever stage degenerates."""
    ctxs = contexonyms(w, stats, cfg.filter)
    if len(ctxs) < 2:
        raise NotMappableError(f"only {len(ctxs)} contexonyms survive filtering")
    graph = build_graph(w, ctxs, stats, cfg.edge_min)
    enum = maximal_cliques(graph, cfg.max_cliques, cfg.max_clique_size)
    if len(enum) < 2:
        raise NotMappableError(f"only {len(enum)} cliques of size >= 2")
    table = contingency(list(enum.cliques), cfg.weighting, graph=graph)
    result = correspondence_analysis(table)
    clusters = cluster_map_rows(result, unit_freq=stats.unit_freq, cliques=enum.cliques)
    return SemanticMap(w, enum.cliques, result, clusters, capped=enum.capped)


def cluster_map_rows(
    result: CAResult,
    cliques: Sequence[Clique],
    unit_freq: dict[LexicalUnit, int] | None = None,
    linkage_threshold: float = 0.25,
) -> tuple[Cluster, ...]:
    """Single-linkage clusters over the full K-dimensional row coordinates.

    The cut is linkage_threshold times the map diameter, so cluster
    identity does not depend on which plane is displayed.  Each cluster is
    labeled with the three contexonyms most shared by its cliques (ties by
    corpus frequency, then lexicographic).
    """
    from scipy.cluster.hierarchy import fcluster, linkage
    from scipy.spatial.distance import pdist

    X = result.row_coords
    R = X.shape[0]
    by_id = {q.clique_id: q for q in cliques}
    if R < 2:
        raise ValueError("clustering needs at least 2 cliques")
    dists = pdist(X)
    diameter = float(dists.max())
    if diameter == 0.0:
        groups = [list(result.row_ids)]
    else:
        assignment = fcluster(linkage(X, method="single"), t=linkage_threshold * diameter, criterion="distance")
        acc: dict[int, list[int]] = {}
        for row, grp in enumerate(assignment):
            acc.setdefault(int(grp), []).append(result.row_ids[row])
        groups = sorted(acc.values(), key=min)

    freq = unit_freq or {}
    clusters = []
    for cid, ids in enumerate(groups):
        ids = sorted(ids)
        counts: dict[LexicalUnit, int] = {}
        for qid in ids:
            for u in by_id[qid].members:
                counts[u] = counts.get(u, 0) + 1
        ranked = sorted(counts, key=lambda u: (-counts[u], -freq.get(u, 0), u))
        clusters.append(Cluster(cid, tuple(ids), tuple(ranked[:3])))
    return tuple(clusters)


def cluster_map(m: SemanticMap, linkage_threshold: float = 0.25,
                unit_freq: dict[LexicalUnit, int] | None = None) -> tuple[Cluster, ...]:
    return cluster_map_rows(m.ca, m.cliques, unit_freq, linkage_threshold)


class Resource:
    """Everything built from one corpus: maps, vocabulary, sense index, store."""

    def __init__(
        self,
        manifest: dict,
        unit_freq: dict[LexicalUnit, int],
        maps: dict[LexicalUnit, SemanticMap],
        not_mappable: dict[LexicalUnit, str],
        context_store: dict[int, tuple[str, str]],
        context_index: dict[tuple[LexicalUnit, int], frozenset[int]],
    ) -> None:
        self.manifest = manifest
        self.unit_freq = unit_freq
        self.maps = maps
        self.not_mappable = not_mappable
        self.context_store = context_store
        self.context_index = context_index
        self._by_key: dict[str, list[LexicalUnit]] | None = None

    @property
    def vocabulary(self) -> list[LexicalUnit]:
        return sorted(self.unit_freq)

    def resolve(self, key: str, pos: str | None = None) -> LexicalUnit:
        """Find the unit for a bare key; without pos, the most frequent wins."""
        if self._by_key is None:
            acc: dict[str, list[LexicalUnit]] = {}
            for u in self.unit_freq:
                acc.setdefault(u.key, []).append(u)
            for lst in acc.values():
                lst.sort(key=lambda u: (-self.unit_freq[u], u.pos.value))
            self._by_key = acc
        candidates = self._by_key.get(key, [])
        if pos is not None:
            want = POSTag.parse(pos)
            candidates = [u for u in candidates if u.pos is want]
        if not candidates:
            raise NotFoundError(f"unknown word {key!r}" + (f" with pos {pos}" if pos else ""))
        return candidates[0]

    def search(self, prefix: str = "", limit: int = 50) -> list[LexicalUnit]:
        """Vocabulary units whose key starts with prefix, most frequent first."""
        hits = [u for u in self.unit_freq if u.key.startswith(prefix)]
        hits.sort(key=lambda u: (-self.unit_freq[u], u))
        return hits[: max(0, limit)]


def _mode_instances(cfg: BuildConfig, ndocs: Sequence[NormalizedDoc]):
    if cfg.mode is Mode.WINDOW:
        return extract_window(ndocs, cfg.window_width)
    if cfg.mode is Mode.SENTENCE:
        return extract_sentence(ndocs)
    if cfg.mode is Mode.SYNTACTIC:
        return extract_syntactic(ndocs)
    raise ValueError(f"mode {cfg.mode} does not extract from a corpus")


def build_resource(
    docs: Sequence[Document],
    cfg: BuildConfig,
    lexicon: MorphoLexicon | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> Resource:
    """Run the whole pipeline over a loaded corpus.

    Every vocabulary unit with at least min_freq occurrences either gets a
    map or a recorded not-mappable reason; nothing is silently skipped.
    """
    ndocs = normalize_corpus(docs, lexicon, cfg.normalization)
    instances = _mode_instances(cfg, ndocs)
    stats = corpus_stats(instances, ndocs, kind=cfg.relation_kind)
    eligible = sorted(u for u, n in stats.unit_freq.items() if n >= cfg.min_freq)

    maps: dict[LexicalUnit, SemanticMap] = {}
    not_mappable: dict[LexicalUnit, str] = {}
    for i, w in enumerate(eligible, start=1):
        try:
            maps[w] = build_map(w, stats, cfg)
        except NotMappableError as exc:
            not_mappable[w] = str(exc)
        if progress is not None and i % 1000 == 0:
            progress(i, len(eligible))
        elif i % 1000 == 0:
            log.info("mapped %d / %d words", i, len(eligible))

    context_store: dict[int, tuple[str, str]] = {}
    for doc in ndocs:
        for sent in doc.sentences:
            context_store[sent.ctx_id] = (doc.doc_id, sent.text)

    context_index: dict[tuple[LexicalUnit, int], frozenset[int]] = {}
    for w, m in maps.items():
        w_ctxs = stats.unit_ctxs.get(w, frozenset())
        for q in m.cliques:
            context_index[(w, q.clique_id)] = frozenset(q.support_ctx & w_ctxs)

    manifest = {
        "format": "lexatlas-resource",
        "version": FORMAT_VERSION,
        "created": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "corpus_fingerprint": corpus_fingerprint(docs),
        "mode": cfg.mode.value,
        "config": cfg.snapshot(),
        "n_contexts": stats.n_contexts,
        "vocabulary_size": len(stats.unit_freq),
        "eligible": len(eligible),
        "mapped": len(maps),
        "not_mappable": len(not_mappable),
    }
    return Resource(manifest, dict(stats.unit_freq), maps, not_mappable, context_store, context_index)


def build_synonym_resource(
    lines: Iterable[str],
    cfg: BuildConfig,
    source: str = "<synonyms>",
) -> Resource:
    """Same assembly as build_resource, but over a synonym pair list.

    Contexts here are the pair-list lines themselves, so the concordance
    side of the resource degrades to showing which lines attest a clique.
    """
    import hashlib

    lines = list(lines)
    instances = load_synonym_pairs(lines, source)
    stats = corpus_stats(instances, None, kind=RelationKind.SYNONYM)
    eligible = sorted(u for u, n in stats.unit_freq.items() if n >= cfg.min_freq)

    maps: dict[LexicalUnit, SemanticMap] = {}
    not_mappable: dict[LexicalUnit, str] = {}
    for w in eligible:
        try:
            maps[w] = build_map(w, stats, cfg)
        except NotMappableError as exc:
            not_mappable[w] = str(exc)

    context_store = {
        lineno: (source, raw.rstrip("\n"))
        for lineno, raw in enumerate(lines, start=1)
        if raw.strip() and not raw.startswith("#")
    }
    context_index: dict[tuple[LexicalUnit, int], frozenset[int]] = {}
    for w, m in maps.items():
        w_ctxs = stats.unit_ctxs.get(w, frozenset())
        for q in m.cliques:
            context_index[(w, q.clique_id)] = frozenset(q.support_ctx & w_ctxs)

    fingerprint = hashlib.sha256("".join(lines).encode("utf-8")).hexdigest()
    manifest = {
        "format": "lexatlas-resource",
        "version": FORMAT_VERSION,
        "created": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "corpus_fingerprint": fingerprint,
        "mode": cfg.mode.value,
        "config": cfg.snapshot(),
        "n_contexts": stats.n_contexts,
        "vocabulary_size": len(stats.unit_freq),
        "eligible": len(eligible),
        "mapped": len(maps),
        "not_mappable": len(not_mappable),
    }
    return Resource(manifest, dict(stats.unit_freq), maps, not_mappable, context_store, context_index)


def lookup_contexts(res: Resource, w: LexicalUnit, clique_id: int) -> list[tuple[int, str, str]]:
    """Sentences attesting one clique of w, as (ctx_id, doc_id, text)."""
    if w not in res.maps:
        raise NotFoundError(f"no map for {w}")
    key = (w, clique_id)
    if key not in res.context_index:
        raise NotFoundError(f"no clique {clique_id} for {w}")
    out = []
    for ctx_id in sorted(res.context_index[key]):
        doc_id, text = res.context_store[ctx_id]
        out.append((ctx_id, doc_id, text))
    return out


@dataclass(frozen=True)
class DiachronyReport:
    word: LexicalUnit
    only_a: frozenset[LexicalUnit]
    only_b: frozenset[LexicalUnit]
    jaccard_cliques: float
    best_match: tuple[tuple[int, int, float], ...]
    one_sided: str | None  # "a" or "b" when the word maps on one side only


def compare_resources(a: Resource, b: Resource, w: LexicalUnit) -> DiachronyReport:
    """Set-level comparison of one word's maps across two resources."""
    map_a = a.maps.get(w)
    map_b = b.maps.get(w)
    if map_a is None and map_b is None:
        raise NotFoundError(f"{w} mapped in neither resource")

    units_a = {u for q in map_a.cliques for u in q.members} if map_a else set()
    units_b = {u for q in map_b.cliques for u in q.members} if map_b else set()
    sets_a = {frozenset(q.members) for q in map_a.cliques} if map_a else set()
    sets_b = {frozenset(q.members) for q in map_b.cliques} if map_b else set()

    union = sets_a | sets_b
    jaccard = len(sets_a & sets_b) / len(union) if union else 1.0

    best: list[tuple[int, int, float]] = []
    if map_a and map_b:
        for qa in map_a.cliques:
            ma = set(qa.members)
            scored = [
                (len(ma & set(qb.members)) / len(ma | set(qb.members)), qb.clique_id)
                for qb in map_b.cliques
            ]
            overlap, qb_id = max(scored, key=lambda t: (t[0], -t[1]))
            best.append((qa.clique_id, qb_id, overlap))

    one_sided = None
    if map_a is None:
        one_sided = "b"
    elif map_b is None:
        one_sided = "a"

    return DiachronyReport(
        word=w,
        only_a=frozenset(units_a - units_b),
        only_b=frozenset(units_b - units_a),
        jaccard_cliques=jaccard,
        best_match=tuple(best),
        one_sided=one_sided,
    )


# ---------------------------------------------------------------------------
# Persistence

def _unit_json(u: LexicalUnit) -> list:
    return [u.key, u.pos.value]


def _unit_from_json(pair: Sequence) -> LexicalUnit:
    return LexicalUnit(pair[0], POSTag(pair[1]))


def _escape_field(s: str) -> str:
    return s.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n").replace("\r", "\\r")


def _unescape_field(s: str) -> str:
    out = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "\\" and i + 1 < len(s):
            nxt = s[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def map_filename(w: LexicalUnit) -> str:
    return f"{quote(w.key, safe='')}__{w.pos.value}.json"


def _dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def _map_json(res: Resource, w: LexicalUnit) -> dict:
    m = res.maps[w]
    r = m.ca
    return {
        "headword": _unit_json(w),
        "freq": res.unit_freq[w],
        "capped": m.capped,
        "cliques": [
            {
                "id": q.clique_id,
                "members": [_unit_json(u) for u in q.members],
                "support_ctx": sorted(q.support_ctx),
                "contexts": sorted(res.context_index.get((w, q.clique_id), frozenset())),
            }
            for q in m.cliques
        ],
        "row_ids": list(r.row_ids),
        "col_units": [_unit_json(u) for u in r.col_units],
        "row_coords": r.row_coords.tolist(),
        "col_coords": r.col_coords.tolist(),
        "singular_values": r.singular_values.tolist(),
        "inertia_total": r.inertia_total,
        "inertia_share": r.inertia_share.tolist(),
        "row_masses": r.row_masses.tolist(),
        "col_masses": r.col_masses.tolist(),
        "clusters": [
            {"id": c.cluster_id, "cliques": list(c.clique_ids), "label": [_unit_json(u) for u in c.label]}
            for c in m.clusters
        ],
    }


def save_resource(res: Resource, out_dir: str | Path) -> None:
    out = Path(out_dir)
    (out / "maps").mkdir(parents=True, exist_ok=True)

    _dump_json(res.manifest, out / "manifest.json")
    _dump_json(
        [[*_unit_json(u), reason] for u, reason in sorted(res.not_mappable.items())],
        out / "not_mappable.json",
    )

    vocab_lines = [
        f"{_escape_field(u.key)}\t{u.pos.value}\t{res.unit_freq[u]}\t{'1' if u in res.maps else '0'}"
        for u in sorted(res.unit_freq)
    ]
    (out / "vocabulary.tsv").write_text("\n".join(vocab_lines) + ("\n" if vocab_lines else ""), encoding="utf-8")

    ctx_lines = [
        f"{ctx_id}\t{_escape_field(doc_id)}\t{_escape_field(text)}"
        for ctx_id, (doc_id, text) in sorted(res.context_store.items())
    ]
    (out / "contexts.tsv").write_text("\n".join(ctx_lines) + ("\n" if ctx_lines else ""), encoding="utf-8")

    for w in sorted(res.maps):
        _dump_json(_map_json(res, w), out / "maps" / map_filename(w))


def _map_from_json(doc: dict) -> tuple[SemanticMap, dict[int, frozenset[int]]]:
    w = _unit_from_json(doc["headword"])
    cliques = tuple(
        Clique(
            clique_id=entry["id"],
            members=tuple(_unit_from_json(p) for p in entry["members"]),
            support_ctx=frozenset(entry["support_ctx"]),
        )
        for entry in doc["cliques"]
    )
    index = {entry["id"]: frozenset(entry["contexts"]) for entry in doc["cliques"]}
    result = CAResult(
        row_ids=tuple(doc["row_ids"]),
        col_units=tuple(_unit_from_json(p) for p in doc["col_units"]),
        row_coords=np.array(doc["row_coords"], dtype=float),
        col_coords=np.array(doc["col_coords"], dtype=float),
        singular_values=np.array(doc["singular_values"], dtype=float),
        inertia_total=doc["inertia_total"],
        inertia_share=np.array(doc["inertia_share"], dtype=float),
        row_masses=np.array(doc["row_masses"], dtype=float),
        col_masses=np.array(doc["col_masses"], dtype=float),
    )
    clusters = tuple(
        Cluster(entry["id"], tuple(entry["cliques"]), tuple(_unit_from_json(p) for p in entry["label"]))
        for entry in doc["clusters"]
    )
    return SemanticMap(w, cliques, result, clusters, capped=doc["capped"]), index


def load_resource(path: str | Path) -> Resource:
    root = Path(path)
    manifest_path = root / "manifest.json"
    if not manifest_path.is_file():
        raise NotFoundError(f"no resource manifest at {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))

    unit_freq: dict[LexicalUnit, int] = {}
    mapped_flags: dict[LexicalUnit, bool] = {}
    vocab_text = (root / "vocabulary.tsv").read_text(encoding="utf-8")
    for line in vocab_text.splitlines():
        if not line:
            continue
        key, pos, freq, mapped = line.split("\t")
        u = LexicalUnit(_unescape_field(key), POSTag(pos))
        unit_freq[u] = int(freq)
        mapped_flags[u] = mapped == "1"

    context_store: dict[int, tuple[str, str]] = {}
    ctx_text = (root / "contexts.tsv").read_text(encoding="utf-8")
    for line in ctx_text.splitlines():
        if not line:
            continue
        ctx_id, doc_id, text = line.split("\t")
        context_store[int(ctx_id)] = (_unescape_field(doc_id), _unescape_field(text))

    not_mappable = {
        LexicalUnit(key, POSTag(pos)): reason
        for key, pos, reason in json.loads((root / "not_mappable.json").read_text(encoding="utf-8"))
    }

    maps: dict[LexicalUnit, SemanticMap] = {}
    context_index: dict[tuple[LexicalUnit, int], frozenset[int]] = {}
    for u, is_mapped in sorted(mapped_flags.items()):
        if not is_mapped:
            continue
        doc = json.loads((root / "maps" / map_filename(u)).read_text(encoding="utf-8"))
        m, index = _map_from_json(doc)
        maps[m.headword] = m
        for clique_id, ctxs in index.items():
            context_index[(m.headword, clique_id)] = ctxs

    return Resource(manifest, unit_freq, maps, not_mappable, context_store, context_index)
