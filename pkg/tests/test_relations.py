import logging

import pytest
from helpers import U, ndoc

from lexatlas import (
    FilterConfig,
    NormalizationPolicy,
    POSTag,
    RelationError,
    RelationInstance,
    RelationKind,
    contexonyms,
    corpus_stats,
    extract_sentence,
    extract_syntactic,
    extract_window,
    load_corpus,
    load_synonym_pairs,
    normalize_corpus,
    parse_annotated,
)
from lexatlas.morpho import NormalizedDoc, NormalizedSentence
from lexatlas.relations import _quantile_threshold, canonical_pair


def pairs(instances):
    return [(r.a.key, r.b.key) for r in instances]


class TestRelationInstance:
    def test_canonical_order(self):
        r = RelationInstance(U("zebra"), U("ant"), RelationKind.SENTENCE, 0)
        assert (r.a.key, r.b.key) == ("ant", "zebra")

    def test_self_pair_rejected(self):
        with pytest.raises(ValueError, match="self-relation"):
            RelationInstance(U("a"), U("a"), RelationKind.SENTENCE, 0)

    def test_symmetric_equality(self):
        r1 = RelationInstance(U("a"), U("b"), RelationKind.WINDOW, 3)
        r2 = RelationInstance(U("b"), U("a"), RelationKind.WINDOW, 3)
        assert r1 == r2


class TestExtractWindow:
    def test_single_unit_document(self):
        assert extract_window([ndoc([["a"]])]) == []

    def test_width_two_adjacency(self):
        out = extract_window([ndoc([["a", "b", "c"]])], width=2)
        assert pairs(out) == [("a", "b"), ("b", "c")]

    def test_duplicate_unit_counted_per_left_position(self):
        out = extract_window([ndoc([["a", "b", "a"]])], width=3)
        assert pairs(out) == [("a", "b"), ("a", "b")]

    def test_window_crosses_sentences_within_document(self):
        out = extract_window([ndoc([["a"], ["b"]])], width=2)
        assert pairs(out) == [("a", "b")]
        assert out[0].ctx_id == 0  # sentence of the left member

    def test_window_does_not_cross_documents(self):
        out = extract_window([ndoc([["a"]]), ndoc([["b"]], doc_id="e", start_ctx=1)], width=10)
        assert out == []

    def test_width_below_two_rejected(self):
        with pytest.raises(ValueError):
            extract_window([], width=1)

    def test_kind_and_ctx(self):
        out = extract_window([ndoc([["a", "b"], ["c"]])], width=3)
        assert all(r.kind is RelationKind.WINDOW for r in out)
        assert {(r.a.key, r.b.key, r.ctx_id) for r in out} == {("a", "b", 0), ("a", "c", 0), ("b", "c", 0)}


class TestExtractSentence:
    def test_singleton_sentence(self):
        assert extract_sentence([ndoc([["a"]])]) == []

    def test_three_units(self):
        out = extract_sentence([ndoc([["a", "b", "c"]])])
        assert pairs(out) == [("a", "b"), ("a", "c"), ("b", "c")]

    def test_duplicate_token_collapses(self):
        out = extract_sentence([ndoc([["a", "b", "a"]])])
        assert pairs(out) == [("a", "b")]

    def test_pairs_stay_within_sentence(self):
        out = extract_sentence([ndoc([["a", "b"], ["c", "d"]])])
        assert pairs(out) == [("a", "b"), ("c", "d")]
        assert [r.ctx_id for r in out] == [0, 1]

    def test_window_at_max_sentence_length_covers_sentence_pairs(self):
        docs = [ndoc([["a", "b", "c", "d"], ["e", "f"]])]
        sent_pairs = {r.pair for r in extract_sentence(docs)}
        window_pairs = {r.pair for r in extract_window(docs, width=4)}
        assert sent_pairs <= window_pairs


def _annotated_doc(tsv: str) -> NormalizedDoc:
    sentences = parse_annotated(tsv.splitlines(keepends=True))
    from lexatlas.corpus import Document
    from lexatlas.corpus import synthesized_text

    doc = Document(doc_id="d", source_path="d.tsv", sentences=tuple(sentences), text=synthesized_text(sentences))
    (ndoc_,) = normalize_corpus([doc])
    return ndoc_


ARC = """\
1\til\til\tPRON\t2\tnsubj
2\tdécrire\tdécrire\tVERB\t0\troot
3\tun\tun\tDET\t4\tdet
4\tarc\tarc\tNOUN\t2\tobj
5\tde\tde\tADP\t6\tcase
6\tcercle\tcercle\tNOUN\t4\tnmod
"""


class TestExtractSyntactic:
    def test_arc_de_cercle(self):
        out = extract_syntactic([_annotated_doc(ARC)])
        got = {(r.kind, r.a.key, r.b.key) for r in out}
        assert got == {
            (RelationKind.SYN_PRIMARY, "arc", "décrire"),
            (RelationKind.SYN_PRIMARY, "arc", "cercle"),
            (RelationKind.SYN_SECONDARY, "cercle", "décrire"),
        }

    def test_direct_link_only(self):
        tsv = "1\tdécrire\tdécrire\tVERB\t0\troot\n2\tun\tun\tDET\t3\tdet\n3\tcercle\tcercle\tNOUN\t1\tobj\n"
        out = extract_syntactic([_annotated_doc(tsv)])
        assert {(r.kind, r.a.key, r.b.key) for r in out} == {(RelationKind.SYN_PRIMARY, "cercle", "décrire")}

    def test_no_secondary_at_distance_three(self):
        # chain w <- x <- y <- z: w and z are three edges apart
        tsv = (
            "1\tw\tw\tNOUN\t0\troot\n"
            "2\tx\tx\tNOUN\t1\tdep\n"
            "3\ty\ty\tNOUN\t2\tdep\n"
            "4\tz\tz\tNOUN\t3\tdep\n"
        )
        out = extract_syntactic([_annotated_doc(tsv)])
        keys = {(r.kind.value, r.a.key, r.b.key) for r in out}
        assert ("SYN_SECONDARY", "w", "z") not in keys
        assert ("SYN_SECONDARY", "w", "y") in keys
        assert ("SYN_SECONDARY", "x", "z") in keys

    def test_secondary_through_stop_pos_intermediate(self):
        # parler <- de <- pluie: the preposition is dropped but still routes a path
        tsv = "1\tparler\tparler\tVERB\t0\troot\n2\tde\tde\tADP\t1\tcase\n3\tpluie\tpluie\tNOUN\t2\tdep\n"
        out = extract_syntactic([_annotated_doc(tsv)])
        assert {(r.kind, r.a.key, r.b.key) for r in out} == {(RelationKind.SYN_SECONDARY, "parler", "pluie")}

    def test_primary_suppresses_secondary_for_same_pair(self):
        # a <- b and a two-step path a..b in the same sentence: only the primary stays
        tsv = (
            "1\ta\ta\tNOUN\t0\troot\n"
            "2\tb\tb\tNOUN\t1\tdep\n"
            "3\tmid\tmid\tNOUN\t1\tdep\n"
            "4\tb\tb\tNOUN\t3\tdep\n"
        )
        out = extract_syntactic([_annotated_doc(tsv)])
        kinds = {(r.kind.value, r.a.key, r.b.key) for r in out}
        assert ("SYN_PRIMARY", "a", "b") in kinds
        assert ("SYN_SECONDARY", "a", "b") not in kinds

    def test_missing_heads_error_names_context(self):
        doc = ndoc([["a", "b"]])  # plain-mode doc, no heads
        with pytest.raises(RelationError, match="context 0"):
            extract_syntactic([doc])


class TestLoadSynonymPairs:
    def test_three_columns(self):
        out = load_synonym_pairs(["type\tbonhomme\tlarousse\n"])
        (r,) = out
        assert (r.a.key, r.b.key) == ("bonhomme", "type")
        assert r.a.pos is POSTag.X
        assert r.kind is RelationKind.SYNONYM
        assert r.ctx_id == 1

    def test_pos_columns(self):
        (r,) = load_synonym_pairs(["type\tbonhomme\tlarousse\tNOUN\n"])
        assert r.a.pos is POSTag.NOUN and r.b.pos is POSTag.NOUN
        (r2,) = load_synonym_pairs(["bleu\tbleuir\tx\tADJ\tVERB\n"])
        assert {r2.a.pos, r2.b.pos} == {POSTag.ADJ, POSTag.VERB}

    def test_self_pair_skipped_with_warning(self, caplog):
        with caplog.at_level(logging.WARNING):
            out = load_synonym_pairs(["type\ttype\tx\n"])
        assert out == []
        assert "self-pair" in caplog.text

    def test_empty_stream(self):
        assert load_synonym_pairs([]) == []

    def test_malformed_line(self):
        with pytest.raises(RelationError, match=r"s:1: expected 3 to 5"):
            load_synonym_pairs(["only_one_column\n"], source="s")
        with pytest.raises(RelationError, match=r"s:1: empty word"):
            load_synonym_pairs(["\tb\tsrc\n"], source="s")


class TestCorpusStats:
    def test_empty(self):
        stats = corpus_stats([], [ndoc([["a", "b"]])])
        assert stats.pair_freq == {}
        assert stats.n_contexts == 1
        assert stats.unit_freq == {U("a"): 1, U("b"): 1}

    def test_per_context_dedup(self):
        # (a,b) attested twice in ctx 3 counts once
        inst = [
            RelationInstance(U("a"), U("b"), RelationKind.WINDOW, 3),
            RelationInstance(U("b"), U("a"), RelationKind.WINDOW, 3),
        ]
        stats = corpus_stats(inst)
        assert stats.pair_count(U("a"), U("b")) == 1

    def test_distinct_contexts_counted(self):
        inst = [
            RelationInstance(U("a"), U("b"), RelationKind.WINDOW, 3),
            RelationInstance(U("a"), U("b"), RelationKind.WINDOW, 7),
        ]
        stats = corpus_stats(inst)
        assert stats.pair_count(U("b"), U("a")) == 2
        assert stats.pair_contexts(U("a"), U("b")) == frozenset({3, 7})

    def test_mixed_kinds_rejected_except_syntactic(self):
        bad = [
            RelationInstance(U("a"), U("b"), RelationKind.WINDOW, 0),
            RelationInstance(U("a"), U("c"), RelationKind.SENTENCE, 0),
        ]
        with pytest.raises(ValueError, match="mixed relation kinds"):
            corpus_stats(bad)
        ok = [
            RelationInstance(U("a"), U("b"), RelationKind.SYN_PRIMARY, 0),
            RelationInstance(U("a"), U("c"), RelationKind.SYN_SECONDARY, 0),
        ]
        assert corpus_stats(ok).kind is RelationKind.SYN_PRIMARY

    def test_unit_ctxs_from_corpus(self):
        stats = corpus_stats([], [ndoc([["a", "b"], ["a"]])])
        assert stats.unit_ctxs[U("a")] == frozenset({0, 1})
        assert stats.unit_freq[U("a")] == 2

    def test_top_units_tie_break(self):
        docs = [ndoc([["b", "a", "c"]] * 3)]
        stats = corpus_stats(extract_sentence(docs), docs)
        # all frequency 3: lexicographically smallest keys removed first
        assert stats.top_units(1) == {U("a")}
        assert stats.top_units(2) == {U("a"), U("b")}


def _stats_for(sentence_rows):
    docs = [ndoc(sentence_rows)]
    return corpus_stats(extract_sentence(docs), docs)


class TestQuantileThreshold:
    def test_rank_rule(self):
        assert _quantile_threshold([10, 5, 1], 0.34) == 5  # k = ceil(1.02) = 2
        assert _quantile_threshold([10, 5, 1], 0.05) == 10  # k = 1
        assert _quantile_threshold([10, 5, 1], 1.0) == 1  # keep everything

    def test_at_least_one(self):
        assert _quantile_threshold([7], 0.0001) == 7


class TestContexonyms:
    def test_single_partner_always_kept(self):
        stats = _stats_for([["w", "u"]] * 5)
        cfg = FilterConfig(stop_top_k=0, context_quantile=0.05, min_pair_count=2, reciprocal_filter=True)
        assert contexonyms(U("w"), stats, cfg) == {U("u")}

    def test_unseen_word_empty(self):
        stats = _stats_for([["a", "b"]])
        cfg = FilterConfig(stop_top_k=0, min_pair_count=1)
        assert contexonyms(U("zzz"), stats, cfg) == set()

    def test_stoplist_removes_top_partner(self):
        rows = [["w", "top"]] * 4 + [["w", "rare"], ["w", "rare"], ["top", "x"], ["top", "y"], ["top", "z"]]
        stats = _stats_for(rows)
        cfg0 = FilterConfig(stop_top_k=0, context_quantile=1.0, min_pair_count=1, reciprocal_filter=False)
        cfg1 = FilterConfig(stop_top_k=1, context_quantile=1.0, min_pair_count=1, reciprocal_filter=False)
        assert U("top") in contexonyms(U("w"), stats, cfg0)
        assert U("top") not in contexonyms(U("w"), stats, cfg1)

    def test_min_pair_count(self):
        rows = [["w", "often"]] * 3 + [["w", "once"]]
        stats = _stats_for(rows)
        cfg = FilterConfig(stop_top_k=0, context_quantile=1.0, min_pair_count=2, reciprocal_filter=False)
        assert contexonyms(U("w"), stats, cfg) == {U("often")}

    def test_quantile_keeps_top_fraction_with_ties(self):
        rows = [["w", "a"]] * 5 + [["w", "b"]] * 5 + [["w", "c"]] * 2
        stats = _stats_for(rows)
        cfg = FilterConfig(stop_top_k=0, context_quantile=0.34, min_pair_count=1, reciprocal_filter=False)
        # counts 5,5,2; k = ceil(.34*3) = 2 -> threshold 5, both ties kept
        assert contexonyms(U("w"), stats, cfg) == {U("a"), U("b")}

    def test_reciprocal_filter(self):
        # u is w's only partner, but w is a rare partner of u.
        rows = [["w", "u"]] * 5
        for i in range(9):
            rows.extend([["u", f"x{i}"]] * 10)
        stats = _stats_for(rows)
        base = dict(stop_top_k=0, context_quantile=0.05, min_pair_count=2)
        on = FilterConfig(reciprocal_filter=True, **base)
        off = FilterConfig(reciprocal_filter=False, **base)
        assert contexonyms(U("w"), stats, on) == set()
        assert contexonyms(U("w"), stats, off) == {U("u")}

    def test_monotone_in_min_pair_count_and_quantile(self):
        rows = [["w", "a"]] * 6 + [["w", "b"]] * 4 + [["w", "c"]] * 2 + [["w", "d"]]
        stats = _stats_for(rows)
        previous = None
        for mpc in (1, 2, 3, 5, 7):
            cfg = FilterConfig(stop_top_k=0, context_quantile=1.0, min_pair_count=mpc, reciprocal_filter=False)
            current = contexonyms(U("w"), stats, cfg)
            if previous is not None:
                assert current <= previous
            previous = current
        previous = None
        for q in (1.0, 0.75, 0.5, 0.25, 0.05):
            cfg = FilterConfig(stop_top_k=0, context_quantile=q, min_pair_count=1, reciprocal_filter=False)
            current = contexonyms(U("w"), stats, cfg)
            if previous is not None:
                assert current <= previous
            previous = current


class TestDeterminism:
    def test_identical_corpus_identical_instances(self):
        rows = [["b", "a", "c"], ["c", "a"], ["d", "b", "a"]]
        out1 = extract_window([ndoc(rows)], width=3)
        out2 = extract_window([ndoc(rows)], width=3)
        assert out1 == out2
        out3 = extract_sentence([ndoc(rows)])
        out4 = extract_sentence([ndoc(rows)])
        assert out3 == out4

    def test_instances_sorted_by_ctx_then_pair(self):
        rows = [["z", "y"], ["b", "a"]]
        out = extract_sentence([ndoc(rows)])
        keys = [(r.ctx_id, r.a, r.b) for r in out]
        assert keys == sorted(keys)


def test_filter_config_mode_defaults():
    prox = FilterConfig.for_mode(RelationKind.SENTENCE)
    assert (prox.min_pair_count, prox.reciprocal_filter) == (2, True)
    syn = FilterConfig.for_mode(RelationKind.SYN_PRIMARY)
    assert (syn.min_pair_count, syn.reciprocal_filter) == (1, False)
    lst = FilterConfig.for_mode(RelationKind.SYNONYM)
    assert (lst.min_pair_count, lst.reciprocal_filter) == (1, False)
    assert prox.stop_top_k == syn.stop_top_k == 500
    assert prox.context_quantile == syn.context_quantile == 0.05


def test_filter_config_validation():
    with pytest.raises(ValueError):
        FilterConfig(context_quantile=0.0)
    with pytest.raises(ValueError):
        FilterConfig(context_quantile=1.5)
    with pytest.raises(ValueError):
        FilterConfig(stop_top_k=-1)
    with pytest.raises(ValueError):
        FilterConfig(min_pair_count=0)
