"""
Dependency-based relations
==========================

With annotated input the relation extractor stops guessing from
adjacency: a relation is a dependency edge between two lexical units
(direct link), or a path of exactly two edges (a link interrupted once,
e.g. a verb reaching its object's modifier).
"""

import tempfile
from pathlib import Path

from lexatlas import (
    ANNOTATED_FORMAT,
    BuildConfig,
    FilterConfig,
    Mode,
    RelationKind,
    build_resource,
    extract_syntactic,
    load_corpus,
    normalize_corpus,
)

# Six-column blocks: ID, FORM, LEMMA, UPOS, HEAD, DEPREL.  Three sentence
# shapes, repeated to give the statistics something to count.
SENTENCES = {
    "sac_lourd": """\
1\tIl\til\tPRON\t2\tnsubj
2\tporte\tporter\tVERB\t0\troot
3\tun\tun\tDET\t4\tdet
4\tsac\tsac\tNOUN\t2\tobj
5\tlourd\tlourd\tADJ\t4\tamod
""",
    "robe_rouge": """\
1\tElle\telle\tPRON\t2\tnsubj
2\tporte\tporter\tVERB\t0\troot
3\tune\tun\tDET\t4\tdet
4\trobe\trobe\tNOUN\t2\tobj
5\trouge\trouge\tADJ\t4\tamod
""",
    "sac_leger": """\
1\tIl\til\tPRON\t2\tnsubj
2\tporte\tporter\tVERB\t0\troot
3\tun\tun\tDET\t4\tdet
4\tsac\tsac\tNOUN\t2\tobj
5\tléger\tléger\tADJ\t4\tamod
""",
}

workdir = Path(tempfile.mkdtemp(prefix="lexatlas-demo-"))
corpus_dir = workdir / "corpus"
corpus_dir.mkdir()
blocks = [SENTENCES["sac_lourd"], SENTENCES["robe_rouge"], SENTENCES["sac_leger"]] * 3
(corpus_dir / "porter.tsv").write_text("\n".join(blocks), encoding="utf-8")

docs = load_corpus(corpus_dir, ANNOTATED_FORMAT)

# First, the raw relations of a single sentence.  "porte -> sac" and
# "sac -> lourd" are direct dependency edges; "porte ... lourd" is the
# two-edge path through sac.
first_sentence_docs = normalize_corpus([docs[0]])
for r in extract_syntactic(first_sentence_docs):
    if r.ctx_id != 0:
        continue
    tag = "direct" if r.kind is RelationKind.SYN_PRIMARY else "two-step"
    print(f"  {tag:8s} {r.a.key} -- {r.b.key}")
print()

# Then the full pipeline in syntactic mode.
config = BuildConfig(
    mode=Mode.SYNTACTIC,
    filter=FilterConfig(stop_top_k=0, context_quantile=1.0, min_pair_count=1, reciprocal_filter=False),
)
resource = build_resource(docs, config)
porter = resource.resolve("porter")
m = resource.maps[porter]
print(f"{porter}: {len(m.cliques)} cliques from dependency company")
for q in m.cliques:
    print(f"  clique {q.clique_id}: {', '.join(str(u) for u in q.members)}")
