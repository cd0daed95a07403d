"""
Build a semantic map for an ambiguous word
==========================================

"avocat" is lawyer or fruit depending on company.  We feed a dozen
sentences to the pipeline and watch the two senses come apart as two
groups of cliques on the first factor axis.
"""

import tempfile
from pathlib import Path

from lexatlas import (
    BuildConfig,
    FilterConfig,
    Mode,
    build_resource,
    load_corpus,
    load_lexicon,
)

# A miniature corpus: six courtroom sentences, six kitchen sentences.
CORPUS = """\
Un avocat défend un client devant le tribunal. Le tribunal écoute un
avocat célèbre. Un avocat prépare le procès avec le client. Le juge
interroge un avocat devant le tribunal. Un avocat plaide au procès.
Le client remercie un avocat après le procès. Un avocat mûr parfume
la salade. La salade verte accompagne un avocat. Un avocat bien mûr
se coupe facilement. Le cuisinier coupe un avocat pour la salade.
Un avocat onctueux enrichit la sauce. La sauce verte contient un
avocat mûr.
"""

# Plain text knows nothing about parts of speech, so a small lexicon
# tells the normalizer which words are grammatical glue (dropped) and
# which lemmas hide behind inflected forms.
LEXICON = """\
un\tun\tDET
une\tun\tDET
le\tle\tDET
la\tle\tDET
les\tle\tDET
devant\tdevant\tADP
avec\tavec\tADP
après\taprès\tADP
au\tà\tADP
pour\tpour\tADP
se\tse\tPRON
bien\tbien\tADV
facilement\tfacilement\tADV
avocat\tavocat\tNOUN
client\tclient\tNOUN
tribunal\ttribunal\tNOUN
juge\tjuge\tNOUN
procès\tprocès\tNOUN
salade\tsalade\tNOUN
sauce\tsauce\tNOUN
cuisinier\tcuisinier\tNOUN
défend\tdéfendre\tVERB
écoute\técouter\tVERB
prépare\tpréparer\tVERB
interroge\tinterroger\tVERB
plaide\tplaider\tVERB
remercie\tremercier\tVERB
parfume\tparfumer\tVERB
accompagne\taccompagner\tVERB
coupe\tcouper\tVERB
enrichit\tenrichir\tVERB
contient\tcontenir\tVERB
célèbre\tcélèbre\tADJ
mûr\tmûr\tADJ
vert\tvert\tADJ
verte\tvert\tADJ
onctueux\tonctueux\tADJ
"""

workdir = Path(tempfile.mkdtemp(prefix="lexatlas-demo-"))
(workdir / "corpus").mkdir()
(workdir / "corpus" / "cuisine_et_justice.txt").write_text(CORPUS, encoding="utf-8")

docs = load_corpus(workdir / "corpus")
lexicon = load_lexicon(LEXICON.splitlines(), source="demo lexicon")

# Twelve sentences cannot feed a 500-word stoplist or a 5% quantile cut,
# so the frequency filters are opened up; min_pair_count=2 still drops
# one-off neighbors.
config = BuildConfig(
    mode=Mode.SENTENCE,
    filter=FilterConfig(stop_top_k=0, context_quantile=1.0, min_pair_count=2, reciprocal_filter=True),
)
resource = build_resource(docs, config, lexicon)

print(f"corpus: {resource.manifest['n_contexts']} sentences,"
      f" {resource.manifest['vocabulary_size']} lexical units")
print(f"mapped: {resource.manifest['mapped']}, not mappable: {resource.manifest['not_mappable']}")
print()

# The map of "avocat": each clique is a minimal sense unit, each row of
# the correspondence analysis a point on the map.
avocat = resource.resolve("avocat")
m = resource.maps[avocat]
print(f"{avocat}: {len(m.cliques)} cliques, {len(m.clusters)} clusters,"
      f" first axis carries {m.ca.inertia_share[0]:.0%} of the inertia")
for q in m.cliques:
    row = m.ca.row_ids.index(q.clique_id)
    x = m.ca.row_coords[row, 0]
    members = ", ".join(str(u) for u in q.members)
    print(f"  clique {q.clique_id}: x1 = {x:+.3f}  [{members}]")

print()
print("clusters at the default cut (fine sense units):")
for c in m.clusters:
    label = ", ".join(u.key for u in c.label)
    print(f"  cluster {c.cluster_id}: cliques {list(c.clique_ids)} -> {label}")

# The default cut (a quarter of the map diameter) is deliberately fine.
# Cutting coarser groups the kitchen cliques into one sense while the
# courtroom cliques keep their distance.
from lexatlas import cluster_map

print()
print("clusters at a coarser cut (0.6 of the diameter):")
for c in cluster_map(m, linkage_threshold=0.6, unit_freq=resource.unit_freq):
    label = ", ".join(u.key for u in c.label)
    print(f"  cluster {c.cluster_id}: cliques {list(c.clique_ids)} -> {label}")
