"""
An atlas from synonym pairs
===========================

The relation does not have to come from a corpus: a dictionary's
synonym pairs work the same way.  Each pair line is its own context,
and "maison" splits into a building sense and a household sense.
"""

from lexatlas import BuildConfig, FilterConfig, Mode, build_synonym_resource, lookup_contexts

PAIRS = """\
maison\tdemeure\tdico-a
maison\trésidence\tdico-a
demeure\trésidence\tdico-a
maison\tfoyer\tdico-b
maison\tfamille\tdico-b
foyer\tfamille\tdico-b
maison\tdemeure\tdico-c
maison\tfoyer\tdico-c
"""

config = BuildConfig(
    mode=Mode.SYNONYMS,
    filter=FilterConfig(stop_top_k=0, context_quantile=1.0, min_pair_count=1, reciprocal_filter=False),
)
resource = build_synonym_resource(PAIRS.splitlines(), config, source="mini-dictionary")

maison = resource.resolve("maison")
m = resource.maps[maison]
print(f"{maison}: {len(m.cliques)} cliques")
for q in m.cliques:
    row = m.ca.row_ids.index(q.clique_id)
    x = float(m.ca.row_coords[row, 0])
    print(f"  clique {q.clique_id}: x1 = {x:+.3f}  {', '.join(u.key for u in q.members)}")

# The concordance degrades gracefully: contexts are the attesting lines.
print()
print("lines attesting clique 0:")
for _ctx, source, line in lookup_contexts(resource, maison, 0):
    print(f"  {source}: {line}")
