"""
Sense-indexed concordance and static exports
============================================

A clique is attested by specific sentences.  The context index answers
"show me the sentences behind this sense unit", and the renderer turns
the whole map into an SVG scatter plus a raw coordinate TSV.
"""

from demo_corpus import COURTROOM, KITCHEN, build

from lexatlas import coords_tsv, lookup_contexts, render_svg

resource, workdir = build(COURTROOM, KITCHEN)
avocat = resource.resolve("avocat")
m = resource.maps[avocat]

# Every clique points back at the sentences that attest it, and every
# one of those sentences contains the headword itself.
for q in m.cliques:
    members = ", ".join(u.key for u in q.members)
    print(f"clique {q.clique_id} [{members}]")
    for ctx_id, doc_id, text in lookup_contexts(resource, avocat, q.clique_id):
        print(f"  ({doc_id} #{ctx_id}) {' '.join(text.split())}")
    print()

# Static exports: an SVG you can open directly, and the projected
# coordinates as TSV for any downstream tool.
svg_path = workdir / "avocat.svg"
tsv_path = workdir / "avocat.tsv"
svg_path.write_text(render_svg(m), encoding="utf-8")
tsv_path.write_text(coords_tsv(m), encoding="utf-8")
print(f"wrote {svg_path}")
print(f"wrote {tsv_path}")
print()
print("first TSV rows:")
for line in coords_tsv(m).splitlines()[:6]:
    print(f"  {line}")
