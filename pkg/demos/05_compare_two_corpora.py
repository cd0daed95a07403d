"""
Comparing a word across two corpora
===================================

Build the same word from two different corpora and diff its sense
inventory: which cliques persist, which contexonyms appear on one side
only.  Here corpus A only knows the courtroom "avocat"; corpus B adds
the kitchen.
"""

from demo_corpus import COURTROOM, KITCHEN, build

from lexatlas import compare_resources

resource_a, _ = build(COURTROOM)
resource_b, _ = build(COURTROOM, KITCHEN)

avocat = resource_a.resolve("avocat")
report = compare_resources(resource_a, resource_b, avocat)

print(f"word: {report.word}")
print(f"clique jaccard: {report.jaccard_cliques:.3f}")
print(f"contexonyms only in A: {', '.join(sorted(u.key for u in report.only_a)) or '-'}")
print(f"contexonyms only in B: {', '.join(sorted(u.key for u in report.only_b)) or '-'}")
print()
print("best-overlap matching of A's cliques onto B's:")
ma = resource_a.maps[avocat]
mb = resource_b.maps[resource_b.resolve("avocat")]
for qa_id, qb_id, overlap in report.best_match:
    a_members = ", ".join(u.key for u in ma.clique(qa_id).members)
    b_members = ", ".join(u.key for u in mb.clique(qb_id).members)
    print(f"  A#{qa_id} [{a_members}]  ->  B#{qb_id} [{b_members}]  (overlap {overlap:.2f})")
