"""
The read-only HTTP API
======================

A resource serves itself over four GET endpoints.  The numbers on the
wire are exactly the numbers in the persisted map files, so any client
sees the same map the library computed.
"""

import json
import urllib.request

from demo_corpus import COURTROOM, KITCHEN, build

from lexatlas import start_background

resource, _ = build(COURTROOM, KITCHEN)
httpd, port = start_background(resource, port=0)
base = f"http://127.0.0.1:{port}"
print(f"serving on {base} (ephemeral port)")


def get(path):
    with urllib.request.urlopen(base + path, timeout=10) as r:
        return json.loads(r.read())


try:
    words = get("/api/words?prefix=a&limit=5")
    print()
    print("GET /api/words?prefix=a&limit=5")
    for w in words["words"]:
        flag = "mapped" if w["mapped"] else "not mapped"
        print(f"  {w['key']}/{w['pos']}  freq {w['freq']}  ({flag})")

    doc = get("/api/map/avocat")
    print()
    print("GET /api/map/avocat")
    print(f"  axes {doc['axes']}, {len(doc['points'])} points,"
          f" inertia on axis 1: {doc['inertia_share'][0]:.0%}")
    for p in doc["points"][:3]:
        print(f"  clique {p['clique']} at ({p['x']:+.3f}, {p['y']:+.3f}), {p['size']} members")

    ctxs = get(f"/api/contexts/avocat/{doc['points'][0]['clique']}")
    print()
    print(f"GET /api/contexts/avocat/{doc['points'][0]['clique']}")
    for c in ctxs["contexts"][:2]:
        print(f"  #{c['ctx_id']}: {' '.join(c['text'].split())}")
finally:
    httpd.shutdown()
print()
print("server stopped")
