"""Read-only HTTP API over a loaded resource.

Endpoints: /api/manifest, /api/words, /api/map/{word}, and
/api/contexts/{word}/{clique}.  The resource is immutable after load, so
the threading server needs no locking, responses are pure functions of
the query, and every number sent out is the same 12-significant-digit
value that sits in the persisted map files.
"""

from __future__ import annotations

import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, unquote, urlsplit

from .atlas import Resource, lookup_contexts
from .ca import project
from .errors import NotFoundError
from .morpho import LexicalUnit

log = logging.getLogger(__name__)

API_VERSION = 1


class ApiError(Exception):
    def __init__(self, status: int, payload: dict) -> None:
        super().__init__(payload.get("error", "error"))
        self.status = status
        self.payload = payload


def _bad_request(message: str) -> ApiError:
    return ApiError(400, {"error": "bad_request", "message": message})


def _int_param(params: dict, name: str, default: int, minimum: int = 1) -> int:
    raw = params.get(name, [None])[0]
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise _bad_request(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise _bad_request(f"{name} must be >= {minimum}")
    return value


def _resolve(res: Resource, raw_word: str, params: dict) -> LexicalUnit:
    pos = params.get("pos", [None])[0]
    try:
        return res.resolve(unquote(raw_word), pos)
    except NotFoundError as exc:
        raise ApiError(404, {"error": "not_found", "message": str(exc)}) from None


def map_document(res: Resource, w: LexicalUnit, k1: int, k2: int) -> dict:
    """The JSON map shape shared by the API and its clients."""
    m = res.maps[w]
    proj = project(m.ca, k1, k2)
    row_pos = {qid: i for i, qid in enumerate(m.ca.row_ids)}

    points = []
    for q in m.cliques:
        if q.clique_id not in row_pos:
            continue
        x, y = proj.points[row_pos[q.clique_id]]
        points.append(
            {
                "clique": q.clique_id,
                "x": float(x),
                "y": float(y),
                "size": len(q.members),
                "members": [[u.key, u.pos.value] for u in q.members],
            }
        )
    labels = [
        {"key": u.key, "pos": u.pos.value, "x": float(x), "y": float(y), "freq": res.unit_freq.get(u, 0)}
        for u, (x, y) in zip(m.ca.col_units, proj.labels)
    ]
    clusters = [
        {"id": c.cluster_id, "cliques": list(c.clique_ids), "label": [[u.key, u.pos.value] for u in c.label]}
        for c in m.clusters
    ]
    return {
        "version": API_VERSION,
        "word": {"key": w.key, "pos": w.pos.value, "freq": res.unit_freq.get(w, 0)},
        "axes": [k1, k2],
        "n_axes": m.ca.n_axes,
        "singular_values": m.ca.singular_values.tolist(),
        "inertia_total": m.ca.inertia_total,
        "inertia_share": m.ca.inertia_share.tolist(),
        "capped": m.capped,
        "points": points,
        "labels": labels,
        "clusters": clusters,
    }


def _handle(res: Resource, path: str, params: dict) -> dict:
    segs = [s for s in path.split("/") if s]
    if not segs or segs[0] != "api":
        raise ApiError(404, {"error": "not_found", "message": f"no route {path}"})

    if segs[1:] == ["manifest"]:
        return {"version": API_VERSION, "manifest": res.manifest}

    if segs[1:] == ["words"]:
        prefix = unquote(params.get("prefix", [""])[0])
        limit = _int_param(params, "limit", 50, minimum=1)
        words = [
            {
                "key": u.key,
                "pos": u.pos.value,
                "freq": res.unit_freq[u],
                "mapped": u in res.maps,
            }
            for u in res.search(prefix, limit)
        ]
        return {"version": API_VERSION, "words": words}

    if len(segs) == 3 and segs[1] == "map":
        w = _resolve(res, segs[2], params)
        if w in res.not_mappable:
            raise ApiError(404, {"error": "not_mappable", "reason": res.not_mappable[w]})
        if w not in res.maps:
            raise ApiError(404, {"error": "not_found", "message": f"no map for {w}"})
        k1 = _int_param(params, "k1", 1)
        k2 = _int_param(params, "k2", 2)
        if k1 == k2:
            raise _bad_request("k1 and k2 must differ")
        return map_document(res, w, k1, k2)

    if len(segs) == 4 and segs[1] == "contexts":
        w = _resolve(res, segs[2], params)
        try:
            clique_id = int(segs[3])
        except ValueError:
            raise _bad_request(f"clique id must be an integer, got {segs[3]!r}") from None
        try:
            rows = lookup_contexts(res, w, clique_id)
        except NotFoundError as exc:
            raise ApiError(404, {"error": "not_found", "message": str(exc)}) from None
        return {
            "version": API_VERSION,
            "word": {"key": w.key, "pos": w.pos.value},
            "clique": clique_id,
            "contexts": [{"ctx_id": c, "doc_id": d, "text": t} for c, d, t in rows],
        }

    raise ApiError(404, {"error": "not_found", "message": f"no route {path}"})


class ResourceHandler(BaseHTTPRequestHandler):
    resource: Resource  # set by make_server on the subclass

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False, sort_keys=True).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self) -> None:  # noqa: N802 (http.server API)
        url = urlsplit(self.path)
        try:
            payload = _handle(self.resource, url.path, parse_qs(url.query))
            self._send(200, payload)
        except ApiError as exc:
            self._send(exc.status, exc.payload)
        except Exception as exc:  # pragma: no cover (defensive)
            log.exception("unhandled error on %s", self.path)
            self._send(500, {"error": "internal", "message": str(exc)})

    def log_message(self, fmt: str, *args) -> None:
        log.debug("%s " + fmt, self.client_address[0], *args)


def make_server(resource: Resource, port: int = 8737, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Bind (port 0 picks a free one); caller decides how to run it."""
    handler = type("BoundHandler", (ResourceHandler,), {"resource": resource})
    return ThreadingHTTPServer((host, port), handler)


def serve(resource: Resource, port: int = 8737, host: str = "127.0.0.1") -> None:
    httpd = make_server(resource, port, host)
    log.info("serving on http://%s:%d/", *httpd.server_address[:2])
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()


def start_background(resource: Resource, port: int = 0, host: str = "127.0.0.1") -> tuple[ThreadingHTTPServer, int]:
    """For tests and embedding: serve on a daemon thread, return bound port."""
    httpd = make_server(resource, port, host)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    return httpd, httpd.server_address[1]
