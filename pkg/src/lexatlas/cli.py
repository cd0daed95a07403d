"""Command line entry points: build, map, contexts, compare, serve.

Exit codes: 0 success, 1 unknown word or unmappable word, 2 bad
invocation or build/environment failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from .atlas import (
    Resource,
    build_resource,
    build_synonym_resource,
    compare_resources,
    load_resource,
    lookup_contexts,
    save_resource,
)
from .ca import Weighting
from .config import BuildConfig, Mode
from .corpus import ANNOTATED_FORMAT, PLAIN_FORMAT, load_corpus
from .errors import LexAtlasError, NotFoundError
from .morpho import LexicalUnit, load_lexicon
from .relations import FilterConfig
from .render import coords_tsv, render_svg
from .server import serve

log = logging.getLogger(__name__)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="atlas", description="Corpus-driven semantic maps")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a resource from a corpus or synonym list")
    b.add_argument("--corpus", help="corpus directory (*.txt, or *.tsv with --annotated)")
    b.add_argument("--out", required=True, help="output resource directory")
    b.add_argument("--mode", required=True, choices=[m.value for m in Mode])
    b.add_argument("--annotated", action="store_true", help="read 6-column annotated *.tsv files")
    b.add_argument("--window", type=int, default=50, metavar="N")
    b.add_argument("--stop-top", type=int, default=None, metavar="N", help="frequency stoplist size")
    b.add_argument("--context-quantile", type=float, default=None, metavar="F")
    b.add_argument("--min-pair", type=int, default=None, metavar="N")
    b.add_argument("--reciprocal", choices=["on", "off"], default=None)
    b.add_argument("--edge-min", type=int, default=1, metavar="N")
    b.add_argument("--min-freq", type=int, default=3, metavar="N")
    b.add_argument("--max-cliques", type=int, default=10000, metavar="N")
    b.add_argument("--max-clique-size", type=int, default=64, metavar="N")
    b.add_argument("--weighting", choices=[w.value for w in Weighting], default="binary")
    b.add_argument("--lexicon", metavar="FILE", help="3-column TSV morphological lexicon")
    b.add_argument("--synonyms", metavar="FILE", help="synonym pair TSV (synonyms mode)")

    m = sub.add_parser("map", help="render one word's map to SVG and TSV")
    m.add_argument("word")
    m.add_argument("--resource", required=True)
    m.add_argument("--pos", default=None)
    m.add_argument("--axes", default="1,2", help="two 1-based axis numbers, e.g. 1,3")
    m.add_argument("--svg", metavar="FILE", help="default WORD.svg")
    m.add_argument("--tsv", metavar="FILE", help="default WORD.tsv")

    c = sub.add_parser("contexts", help="print the sentences behind one clique")
    c.add_argument("word")
    c.add_argument("clique", type=int)
    c.add_argument("--resource", required=True)
    c.add_argument("--pos", default=None)

    d = sub.add_parser("compare", help="compare one word across two resources")
    d.add_argument("resource_a")
    d.add_argument("resource_b")
    d.add_argument("word")
    d.add_argument("--pos", default=None)

    s = sub.add_parser("serve", help="serve a resource over HTTP")
    s.add_argument("--resource", required=True)
    s.add_argument("--port", type=int, default=8737)
    s.add_argument("--host", default="127.0.0.1")

    return parser


def _filter_config(args: argparse.Namespace, cfg_mode: Mode) -> FilterConfig | None:
    overrides = {}
    if args.stop_top is not None:
        overrides["stop_top_k"] = args.stop_top
    if args.context_quantile is not None:
        overrides["context_quantile"] = args.context_quantile
    if args.min_pair is not None:
        overrides["min_pair_count"] = args.min_pair
    if args.reciprocal is not None:
        overrides["reciprocal_filter"] = args.reciprocal == "on"
    if not overrides:
        return None
    base = BuildConfig(mode=cfg_mode).filter
    return FilterConfig(
        stop_top_k=overrides.get("stop_top_k", base.stop_top_k),
        context_quantile=overrides.get("context_quantile", base.context_quantile),
        min_pair_count=overrides.get("min_pair_count", base.min_pair_count),
        reciprocal_filter=overrides.get("reciprocal_filter", base.reciprocal_filter),
    )


def _cmd_build(args: argparse.Namespace) -> int:
    mode = Mode(args.mode)
    started = time.monotonic()
    try:
        cfg = BuildConfig(
            mode=mode,
            window_width=args.window,
            filter=_filter_config(args, mode),
            edge_min=args.edge_min,
            min_freq=args.min_freq,
            max_cliques=args.max_cliques,
            max_clique_size=args.max_clique_size,
            weighting=Weighting(args.weighting),
        )
        if mode is Mode.SYNONYMS:
            if not args.synonyms:
                print("synonyms mode requires --synonyms FILE", file=sys.stderr)
                return 2
            path = Path(args.synonyms)
            if not path.is_file():
                print(f"synonym file not found: {path}", file=sys.stderr)
                return 2
            with path.open(encoding="utf-8") as fh:
                res = build_synonym_resource(fh, cfg, source=path.name)
        else:
            if not args.corpus:
                print("--corpus is required outside synonyms mode", file=sys.stderr)
                return 2
            if mode is Mode.SYNTACTIC and not args.annotated:
                print("syntactic mode requires annotated input (--annotated)", file=sys.stderr)
                return 2
            corpus_format = ANNOTATED_FORMAT if args.annotated else PLAIN_FORMAT
            docs = load_corpus(args.corpus, corpus_format)
            lexicon = None
            if args.lexicon:
                lex_path = Path(args.lexicon)
                if not lex_path.is_file():
                    print(f"lexicon file not found: {lex_path}", file=sys.stderr)
                    return 2
                with lex_path.open(encoding="utf-8") as fh:
                    lexicon = load_lexicon(fh, source=str(lex_path))
            res = build_resource(docs, cfg, lexicon)
        save_resource(res, args.out)
    except LexAtlasError as exc:
        print(f"build failed: {exc}", file=sys.stderr)
        return 2
    elapsed = time.monotonic() - started
    man = res.manifest
    print(
        f"vocabulary {man['vocabulary_size']}, eligible {man['eligible']}, "
        f"mapped {man['mapped']}, not mappable {man['not_mappable']}, {elapsed:.1f}s"
    )
    return 0


def _load(resource_dir: str) -> Resource:
    return load_resource(resource_dir)


def _resolve_word(res: Resource, key: str, pos: str | None) -> LexicalUnit | None:
    try:
        return res.resolve(key, pos)
    except NotFoundError:
        return None


def _suggest(res: Resource, key: str) -> list[str]:
    for cut in range(len(key), 0, -1):
        hits = sorted({u.key for u in res.search(key[:cut], limit=5)})
        if hits:
            return hits[:5]
    return []


def _cmd_map(args: argparse.Namespace) -> int:
    try:
        res = _load(args.resource)
    except LexAtlasError as exc:
        print(f"cannot load resource: {exc}", file=sys.stderr)
        return 2
    w = _resolve_word(res, args.word, args.pos)
    if w is None:
        hints = _suggest(res, args.word)
        extra = f" (nearby: {', '.join(hints)})" if hints else ""
        print(f"no map for {args.word!r}{extra}", file=sys.stderr)
        return 1
    if w in res.not_mappable:
        print(f"no map for {w}: {res.not_mappable[w]}", file=sys.stderr)
        return 1
    if w not in res.maps:
        print(f"no map for {w}", file=sys.stderr)
        return 1
    try:
        k1, k2 = (int(p) for p in args.axes.split(","))
    except ValueError:
        print(f"--axes expects two integers, got {args.axes!r}", file=sys.stderr)
        return 2
    m = res.maps[w]
    svg_path = Path(args.svg) if args.svg else Path(f"{w.key}.svg")
    tsv_path = Path(args.tsv) if args.tsv else Path(f"{w.key}.tsv")
    svg_path.write_text(render_svg(m, k1, k2), encoding="utf-8")
    tsv_path.write_text(coords_tsv(m, k1, k2), encoding="utf-8")
    print(f"wrote {svg_path} and {tsv_path}")
    return 0


def _cmd_contexts(args: argparse.Namespace) -> int:
    try:
        res = _load(args.resource)
    except LexAtlasError as exc:
        print(f"cannot load resource: {exc}", file=sys.stderr)
        return 2
    w = _resolve_word(res, args.word, args.pos)
    if w is None:
        print(f"unknown word {args.word!r}", file=sys.stderr)
        return 1
    try:
        rows = lookup_contexts(res, w, args.clique)
    except NotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    for ctx_id, doc_id, text in rows:
        # source sentences may wrap across lines; keep one row per context
        print(f"{ctx_id}\t{doc_id}\t{' '.join(text.split())}")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    try:
        res_a = _load(args.resource_a)
        res_b = _load(args.resource_b)
    except LexAtlasError as exc:
        print(f"cannot load resource: {exc}", file=sys.stderr)
        return 2
    w = _resolve_word(res_a, args.word, args.pos) or _resolve_word(res_b, args.word, args.pos)
    if w is None:
        print(f"unknown word {args.word!r} in both resources", file=sys.stderr)
        return 1
    try:
        report = compare_resources(res_a, res_b, w)
    except NotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    print(f"word {w}")
    print(f"clique jaccard {report.jaccard_cliques:.3f}")
    if report.one_sided:
        print(f"only mapped in resource {report.one_sided}")
    print(f"contexonyms only in A: {', '.join(sorted(str(u) for u in report.only_a)) or '-'}")
    print(f"contexonyms only in B: {', '.join(sorted(str(u) for u in report.only_b)) or '-'}")
    for qa, qb, overlap in report.best_match:
        print(f"clique {qa} ~ clique {qb} (overlap {overlap:.3f})")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    try:
        res = _load(args.resource)
    except LexAtlasError as exc:
        print(f"cannot load resource: {exc}", file=sys.stderr)
        return 2
    print(f"serving {args.resource} on http://{args.host}:{args.port}/")
    serve(res, args.port, args.host)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    handlers = {
        "build": _cmd_build,
        "map": _cmd_map,
        "contexts": _cmd_contexts,
        "compare": _cmd_compare,
        "serve": _cmd_serve,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
