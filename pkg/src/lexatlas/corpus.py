"""Corpus ingestion: plain-text segmentation and annotated (CoNLL-like) parsing.

Plain text is split with deliberately simple rules (terminal punctuation
followed by whitespace and a capital, whitespace tokenization with
punctuation detached); anything better should come in as pre-annotated
input, where sentence boundaries and token analyses are explicit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

from .errors import CorpusError
from .morpho import POSTag

ROOT = -1  # head marker for the dependency root

PLAIN_FORMAT = "plain"
ANNOTATED_FORMAT = "annotated"

_PUNCT_CHARS = set(".,;:!?()[]{}<>\"'«»“”‘’—–-…/")
_TERMINAL_RE = re.compile(r"[.!?]+")
_CHUNK_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Annotation:
    lemma: str
    pos: POSTag
    head: int | None = None  # token position, or ROOT
    deprel: str | None = None


@dataclass(frozen=True)
class Token:
    surface: str
    position: int
    span: tuple[int, int] | None = None  # offsets into the document text
    annotation: Annotation | None = None


@dataclass(frozen=True)
class Sentence:
    ctx_id: int
    tokens: tuple[Token, ...]
    char_span: tuple[int, int]


@dataclass(frozen=True)
class Document:
    doc_id: str
    source_path: str
    sentences: tuple[Sentence, ...]
    text: str | None = None


def _trim_span(text: str, start: int, end: int) -> tuple[int, int]:
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    return start, end


def _is_single_capital_abbrev(text: str, punct_start: int, punct: str) -> bool:
    # "M. Dupont": a lone capital before the period marks an abbreviation.
    if punct != ".":
        return False
    i = punct_start
    if i == 0:
        return False
    prev = text[i - 1]
    if not (prev.isalpha() and prev.isupper()):
        return False
    if i >= 2 and text[i - 2].isalnum():
        return False
    return True


def _sentence_spans(text: str) -> list[tuple[int, int]]:
    spans = []
    start = 0
    n = len(text)
    for m in _TERMINAL_RE.finditer(text):
        end = m.end()
        j = end
        while j < n and text[j].isspace():
            j += 1
        if j >= n or j == end:
            continue  # tail handled below; no whitespace means no boundary
        if not text[j].isupper():
            continue
        if _is_single_capital_abbrev(text, m.start(), m.group()):
            continue
        s, e = _trim_span(text, start, end)
        if s < e:
            spans.append((s, e))
        start = j
    s, e = _trim_span(text, start, n)
    if s < e:
        spans.append((s, e))
    return spans


def _split_punct(chunk: str, offset: int) -> list[tuple[str, int, int]]:
    left: list[tuple[str, int, int]] = []
    right: list[tuple[str, int, int]] = []
    s, e = 0, len(chunk)
    while s < e and chunk[s] in _PUNCT_CHARS:
        left.append((chunk[s], offset + s, offset + s + 1))
        s += 1
    while e > s and chunk[e - 1] in _PUNCT_CHARS:
        right.append((chunk[e - 1], offset + e - 1, offset + e))
        e -= 1
    middle = [(chunk[s:e], offset + s, offset + e)] if e > s else []
    return left + middle + list(reversed(right))


def segment_plain(text: str) -> list[Sentence]:
    """Split raw UTF-8 text into sentences of whitespace/punctuation tokens.

    Sentence ids are local (0-based); loaders renumber them globally.
    """
    sentences: list[Sentence] = []
    for s, e in _sentence_spans(text):
        tokens: list[Token] = []
        for m in _CHUNK_RE.finditer(text, s, e):
            for surface, ts, te in _split_punct(m.group(), m.start()):
                tokens.append(Token(surface=surface, position=len(tokens), span=(ts, te)))
        if tokens:
            sentences.append(Sentence(ctx_id=len(sentences), tokens=tuple(tokens), char_span=(s, e)))
    return sentences


def parse_annotated(lines: Iterable[str], source: str = "<stream>") -> list[Sentence]:
    """Parse a 6-column stream (ID, FORM, LEMMA, UPOS, HEAD, DEPREL).

    Blank lines close a sentence, `#` lines are ignored, HEAD=0 is the
    root.  Char spans refer to the synthesized text produced by
    :func:`synthesized_text` (forms joined by spaces, sentences by
    newlines).
    """
    sentences: list[Sentence] = []
    block: list[tuple[int, list[str]]] = []
    offset = 0

    def flush() -> None:
        nonlocal offset
        if not block:
            return
        tokens: list[Token] = []
        heads_pending: list[tuple[int, int]] = []  # (lineno, raw head)
        pos_cursor = offset
        for idx, (lineno, cols) in enumerate(block):
            tid_raw, form, lemma, upos, head_raw, deprel = cols
            try:
                tid = int(tid_raw)
            except ValueError:
                raise CorpusError(f"{source}:{lineno}: non-integer ID {tid_raw!r}") from None
            if tid != idx + 1:
                raise CorpusError(f"{source}:{lineno}: ID {tid} out of sequence (expected {idx + 1})")
            try:
                head = int(head_raw)
            except ValueError:
                raise CorpusError(f"{source}:{lineno}: non-integer HEAD {head_raw!r}") from None
            heads_pending.append((lineno, head))
            span = (pos_cursor, pos_cursor + len(form))
            pos_cursor = span[1] + 1
            tokens.append(
                Token(
                    surface=form,
                    position=idx,
                    span=span,
                    annotation=Annotation(
                        lemma=form if lemma == "_" else lemma,
                        pos=POSTag.parse(upos),
                        head=None,  # filled below once the block size is known
                        deprel=None if deprel == "_" else deprel,
                    ),
                )
            )
        n = len(tokens)
        for idx, (lineno, head) in enumerate(heads_pending):
            if not 0 <= head <= n:
                raise CorpusError(f"{source}:{lineno}: HEAD {head} out of range for a {n}-token sentence")
            resolved = ROOT if head == 0 else head - 1
            tok = tokens[idx]
            tokens[idx] = replace(tok, annotation=replace(tok.annotation, head=resolved))
        start = offset
        end = tokens[-1].span[1]
        sentences.append(Sentence(ctx_id=len(sentences), tokens=tuple(tokens), char_span=(start, end)))
        offset = end + 1
        block.clear()

    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if line.startswith("#"):
            continue
        if not line.strip():
            flush()
            continue
        cols = line.split("\t")
        if len(cols) != 6:
            raise CorpusError(f"{source}:{lineno}: expected 6 tab-separated columns, got {len(cols)}")
        block.append((lineno, cols))
    flush()
    return sentences


def synthesized_text(sentences: Sequence[Sentence]) -> str:
    """Reconstruct the text annotated sentences' char spans refer to."""
    return "\n".join(" ".join(t.surface for t in s.tokens) for s in sentences)


def _read_text(path: Path) -> str:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path} is not valid UTF-8: {exc}") from exc


def load_corpus(root: str | Path, format: str = PLAIN_FORMAT) -> list[Document]:
    """Load every corpus file under `root` into Documents with global ctx ids.

    Plain corpora are `*.txt`, annotated ones `*.tsv`; files are processed
    in lexicographic order of their relative paths so repeated runs yield
    identical structures.
    """
    rootp = Path(root)
    if not rootp.is_dir():
        raise CorpusError(f"corpus directory not found: {rootp}")
    if format == PLAIN_FORMAT:
        suffix = "*.txt"
    elif format == ANNOTATED_FORMAT:
        suffix = "*.tsv"
    else:
        raise ValueError(f"unknown corpus format {format!r}")

    paths = sorted(rootp.rglob(suffix), key=lambda p: p.relative_to(rootp).as_posix())
    docs: list[Document] = []
    next_ctx = 0
    seen_ids: set[str] = set()
    for path in paths:
        rel = path.relative_to(rootp)
        doc_id = rel.with_suffix("").as_posix()
        if doc_id in seen_ids:
            raise CorpusError(f"duplicate document id {doc_id!r}")
        seen_ids.add(doc_id)
        text = _read_text(path)
        if format == PLAIN_FORMAT:
            local = segment_plain(text)
            doc_text = text
        else:
            local = parse_annotated(text.splitlines(keepends=True), source=str(path))
            doc_text = synthesized_text(local)
        renumbered = tuple(replace(s, ctx_id=next_ctx + i) for i, s in enumerate(local))
        next_ctx += len(renumbered)
        docs.append(Document(doc_id=doc_id, source_path=str(path), sentences=renumbered, text=doc_text))
    return docs


def corpus_fingerprint(docs: Sequence[Document]) -> str:
    """Stable sha256 over document ids and contents."""
    import hashlib

    h = hashlib.sha256()
    for doc in docs:
        h.update(doc.doc_id.encode("utf-8"))
        h.update(b"\x00")
        h.update((doc.text or "").encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()
