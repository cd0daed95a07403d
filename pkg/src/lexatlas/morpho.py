"""Morphological normalization: tokens to lexical units.

Nouns and proper nouns keep their textual form (so "trottoir" and
"trottoirs" stay distinct units), every other category is reduced to its
lemma, and function words are dropped entirely.  Both sets are
configurable through :class:`NormalizationPolicy`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Iterable

from .errors import CorpusError

if TYPE_CHECKING:
    from .corpus import Document, Token


class POSTag(str, Enum):
    """Closed part-of-speech tag set; anything unknown maps to X."""

    NOUN = "NOUN"
    PROPN = "PROPN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    DET = "DET"
    ADP = "ADP"
    PRON = "PRON"
    CCONJ = "CCONJ"
    SCONJ = "SCONJ"
    AUX = "AUX"
    PART = "PART"
    INTJ = "INTJ"
    NUM = "NUM"
    PUNCT = "PUNCT"
    X = "X"

    @classmethod
    def parse(cls, tag: str) -> "POSTag":
        try:
            return cls(tag.strip().upper())
        except ValueError:
            return cls.X


@dataclass(frozen=True, order=True)
class LexicalUnit:
    """Normalized vocabulary item; (key, pos) is the identity used everywhere."""

    key: str
    pos: POSTag

    def __str__(self) -> str:
        return f"{self.key}/{self.pos.value}"


DEFAULT_SURFACE_POS = frozenset({POSTag.NOUN, POSTag.PROPN})
DEFAULT_STOP_POS = frozenset(
    {
        POSTag.DET,
        POSTag.ADP,
        POSTag.PRON,
        POSTag.CCONJ,
        POSTag.SCONJ,
        POSTag.AUX,
        POSTag.PART,
        POSTag.INTJ,
        POSTag.PUNCT,
    }
)


@dataclass(frozen=True)
class NormalizationPolicy:
    """Which categories keep their surface form and which are dropped."""

    surface_pos: frozenset[POSTag] = DEFAULT_SURFACE_POS
    stop_pos: frozenset[POSTag] = DEFAULT_STOP_POS

    def __post_init__(self) -> None:
        overlap = self.surface_pos & self.stop_pos
        if overlap:
            raise ValueError(f"surface_pos and stop_pos overlap: {sorted(t.value for t in overlap)}")


class MorphoLexicon:
    """Surface form to (lemma, pos) readings, a fallback for unannotated text.

    Lookup tries the exact surface first, then falls back to a
    case-insensitive match, so a lexicon that distinguishes "Paris" from
    "paris" keeps the distinction while sentence-initial capitals still
    resolve.
    """

    def __init__(self) -> None:
        self._exact: dict[str, list[tuple[str, POSTag]]] = {}
        self._folded: dict[str, list[tuple[str, POSTag]]] = {}

    def add(self, surface: str, lemma: str, pos: POSTag) -> None:
        if not surface:
            raise ValueError("empty surface form")
        reading = (lemma, pos)
        self._exact.setdefault(surface, []).append(reading)
        self._folded.setdefault(surface.lower(), []).append(reading)

    def lookup(self, surface: str) -> list[tuple[str, POSTag]]:
        readings = self._exact.get(surface)
        if readings is None:
            readings = self._folded.get(surface.lower(), [])
        return list(readings)

    def __len__(self) -> int:
        return len(self._exact)


def load_lexicon(lines: Iterable[str], source: str = "<lexicon>") -> MorphoLexicon:
    """Read a 3-column TSV stream (SURFACE, LEMMA, UPOS) into a lexicon."""
    lexicon = MorphoLexicon()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise CorpusError(f"{source}:{lineno}: expected 3 tab-separated columns, got {len(cols)}")
        surface, lemma, upos = cols
        if not surface or not lemma:
            raise CorpusError(f"{source}:{lineno}: empty surface or lemma")
        lexicon.add(surface, lemma, POSTag.parse(upos))
    return lexicon


def _is_punctuation(surface: str) -> bool:
    return bool(surface) and not any(ch.isalnum() for ch in surface)


def analyze(token: "Token", lexicon: MorphoLexicon | None = None) -> tuple[str, POSTag]:
    """Resolve a token to (lemma, pos); annotated input always wins."""
    if token.annotation is not None:
        return token.annotation.lemma, token.annotation.pos
    if lexicon is not None:
        readings = lexicon.lookup(token.surface)
        if readings:
            return readings[0]
    if _is_punctuation(token.surface):
        return token.surface, POSTag.PUNCT
    return token.surface.lower(), POSTag.X


def normalize(
    surface: str,
    lemma: str,
    pos: POSTag,
    policy: NormalizationPolicy = NormalizationPolicy(),
) -> LexicalUnit | None:
    """Map an analyzed token to its LexicalUnit, or None when it is a stop category."""
    if pos in policy.stop_pos:
        return None
    if pos in policy.surface_pos:
        key = surface if pos is POSTag.PROPN else surface.lower()
    else:
        key = lemma.lower()
    if not key:
        return None
    return LexicalUnit(key, pos)


@dataclass(frozen=True)
class NormalizedSentence:
    """One sentence after normalization, keeping token alignment for syntax."""

    ctx_id: int
    text: str
    token_units: tuple[LexicalUnit | None, ...]
    heads: tuple[int | None, ...]

    @property
    def units(self) -> tuple[LexicalUnit, ...]:
        return tuple(u for u in self.token_units if u is not None)


@dataclass(frozen=True)
class NormalizedDoc:
    doc_id: str
    sentences: tuple[NormalizedSentence, ...]


def normalize_corpus(
    docs: Iterable["Document"],
    lexicon: MorphoLexicon | None = None,
    policy: NormalizationPolicy = NormalizationPolicy(),
) -> list[NormalizedDoc]:
    """Run analyze+normalize over a corpus, preserving per-token alignment.

    The output is the boundary past which no stop-POS unit may travel;
    that is asserted here rather than trusted downstream.
    """
    out = []
    for doc in docs:
        nsents = []
        for sent in doc.sentences:
            token_units: list[LexicalUnit | None] = []
            heads: list[int | None] = []
            for token in sent.tokens:
                lemma, pos = analyze(token, lexicon)
                unit = normalize(token.surface, lemma, pos, policy)
                assert unit is None or unit.pos not in policy.stop_pos
                token_units.append(unit)
                heads.append(token.annotation.head if token.annotation is not None else None)
            start, end = sent.char_span
            text = doc.text[start:end] if doc.text is not None else ""
            nsents.append(
                NormalizedSentence(
                    ctx_id=sent.ctx_id,
                    text=text,
                    token_units=tuple(token_units),
                    heads=tuple(heads),
                )
            )
        out.append(NormalizedDoc(doc_id=doc.doc_id, sentences=tuple(nsents)))
    return out
