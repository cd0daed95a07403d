"""Exception types shared across the package."""


class LexAtlasError(Exception):
    """Base class for all package errors."""


class CorpusError(LexAtlasError):
    """Unreadable, undecodable or malformed corpus input."""


class RelationError(LexAtlasError):
    """Relation extraction failed (e.g. missing dependency annotation)."""


class NotMappableError(LexAtlasError):
    """The word has a degenerate map: too few contexonyms, cliques or table cells."""


class NotFoundError(LexAtlasError):
    """Unknown word, clique or context id in a resource lookup."""


class ComputationError(LexAtlasError):
    """A numerical routine failed; the message carries the problem size."""
