"""lexatlas: corpus-driven semantic maps.

From a raw or annotated corpus: extract lexical relations, filter them
into per-word contexonym sets, enumerate maximal cliques as atomic sense
units, place them with correspondence analysis, and index every sense
back to the sentences attesting it.  The result is a persistent,
servable resource for navigating a corpus by meaning.
"""

from .ca import (
    CAResult,
    ContingencyTable,
    Projection,
    Weighting,
    contingency,
    correspondence_analysis,
    project,
    snap12,
)
from .cliques import (
    Clique,
    CliqueEnumeration,
    ContexonymGraph,
    brute_force_cliques,
    build_graph,
    maximal_cliques,
)
from .config import BuildConfig, Mode
from .corpus import (
    ANNOTATED_FORMAT,
    PLAIN_FORMAT,
    ROOT,
    Annotation,
    Document,
    Sentence,
    Token,
    load_corpus,
    parse_annotated,
    segment_plain,
    synthesized_text,
)
from .errors import (
    ComputationError,
    CorpusError,
    LexAtlasError,
    NotFoundError,
    NotMappableError,
    RelationError,
)
from .morpho import (
    DEFAULT_STOP_POS,
    DEFAULT_SURFACE_POS,
    LexicalUnit,
    MorphoLexicon,
    NormalizationPolicy,
    NormalizedDoc,
    NormalizedSentence,
    POSTag,
    analyze,
    load_lexicon,
    normalize,
    normalize_corpus,
)
from .relations import (
    FilterConfig,
    FrequencyTable,
    RelationInstance,
    RelationKind,
    contexonyms,
    corpus_stats,
    extract_sentence,
    extract_syntactic,
    extract_window,
    load_synonym_pairs,
)
from .atlas import (
    Cluster,
    DiachronyReport,
    Resource,
    SemanticMap,
    build_map,
    build_resource,
    build_synonym_resource,
    cluster_map,
    cluster_map_rows,
    compare_resources,
    load_resource,
    lookup_contexts,
    map_filename,
    save_resource,
)
from .render import coords_tsv, render_svg
from .server import make_server, map_document, serve, start_background

__version__ = "0.1.0"

__all__ = [
    "ANNOTATED_FORMAT",
    "Annotation",
    "BuildConfig",
    "CAResult",
    "Clique",
    "CliqueEnumeration",
    "Cluster",
    "ComputationError",
    "ContexonymGraph",
    "ContingencyTable",
    "CorpusError",
    "DEFAULT_STOP_POS",
    "DEFAULT_SURFACE_POS",
    "DiachronyReport",
    "Document",
    "FilterConfig",
    "FrequencyTable",
    "LexAtlasError",
    "LexicalUnit",
    "Mode",
    "MorphoLexicon",
    "NormalizationPolicy",
    "NormalizedDoc",
    "NormalizedSentence",
    "NotFoundError",
    "NotMappableError",
    "PLAIN_FORMAT",
    "POSTag",
    "Projection",
    "ROOT",
    "RelationError",
    "RelationInstance",
    "RelationKind",
    "Resource",
    "SemanticMap",
    "Sentence",
    "Token",
    "Weighting",
    "analyze",
    "brute_force_cliques",
    "build_graph",
    "build_map",
    "build_resource",
    "build_synonym_resource",
    "cluster_map",
    "cluster_map_rows",
    "compare_resources",
    "contexonyms",
    "contingency",
    "coords_tsv",
    "corpus_stats",
    "correspondence_analysis",
    "extract_sentence",
    "extract_syntactic",
    "extract_window",
    "load_corpus",
    "load_lexicon",
    "load_resource",
    "load_synonym_pairs",
    "lookup_contexts",
    "map_filename",
    "make_server",
    "map_document",
    "maximal_cliques",
    "normalize",
    "normalize_corpus",
    "parse_annotated",
    "project",
    "render_svg",
    "save_resource",
    "segment_plain",
    "synthesized_text",
    "serve",
    "snap12",
    "start_background",
]
