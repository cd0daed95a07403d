"""Build configuration: one frozen object that fully determines a resource.

The manifest stores `snapshot()` verbatim; `from_snapshot` restores it, so
a resource can always be rebuilt identically from the same corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .ca import Weighting
from .morpho import NormalizationPolicy, POSTag
from .relations import FilterConfig, RelationKind


class Mode(str, Enum):
    WINDOW = "window"
    SENTENCE = "sentence"
    SYNTACTIC = "syntactic"
    SYNONYMS = "synonyms"


_MODE_KIND = {
    Mode.WINDOW: RelationKind.WINDOW,
    Mode.SENTENCE: RelationKind.SENTENCE,
    Mode.SYNTACTIC: RelationKind.SYN_PRIMARY,
    Mode.SYNONYMS: RelationKind.SYNONYM,
}


@dataclass(frozen=True)
class BuildConfig:
    mode: Mode = Mode.SENTENCE
    window_width: int = 50
    filter: FilterConfig | None = None  # None picks the mode's defaults
    normalization: NormalizationPolicy = field(default_factory=NormalizationPolicy)
    edge_min: int = 1
    min_freq: int = 3
    max_cliques: int = 10000
    max_clique_size: int = 64
    weighting: Weighting = Weighting.BINARY

    def __post_init__(self) -> None:
        if self.window_width < 2:
            raise ValueError("window_width must be >= 2")
        if self.min_freq < 1:
            raise ValueError("min_freq must be >= 1")
        if self.filter is None:
            object.__setattr__(self, "filter", FilterConfig.for_mode(self.relation_kind))

    @property
    def relation_kind(self) -> RelationKind:
        return _MODE_KIND[Mode(self.mode)]

    def snapshot(self) -> dict:
        """JSON-serializable image of every knob that affects the build."""
        return {
            "mode": self.mode.value,
            "window_width": self.window_width,
            "filter": {
                "stop_top_k": self.filter.stop_top_k,
                "context_quantile": self.filter.context_quantile,
                "min_pair_count": self.filter.min_pair_count,
                "reciprocal_filter": self.filter.reciprocal_filter,
            },
            "normalization": {
                "surface_pos": sorted(p.value for p in self.normalization.surface_pos),
                "stop_pos": sorted(p.value for p in self.normalization.stop_pos),
            },
            "edge_min": self.edge_min,
            "min_freq": self.min_freq,
            "max_cliques": self.max_cliques,
            "max_clique_size": self.max_clique_size,
            "weighting": self.weighting.value,
        }

    @classmethod
    def from_snapshot(cls, snap: dict) -> "BuildConfig":
        filt = snap["filter"]
        norm = snap["normalization"]
        return cls(
            mode=Mode(snap["mode"]),
            window_width=snap["window_width"],
            filter=FilterConfig(
                stop_top_k=filt["stop_top_k"],
                context_quantile=filt["context_quantile"],
                min_pair_count=filt["min_pair_count"],
                reciprocal_filter=filt["reciprocal_filter"],
            ),
            normalization=NormalizationPolicy(
                surface_pos=frozenset(POSTag(p) for p in norm["surface_pos"]),
                stop_pos=frozenset(POSTag(p) for p in norm["stop_pos"]),
            ),
            edge_min=snap["edge_min"],
            min_freq=snap["min_freq"],
            max_cliques=snap["max_cliques"],
            max_clique_size=snap["max_clique_size"],
            weighting=Weighting(snap["weighting"]),
        )
