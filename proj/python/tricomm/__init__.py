"""Community detection in tripartite hypergraphs by minimum description length."""

from ._core import (
    DetectionResult,
    Hypergraph,
    ParseError,
    Partition,
    Quality,
    detect,
    exact_min_q,
    generate_many_to_many,
    generate_one_to_one,
    load_hypergraph,
    log2_binomial,
    nmi,
    nmi_all_colors,
    nmi_per_color,
    parse_hypergraph,
    parse_partition,
    quality,
)

__all__ = [
    "DetectionResult",
    "Hypergraph",
    "ParseError",
    "Partition",
    "Quality",
    "detect",
    "exact_min_q",
    "generate_many_to_many",
    "generate_one_to_one",
    "load_hypergraph",
    "log2_binomial",
    "nmi",
    "nmi_all_colors",
    "nmi_per_color",
    "parse_hypergraph",
    "parse_partition",
    "quality",
]
