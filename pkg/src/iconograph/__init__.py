"""iconograph: signifier-to-meaning knowledge graphs for symbolic artworks."""

from .graph import (
    KnowledgeGraph,
    add_association,
    empty_graph,
    load,
    merge,
    prune_min_weight,
    query,
    remove_signifieds,
    restrict_signifiers,
    save,
)

__version__ = "0.1.0"

__all__ = [
    "KnowledgeGraph",
    "add_association",
    "empty_graph",
    "load",
    "merge",
    "prune_min_weight",
    "query",
    "remove_signifieds",
    "restrict_signifiers",
    "save",
    "__version__",
]
