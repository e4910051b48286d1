"""Ascending numbers of knot and link diagrams."""

from .bounds import BoundSet, IntegrityError, certify, certify_entry, crossing_upper_bound
from .catalog import CatalogEntry, CatalogError, load_catalog, validate_witnesses
from .diagram import (
    Crossing,
    DescendingResult,
    DiagramError,
    LinkDiagram,
    Marking,
    PDSyntaxError,
    ascending_count,
    components,
    descending,
    enumerate_markings,
    min_ascending,
    mirror,
    parse_pd,
    reverse_marking,
    switch_crossing,
    traverse,
)
from .moves import Move, apply_move, canonical_code, faces, legal_moves
from .search import SearchReport, search_upper_bound

__all__ = [
    "BoundSet", "CatalogEntry", "CatalogError", "Crossing", "DescendingResult", "DiagramError",
    "IntegrityError", "LinkDiagram", "Marking", "Move", "PDSyntaxError", "SearchReport",
    "apply_move", "ascending_count", "canonical_code", "certify", "certify_entry", "components",
    "crossing_upper_bound", "descending", "enumerate_markings", "faces", "legal_moves",
    "load_catalog", "min_ascending", "mirror", "parse_pd", "reverse_marking",
    "search_upper_bound", "switch_crossing", "traverse", "validate_witnesses",
]
