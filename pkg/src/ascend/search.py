"""Budgeted best-first search over Reidemeister moves for low ascending counts."""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from itertools import count

from .diagram import LinkDiagram, Marking, min_ascending
from .moves import ALL_FAMILIES, apply_move, canonical_code, legal_moves

log = logging.getLogger(__name__)

DEFAULT_NODE_CAP = 10**6


@dataclass(frozen=True)
class SearchReport:
    best_value: int
    witness_diagram: LinkDiagram
    witness_marking: Marking
    nodes: int
    frontier_exhausted: bool
    budget: tuple[int, int]


def search_upper_bound(
    d: LinkDiagram,
    crossing_cap: int | None = None,
    node_cap: int = DEFAULT_NODE_CAP,
    families=ALL_FAMILIES,
    target: int | None = None,
) -> SearchReport:
    """Explore the move graph from ``d``, scoring every diagram by its
    ascending count minimized over markings.

    Nodes are expanded in order of (own value, crossing count, discovery
    order) and deduplicated by canonical code.  The search ends when the
    frontier empties, ``node_cap`` diagrams have been scored, or the best
    value reaches ``target`` (typically a known lower bound).
    """
    if crossing_cap is None:
        crossing_cap = d.n_crossings + 2
    if crossing_cap <= 0 or node_cap <= 0:
        raise ValueError("crossing_cap and node_cap must be positive")
    if crossing_cap < d.n_crossings:
        raise ValueError(f"crossing_cap {crossing_cap} is below the diagram's {d.n_crossings} crossings")

    tick = count()
    value, marking = min_ascending(d)
    best = (value, d, marking)
    seen = {canonical_code(d)}
    heap = [(value, d.n_crossings, next(tick), d)]
    nodes = 1

    def done() -> bool:
        return target is not None and best[0] <= target

    interrupted = False
    while heap and not interrupted:
        if nodes >= node_cap or done():
            interrupted = True
            break
        _, _, _, cur = heapq.heappop(heap)
        for mv in legal_moves(cur, crossing_cap, families):
            nxt = apply_move(cur, mv)
            code = canonical_code(nxt)
            if code in seen:
                continue
            seen.add(code)
            v, m = min_ascending(nxt)
            nodes += 1
            if v < best[0]:
                best = (v, nxt, m)
                log.debug("value %d at node %d (%d crossings)", v, nodes, nxt.n_crossings)
            heapq.heappush(heap, (v, nxt.n_crossings, next(tick), nxt))
            if nodes >= node_cap or done():
                interrupted = True
                break

    return SearchReport(
        best_value=best[0],
        witness_diagram=best[1],
        witness_marking=best[2],
        nodes=nodes,
        frontier_exhausted=not heap and not interrupted,
        budget=(crossing_cap, node_cap),
    )
