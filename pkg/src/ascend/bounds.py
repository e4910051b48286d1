"""Lower and upper bounds on the ascending number, and their certification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .diagram import LinkDiagram, Marking, ascending_count, min_ascending, traverse
from .generators import torus_diagram

if TYPE_CHECKING:
    from .catalog import CatalogEntry
    from .search import SearchReport


class IntegrityError(ValueError):
    """Certified lower bound exceeds the upper bound."""


def crossing_upper_bound(c: int, is_knot: bool) -> int:
    """floor((c-1)/2) for nontrivial knots, floor(c/2) for links."""
    if c < 0:
        raise ValueError("crossing number must be nonnegative")
    if is_knot:
        return max(0, (c - 1) // 2)
    return c // 2


def bridge_lower_bound(b: int, n: int) -> int:
    if n < 1 or b < n:
        raise ValueError(f"bridge number {b} is impossible for {n} components")
    return b - n


def torus_ascending(p: int, q: int) -> int:
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError(f"torus knot needs coprime positive p, q (got {p}, {q})")
    return (p - 1) * (q - 1) // 2


def torus_unknotting(p: int, q: int) -> int:
    # Kronheimer-Mrowka; consumed as a known value, not computed
    return torus_ascending(p, q)


def torus_proof_markings(p: int, q: int, d: LinkDiagram | None = None) -> tuple[Marking, Marking]:
    """The two markings of the torus-knot upper bound construction.

    The first starts just before a run of p-1 consecutive over-crossings.
    The second traverses the knot backwards starting at the far end of that
    same run, so the run is again met first, on the over-strand.  Their
    ascending counts add up to (p-1)(q-1).
    """
    if d is None:
        d = torus_diagram(p, q)
    run = p - 1
    (comp,) = d.components
    first = None
    for start in sorted(comp):
        m = Marking((start,), (0,))
        visits = traverse(d, m)[:run]
        if all(v.strand == "over" for v in visits) and len({v.crossing for v in visits}) == run:
            first = m
            break
    if first is None:
        raise ValueError("no run of p-1 over-crossings found")
    # dart we leave along after the run, then head back from the next crossing
    t = first.basepoints[0]
    through = d._through
    for _ in range(run):
        t = through[t ^ 1]
    second = Marking((t ^ 1,), (0,))
    a, b = traverse(d, first)[:run], traverse(d, second)[:run]
    assert {v.crossing for v in a} == {v.crossing for v in b}
    assert all(v.strand == "over" for v in b)
    return first, second


@dataclass(frozen=True)
class BoundSet:
    lower: int
    lower_source: str
    upper: int
    upper_source: str

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def as_text(self) -> str:
        if self.exact:
            return str(self.lower)
        return f"[{self.lower},{self.upper}]"


def lower_bound(entry: "CatalogEntry") -> tuple[int, str]:
    """max of u, b - n and the classification rules, with its source.

    Ties are credited to the first source in the order unknotting, bridge,
    twist-classification, trivial.
    """
    n = entry.n_components
    nontrivial = entry.crossing_number > 0
    candidates = [
        (entry.unknotting, "unknotting"),
        (bridge_lower_bound(entry.bridge, n), "bridge"),
        (2 if n == 1 and nontrivial and not entry.is_twist else 0, "twist-classification"),
        (1 if nontrivial else 0, "trivial"),
    ]
    best = max(v for v, _ in candidates)
    return best, next(src for v, src in candidates if v == best)


def certify(
    entry: "CatalogEntry",
    witness: "SearchReport | tuple[LinkDiagram, Marking] | None" = None,
    witness_source: str = "stored-witness",
) -> BoundSet:
    """Combine the catalog's lower-bound data with the crossing bound and a
    witness, recomputing the witness's ascending count."""
    lower, lower_src = lower_bound(entry)
    is_knot = entry.n_components == 1
    upper = crossing_upper_bound(entry.crossing_number, is_knot)
    upper_src = "crossing-bound"
    if witness is not None:
        if hasattr(witness, "witness_diagram"):
            wd, wm = witness.witness_diagram, witness.witness_marking
            src = "search-witness"
        else:
            wd, wm = witness
            src = witness_source
        value = ascending_count(wd, wm)
        if value <= upper:
            upper, upper_src = value, src
    if lower > upper:
        raise IntegrityError(
            f"{entry.name}: lower bound {lower} ({lower_src}) exceeds upper bound {upper} ({upper_src})"
        )
    return BoundSet(lower, lower_src, upper, upper_src)


def torus_entry(p: int, q: int) -> "CatalogEntry":
    """Catalog-style record for T(p, q) built from formulas."""
    from .catalog import CatalogEntry

    d = torus_diagram(p, q)
    return CatalogEntry(
        name=f"T({p},{q})",
        pd=d.to_pd(),
        crossing_number=(min(p, q) - 1) * max(p, q),
        unknotting=torus_unknotting(p, q),
        bridge=min(p, q),
        is_twist=(min(p, q), max(p, q)) == (2, 3),
        a_lo=torus_ascending(p, q),
        a_hi=torus_ascending(p, q),
    )


def certify_torus(p: int, q: int) -> tuple[BoundSet, tuple[int, int]]:
    """Certify a(T(p,q)) from the proof markings; returns the bounds and the
    two markings' ascending counts."""
    lo, hi = sorted((p, q))
    d = torus_diagram(lo, hi)
    ma, mb = torus_proof_markings(lo, hi, d)
    ca, cb = ascending_count(d, ma), ascending_count(d, mb)
    best = ma if ca <= cb else mb
    bounds = certify(torus_entry(lo, hi), (d, best), witness_source="torus-formula")
    return bounds, (ca, cb)


def certify_entry(entry: "CatalogEntry") -> BoundSet:
    """Certify a catalog row from its stored witness, or from the minimal
    diagram with its best marking when no separate witness is stored."""
    w = entry.witness()
    if w is not None:
        return certify(entry, w, "stored-witness")
    d = entry.diagram
    return certify(entry, (d, min_ascending(d)[1]), "minimal-diagram")
