"""Diagram constructions: braid closures, rational and Montesinos knots, twist
and torus knots, Hopf and trivial links, connected sum and split union."""

from __future__ import annotations

import math
import random
from itertools import count
from typing import Sequence

from .diagram import DiagramError, LinkDiagram, Marking, build_diagram, check_marking


class _Builder:
    """Accumulates crossings and links between tokens.

    Tokens that belong to no crossing are virtual 2-valent points; they are
    contracted away by ``build`` and closed chains of them become free loops.
    """

    def __init__(self) -> None:
        self.crossings: list[list[int]] = []
        self.links: dict[int, list[int]] = {}
        self._tok = count()

    def token(self) -> int:
        return next(self._tok)

    def crossing(self, slots: list[int]) -> None:
        self.crossings.append(slots)

    def link(self, a: int, b: int) -> None:
        self.links.setdefault(a, []).append(b)
        self.links.setdefault(b, []).append(a)

    def build(self, starts=None) -> tuple[LinkDiagram, dict]:
        real = {t for x in self.crossings for t in x}
        pairs = {}
        visited = set()
        for t in real:
            if t in pairs:
                continue
            (nb,) = self.links[t]
            prev, cur = t, nb
            while cur not in real:
                visited.add(cur)
                a, b = self.links[cur]
                prev, cur = cur, (b if a == prev else a)
            pairs[t] = cur
            pairs[cur] = t
        loops = 0
        for v in self.links:
            if v in real or v in visited:
                continue
            loops += 1
            prev, cur = None, v
            while cur not in visited:
                visited.add(cur)
                a, b = self.links[cur]
                nxt = b if a == prev else a
                prev, cur = cur, nxt
        return build_diagram(self.crossings, pairs, loops, starts)


def _twist_slots(a: int, b: int, c: int, e: int, hand: int) -> list[int]:
    # slots counterclockwise NE, NW, SW, SE; hand 0 puts the SW-NE strand under
    return [a, b, c, e] if hand == 0 else [b, c, e, a]


class Tangle:
    """Four-ended tangle with ends NW, NE, SW, SE inside a shared builder."""

    def __init__(self, builder: _Builder, nw: int, ne: int, sw: int, se: int):
        self.b = builder
        self.nw, self.ne, self.sw, self.se = nw, ne, sw, se

    @classmethod
    def zero(cls, builder: _Builder) -> "Tangle":
        nw, ne, sw, se = (builder.token() for _ in range(4))
        builder.link(nw, ne)
        builder.link(sw, se)
        return cls(builder, nw, ne, sw, se)

    @classmethod
    def infinity(cls, builder: _Builder) -> "Tangle":
        nw, ne, sw, se = (builder.token() for _ in range(4))
        builder.link(nw, sw)
        builder.link(ne, se)
        return cls(builder, nw, ne, sw, se)

    def twist_horizontal(self, n: int, hand: int) -> "Tangle":
        """Add ``n`` half-twists between the NE and SE ends."""
        for _ in range(n):
            a, b, c, e = (self.b.token() for _ in range(4))
            self.b.crossing(_twist_slots(a, b, c, e, hand))
            self.b.link(self.ne, b)
            self.b.link(self.se, c)
            self.ne, self.se = a, e
        return self

    def twist_vertical(self, n: int, hand: int) -> "Tangle":
        """Add ``n`` half-twists between the SW and SE ends."""
        for _ in range(n):
            a, b, c, e = (self.b.token() for _ in range(4))
            self.b.crossing(_twist_slots(a, b, c, e, hand))
            self.b.link(self.sw, b)
            self.b.link(self.se, a)
            self.sw, self.se = c, e
        return self

    def __add__(self, other: "Tangle") -> "Tangle":
        self.b.link(self.ne, other.nw)
        self.b.link(self.se, other.sw)
        return Tangle(self.b, self.nw, other.ne, self.sw, other.se)

    def numerator(self) -> LinkDiagram:
        self.b.link(self.nw, self.ne)
        self.b.link(self.sw, self.se)
        return self.b.build()[0]

    def denominator(self) -> LinkDiagram:
        self.b.link(self.nw, self.sw)
        self.b.link(self.ne, self.se)
        return self.b.build()[0]


def _rational(builder: _Builder, terms: Sequence[int], vertical_first: bool = False) -> tuple[Tangle, bool]:
    """Rational tangle with Conway notation ``terms``; returns the tangle and
    whether its last twist region was horizontal."""
    t = Tangle.infinity(builder) if vertical_first else Tangle.zero(builder)
    horizontal = not vertical_first
    for k in terms:
        hand = 0 if k > 0 else 1
        if horizontal:
            t.twist_horizontal(abs(k), hand)
        else:
            t.twist_vertical(abs(k), hand)
        horizontal = not horizontal
    return t, not horizontal


def rational_diagram(terms: Sequence[int]) -> LinkDiagram:
    """Two-bridge knot or link from a Conway continued-fraction notation,
    e.g. ``(3, 2)`` for 5_2.  All-positive terms give an alternating diagram."""
    if not terms or any(k == 0 for k in terms):
        raise ValueError("rational notation needs nonzero terms")
    b = _Builder()
    t, last_horizontal = _rational(b, terms)
    return t.numerator() if last_horizontal else t.denominator()


def montesinos_diagram(tangles: Sequence[Sequence[int]]) -> LinkDiagram:
    """Conway's ``a,b,c`` notation: vertical rational tangles side by side
    under numerator closure.  A negative single term such as ``(-2,)`` is
    Conway's ``2-``."""
    b = _Builder()
    total = None
    for terms in tangles:
        # the last twist region of each tangle runs vertically
        t, _ = _rational(b, terms, vertical_first=len(terms) % 2 == 1)
        total = t if total is None else total + t
    assert total is not None
    return total.numerator()


def braid_closure(word: Sequence[int], strands: int | None = None) -> LinkDiagram:
    """Closure of a braid word; generator ``i`` crosses strands i and i+1
    with the left strand over, ``-i`` with it under."""
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    b = _Builder()
    bottom = [b.token() for _ in range(strands)]
    top = list(bottom)
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1 or g == 0:
            raise ValueError(f"generator {g} invalid for {strands} strands")
        ne, nw, sw, se = (b.token() for _ in range(4))
        # left strand runs SW -> NE; positive generators put it over
        b.crossing(_twist_slots(ne, nw, sw, se, 1 if g > 0 else 0))
        b.link(top[i], sw)
        b.link(top[i + 1], se)
        top[i], top[i + 1] = nw, ne
    for lo, hi in zip(bottom, top):
        if lo == hi:
            # untouched strand: a crossingless loop
            v = b.token()
            b.link(lo, v)
            b.link(v, lo)
        else:
            b.link(hi, lo)
    return b.build()[0]


def torus_diagram(p: int, q: int) -> LinkDiagram:
    """Closure of (sigma_1 ... sigma_{p-1})^q: the standard (p-1)q-crossing
    diagram of the (p, q) torus knot."""
    if p < 2 or q < 2:
        raise ValueError("torus_diagram needs p, q >= 2")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p}, q={q} are not coprime (that would be a torus link)")
    return braid_closure(list(range(1, p)) * q, p)


def twist_knot_diagram(k: int) -> LinkDiagram:
    """Standard diagram: ``k`` half-twists closed by a two-crossing clasp.
    k=1 is the trefoil, k=2 the figure-eight."""
    if k < 1:
        raise ValueError("twist knots need k >= 1 half-twists")
    return rational_diagram((k, 2))


def hopf_diagram() -> LinkDiagram:
    return braid_closure([1, 1])


def trivial_link_diagram(n: int) -> LinkDiagram:
    if n < 1:
        raise ValueError("trivial link needs n >= 1 components")
    return LinkDiagram((), n)


def unknot_diagram() -> LinkDiagram:
    return trivial_link_diagram(1)


# -- combinations -------------------------------------------------------------


def _tokens(d: LinkDiagram, tag: str):
    xs = [[(tag, t) for t in x.darts] for x in d.crossings]
    pairs = {(tag, t): (tag, t ^ 1) for t in range(d.n_darts)}
    return xs, pairs


def connected_sum(
    d1: LinkDiagram, d2: LinkDiagram, m1: Marking, m2: Marking
) -> tuple[LinkDiagram, Marking]:
    """Splice two knot diagrams at their basepoint edges.

    Both basepoint edges are taken to border the outer face (the face left of
    the start dart), so the splice is planar and orientations agree.  The
    sum's traversal runs through ``d1`` from its basepoint, then through
    ``d2``, so ascending counts add.
    """
    for dd, mm in ((d1, m1), (d2, m2)):
        if dd.n_components != 1:
            raise DiagramError("connected_sum takes one-component diagrams")
        check_marking(dd, mm)
    if d2.n_crossings == 0:
        return d1, m1
    if d1.n_crossings == 0:
        return d2, m2
    s1, s2 = m1.basepoints[0], m2.basepoints[0]
    x1, p1 = _tokens(d1, "a")
    x2, p2 = _tokens(d2, "b")
    pairs = {**p1, **p2}
    a, a_far = ("a", s1), ("a", s1 ^ 1)
    b, b_far = ("b", s2), ("b", s2 ^ 1)
    pairs[a], pairs[b_far] = b_far, a
    pairs[b], pairs[a_far] = a_far, b
    out, dart = build_diagram(x1 + x2, pairs, 0, starts=[b])
    return out, Marking((dart[b],), (0,))


def split_union(
    d1: LinkDiagram,
    d2: LinkDiagram,
    m1: Marking | None = None,
    m2: Marking | None = None,
) -> LinkDiagram | tuple[LinkDiagram, Marking]:
    """Disjoint union.  With markings, also returns the concatenated marking
    (components of ``d1`` traversed first)."""
    x1, p1 = _tokens(d1, "a")
    x2, p2 = _tokens(d2, "b")
    out, dart = build_diagram(x1 + x2, {**p1, **p2}, d1.free_loops + d2.free_loops)
    if m1 is None or m2 is None:
        return out

    comp_of = out.component_of
    n_real = sum(1 for c in out.components if c)
    new_index: dict[tuple[str, int], int] = {}
    loop_slot = n_real
    bps: dict[int, int | None] = {}
    for tag, dd, mm in (("a", d1, m1), ("b", d2, m2)):
        check_marking(dd, mm)
        for i, bp in enumerate(mm.basepoints):
            if bp is None:
                new_index[(tag, i)] = loop_slot
                bps[loop_slot] = None
                loop_slot += 1
            else:
                j = comp_of[dart[(tag, bp)]]
                new_index[(tag, i)] = j
                bps[j] = dart[(tag, bp)]
    order = tuple(new_index[("a", i)] for i in m1.order) + tuple(new_index[("b", i)] for i in m2.order)
    return out, Marking(tuple(bps[i] for i in range(out.n_components)), order)


def random_braid_diagram(
    rng: random.Random,
    max_crossings: int = 10,
    max_components: int = 3,
    max_strands: int = 4,
) -> LinkDiagram:
    """Closure of a random braid word with 1..max_components components and
    no crossingless strands."""
    while True:
        strands = rng.randint(2, max_strands)
        length = rng.randint(1, max_crossings)
        word = [rng.choice([1, -1]) * rng.randint(1, strands - 1) for _ in range(length)]
        if {abs(g) for g in word} != set(range(1, strands)):
            continue
        d = braid_closure(word, strands)
        if 1 <= d.n_components <= max_components:
            return d
