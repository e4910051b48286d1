"""Based, ordered, oriented link diagrams and their descending diagrams.

A diagram is stored as a combinatorial map.  Every edge ``e`` carries two
darts: ``2*e`` at the crossing where the edge starts and ``2*e + 1`` at the
crossing where it ends, so the edge pairing is simply ``d ^ 1``.  Each
crossing lists its four darts counterclockwise with position 0 on the
incoming under-strand; positions 0/2 are the under-strand and 1/3 the
over-strand.

Edges are numbered consecutively along each component, which keeps the
internal form identical to the PD code it serializes to.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterator, NamedTuple, Sequence

UNDER = "under"
OVER = "over"


class DiagramError(ValueError):
    """Raised for malformed or non-planar diagram data."""


class PDSyntaxError(DiagramError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Crossing:
    """One crossing: four darts counterclockwise, ``darts[0]`` incoming under.

    ``over_sign`` is +1 when the over-strand enters at position 3 (a positive
    crossing in the usual right-hand convention) and -1 when it enters at 1.
    """

    id: int
    darts: tuple[int, int, int, int]
    over_sign: int

    def switched(self) -> "Crossing":
        d0, d1, d2, d3 = self.darts
        if self.over_sign > 0:
            return Crossing(self.id, (d3, d0, d1, d2), -1)
        return Crossing(self.id, (d1, d2, d3, d0), 1)


@dataclass(frozen=True)
class Marking:
    """Basepoint/orientation per component plus a component order.

    ``basepoints[i]`` is the start dart of component ``i``: the basepoint sits
    on that dart's edge and the traversal leaves the crossing along it.
    Crossingless components carry ``None``.
    """

    basepoints: tuple[int | None, ...]
    order: tuple[int, ...]


class Visit(NamedTuple):
    crossing: int
    strand: str
    first_visit: bool


@dataclass(frozen=True)
class DescendingResult:
    descending: "LinkDiagram"
    changed: frozenset[int]

    @property
    def ascending_count(self) -> int:
        return len(self.changed)


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    free_loops: int = 0

    # -- derived structure -------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_darts(self) -> int:
        return 4 * len(self.crossings)

    @cached_property
    def dart_site(self) -> tuple[tuple[int, int], ...]:
        """``dart_site[d] = (crossing index, position)``."""
        site: list[tuple[int, int] | None] = [None] * self.n_darts
        for ci, x in enumerate(self.crossings):
            for pos, d in enumerate(x.darts):
                site[d] = (ci, pos)
        return tuple(site)  # type: ignore[arg-type]

    @cached_property
    def _through(self) -> tuple[int, ...]:
        """Dart opposite each dart at its crossing (straight-through partner)."""
        out = [0] * self.n_darts
        for x in self.crossings:
            d = x.darts
            out[d[0]], out[d[2]], out[d[1]], out[d[3]] = d[2], d[0], d[3], d[1]
        return tuple(out)

    @property
    def edge_pairing(self) -> tuple[int, ...]:
        return tuple(d ^ 1 for d in range(self.n_darts))

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Dart cycles of the components with crossings, then one empty
        tuple per crossingless loop."""
        through = self._through
        seen = [False] * self.n_darts
        comps = []
        for start in range(0, self.n_darts, 2):
            if seen[start]:
                continue
            cycle = []
            d = start
            while True:
                cycle.append(d)
                cycle.append(d ^ 1)
                seen[d] = seen[d ^ 1] = True
                d = through[d ^ 1]
                if d == start:
                    break
            comps.append(tuple(cycle))
        comps.extend(() for _ in range(self.free_loops))
        return tuple(comps)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        out = [0] * self.n_darts
        for i, comp in enumerate(self.components):
            for d in comp:
                out[d] = i
        return tuple(out)

    @cached_property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        """Connected sub-diagrams as tuples of crossing indices."""
        n = self.n_crossings
        parent = list(range(n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        site = self.dart_site
        for d in range(0, self.n_darts, 2):
            a, b = find(site[d][0]), find(site[d + 1][0])
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for ci in range(n):
            groups.setdefault(find(ci), []).append(ci)
        return tuple(tuple(g) for g in sorted(groups.values()))

    @property
    def is_knot(self) -> bool:
        return self.n_components == 1

    # -- faces / validation -----------------------------------------------

    def face_next(self, d: int) -> int:
        """Next dart on the face to the left of the edge leaving along ``d``."""
        ci, pos = self.dart_site[d ^ 1]
        return self.crossings[ci].darts[(pos - 1) % 4]

    def face_cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n_darts
        faces = []
        for start in range(self.n_darts):
            if seen[start]:
                continue
            cyc = []
            d = start
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = self.face_next(d)
            faces.append(tuple(cyc))
        return faces

    def validate(self) -> None:
        """Check the map invariants; raise DiagramError if any fails."""
        n = self.n_darts
        seen = [0] * n
        for ci, x in enumerate(self.crossings):
            if x.id != ci:
                raise DiagramError(f"crossing {ci} carries id {x.id}")
            if len(set(x.darts)) != 4:
                raise DiagramError(f"crossing {ci} does not have 4 distinct darts")
            for d in x.darts:
                if not 0 <= d < n:
                    raise DiagramError(f"dart {d} out of range")
                seen[d] += 1
            d0, d1, d2, d3 = x.darts
            if d0 % 2 != 1 or d2 % 2 != 0:
                raise DiagramError(f"crossing {ci}: position 0 must be incoming under")
            if d1 % 2 == d3 % 2:
                raise DiagramError(f"crossing {ci}: over-strand is not oriented through")
            expected = 1 if d3 % 2 == 1 else -1
            if x.over_sign != expected:
                raise DiagramError(f"crossing {ci}: over_sign inconsistent with darts")
        if any(s != 1 for s in seen):
            raise DiagramError("every dart must appear in exactly one crossing")
        through = self._through
        for d in range(0, n, 2):
            if through[d ^ 1] % 2 != 0:
                raise DiagramError("edge orientations are inconsistent along a component")
        self._check_planar()

    def _check_planar(self) -> None:
        part_of = [0] * self.n_crossings
        for pi, part in enumerate(self.parts):
            for ci in part:
                part_of[ci] = pi
        face_count = [0] * len(self.parts)
        for face in self.face_cycles():
            face_count[part_of[self.dart_site[face[0]][0]]] += 1
        for pi, part in enumerate(self.parts):
            v = len(part)
            e = 2 * v
            if v - e + face_count[pi] != 2:
                raise DiagramError(
                    f"connected part {pi} is not planar: V - E + F = "
                    f"{v - e + face_count[pi]}"
                )

    # -- serialization -----------------------------------------------------

    def to_pd(self) -> str:
        chunks = []
        for part in self.parts:
            chunks.append(
                " ".join(
                    "X({},{},{},{})".format(*((d >> 1) + 1 for d in self.crossings[ci].darts))
                    for ci in part
                )
            )
        text = " | ".join(chunks)
        loops = " ".join("O" for _ in range(self.free_loops))
        if text and loops:
            return text + " | " + loops
        return text or loops

    def __str__(self) -> str:
        return self.to_pd()


# -- construction ----------------------------------------------------------


def build_diagram(
    crossings: Sequence[Sequence[Hashable]],
    pairs: dict,
    free_loops: int = 0,
    starts: Sequence[Hashable] | None = None,
) -> tuple[LinkDiagram, dict]:
    """Normalize an unoriented planar map into a LinkDiagram.

    ``crossings`` lists four tokens per crossing, counterclockwise, with the
    under-strand at positions 0 and 2.  ``pairs`` maps each token to the token
    at the other end of its edge.  Components are walked starting from
    ``starts`` (tokens to leave along), then from the first unused token in
    crossing order.  Returns the diagram and the token -> dart mapping.
    """
    site: dict = {}
    for ci, x in enumerate(crossings):
        if len(x) != 4:
            raise DiagramError(f"crossing {ci} does not have 4 slots")
        for pos, t in enumerate(x):
            if t in site:
                raise DiagramError(f"token {t!r} used twice")
            site[t] = (ci, pos)
    for t in site:
        u = pairs.get(t)
        if u is None or u == t or pairs.get(u) != t or u not in site:
            raise DiagramError(f"edge pairing is not an involution at {t!r}")

    dart: dict = {}
    next_edge = 0
    candidates = list(starts or ()) + [t for x in crossings for t in x]
    for start in candidates:
        if start in dart:
            continue
        t = start
        while True:
            h = pairs[t]
            dart[t] = 2 * next_edge
            dart[h] = 2 * next_edge + 1
            next_edge += 1
            ci, pos = site[h]
            t = crossings[ci][(pos + 2) % 4]
            if t == start:
                break
            if t in dart:
                raise DiagramError("component walk did not close up")

    raw = []
    for x in crossings:
        ds = [dart[t] for t in x]
        if ds[0] % 2 == 0:  # rotate so the incoming under dart is at 0
            ds = ds[2:] + ds[:2]
        raw.append(ds)

    # Group crossings by connected part, each part sorted by least dart, so
    # crossing ids survive crossing changes.
    n = len(raw)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner = {}
    for ci, ds in enumerate(raw):
        for d in ds:
            owner[d] = ci
    for d in range(0, 2 * next_edge, 2):
        a, b = find(owner[d]), find(owner[d + 1])
        if a != b:
            parent[max(a, b)] = min(a, b)
    part_min: dict[int, int] = {}
    for ci, ds in enumerate(raw):
        r = find(ci)
        part_min[r] = min(part_min.get(r, ds[0]), min(ds))
    key = sorted(range(n), key=lambda ci: (part_min[find(ci)], min(raw[ci])))
    out = []
    for new_id, ci in enumerate(key):
        ds = raw[ci]
        out.append(Crossing(new_id, tuple(ds), 1 if ds[3] % 2 == 1 else -1))
    return LinkDiagram(tuple(out), free_loops), dart


def _raw(d: LinkDiagram) -> tuple[list[list[int]], dict[int, int]]:
    crossings = [list(x.darts) for x in d.crossings]
    pairs = {t: t ^ 1 for t in range(d.n_darts)}
    return crossings, pairs


# -- PD parsing --------------------------------------------------------------

_TOKEN = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)|O|\|")


def parse_pd(text: str) -> LinkDiagram:
    """Parse whitespace-separated ``X(a,b,c,d)``, ``O`` and ``|`` tokens.

    ``a`` is the incoming under-edge, ``b, c, d`` follow counterclockwise and
    ``c`` is the outgoing under-edge.  Labels run 1..2c, consecutively along
    each component (the last label of a component is followed by its first).
    """
    pos = 0
    groups: list[list[tuple[int, ...]]] = [[]]
    loops = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise PDSyntaxError(f"unexpected input {text[pos:pos + 12]!r}", pos)
        end = m.end()
        if m.group(0) == "O" and end < n and text[end].isalnum():
            raise PDSyntaxError("'O' must be followed by whitespace or a separator", end)
        tok = m.group(0)
        if tok == "|":
            groups.append([])
        elif tok == "O":
            loops += 1
        else:
            groups[-1].append(tuple(int(g) for g in m.groups()))
        pos = end

    xs = [x for g in groups for x in g]
    c = len(xs)
    counts: dict[int, int] = {}
    for x in xs:
        for lab in x:
            counts[lab] = counts.get(lab, 0) + 1
    for lab, k in sorted(counts.items()):
        if k > 2:
            raise DiagramError(f"edge label {lab} used {k} times (dart used twice)")
    bad = sorted(lab for lab, k in counts.items() if k != 2)
    if bad:
        raise DiagramError(f"edge labels {bad} do not pair up (non-involutive edge pairing)")
    if c and set(counts) != set(range(1, 2 * c + 1)):
        raise DiagramError(f"edge labels must be exactly 1..{2 * c}")

    # Tokens are (crossing, position); each label names the edge between its
    # two occurrences.
    where: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(xs):
        for p, lab in enumerate(x):
            where.setdefault(lab, []).append((ci, p))
    pairs = {}
    for lab, (s, t) in where.items():
        pairs[s] = t
        pairs[t] = s
    label_of = {(ci, p): lab for ci, x in enumerate(xs) for p, lab in enumerate(x)}

    starts = _orient_components(xs, pairs, label_of)
    raw = [[(ci, p) for p in range(4)] for ci in range(c)]
    diagram, dart = build_diagram(raw, pairs, loops, starts)
    for tok, d in dart.items():
        if (d >> 1) + 1 != label_of[tok]:
            raise DiagramError(
                "edge labels must increase by one along each component "
                f"(label {label_of[tok]} is out of sequence)"
            )
    diagram._check_planar()
    _check_groups(diagram, groups, dart)
    return diagram


def _orient_components(xs, pairs, label_of) -> list:
    """Pick, per component, the token to leave along so that the walk follows
    the PD orientation; return them ordered by least label."""
    seen = set()
    starts = []
    for ci in range(len(xs)):
        for p in range(4):
            if (ci, p) in seen:
                continue
            # unoriented walk: leave along token t
            walk = []
            t = (ci, p)
            while True:
                h = pairs[t]
                walk.append((t, h))
                seen.add(t)
                seen.add(h)
                t = (h[0], (h[1] + 2) % 4)
                if t == (ci, p):
                    break
            options = []
            for w in (walk, [(h, t) for t, h in reversed(walk)]):
                # under passages must enter at position 0
                if any(h[1] == 2 for _, h in w):
                    continue
                labels = [label_of[t] for t, _ in w]
                k = labels.index(min(labels))
                labels = labels[k:] + labels[:k]
                if labels != list(range(labels[0], labels[0] + len(labels))):
                    continue
                options.append(w[k][0])
            if not options:
                raise DiagramError(
                    f"component through edge {label_of[(ci, p)]} cannot be oriented: "
                    "under-strands or label successors disagree"
                )
            starts.append(options[0])
    starts.sort(key=lambda t: label_of[t])
    return starts


def _check_groups(diagram: LinkDiagram, groups, dart) -> None:
    if len([g for g in groups if g]) <= 1:
        return
    offset = 0
    group_of = {}
    for gi, g in enumerate(groups):
        for k in range(len(g)):
            group_of[offset + k] = gi
        offset += len(g)
    site = diagram.dart_site
    for part in diagram.parts:
        owners = set()
        for ci in part:
            for d in diagram.crossings[ci].darts:
                owners.add(d)
        gs = {group_of[tok[0]] for tok, d in dart.items() if d in owners}
        if len(gs) != 1:
            raise DiagramError("'|' grouping disagrees with diagram connectivity")
    del site


# -- traversal and descending diagrams ---------------------------------------


def components(d: LinkDiagram) -> tuple[tuple[int, ...], ...]:
    return d.components


def check_marking(d: LinkDiagram, m: Marking) -> None:
    comps = d.components
    if len(m.basepoints) != len(comps):
        raise DiagramError(f"marking has {len(m.basepoints)} basepoints for {len(comps)} components")
    if sorted(m.order) != list(range(len(comps))):
        raise DiagramError(f"component order {m.order} is not a permutation")
    comp_of = d.component_of
    for i, (b, comp) in enumerate(zip(m.basepoints, comps)):
        if not comp:
            if b is not None:
                raise DiagramError(f"component {i} has no crossings; its basepoint must be None")
            continue
        if b is None or not 0 <= b < d.n_darts or comp_of[b] != i:
            raise DiagramError(f"basepoint dart {b} does not lie on component {i}")


def _walk(d: LinkDiagram, start: int) -> Iterator[tuple[int, int]]:
    """Yield (crossing index, position) for each passage from ``start``."""
    through = d._through
    site = d.dart_site
    t = start
    while True:
        h = t ^ 1
        yield site[h]
        t = through[h]
        if t == start:
            return


def traverse(d: LinkDiagram, m: Marking) -> list[Visit]:
    check_marking(d, m)
    seen = set()
    out = []
    for comp in m.order:
        b = m.basepoints[comp]
        if b is None:
            continue
        for ci, pos in _walk(d, b):
            first = ci not in seen
            seen.add(ci)
            out.append(Visit(ci, UNDER if pos % 2 == 0 else OVER, first))
    return out


def _changed(d: LinkDiagram, m: Marking) -> set[int]:
    seen: set[int] = set()
    changed = set()
    for comp in m.order:
        b = m.basepoints[comp]
        if b is None:
            continue
        for ci, pos in _walk(d, b):
            if ci not in seen:
                seen.add(ci)
                if pos % 2 == 0:
                    changed.add(ci)
    return changed


def descending(d: LinkDiagram, m: Marking) -> DescendingResult:
    check_marking(d, m)
    changed = _changed(d, m)
    crossings = tuple(x.switched() if x.id in changed else x for x in d.crossings)
    return DescendingResult(LinkDiagram(crossings, d.free_loops), frozenset(changed))


def ascending_count(d: LinkDiagram, m: Marking) -> int:
    check_marking(d, m)
    return len(_changed(d, m))


def enumerate_markings(d: LinkDiagram) -> Iterator[Marking]:
    """All markings; lexicographic in the order permutation, then in the
    start darts (component by component)."""
    comps = d.components
    choices = [sorted(c) if c else [None] for c in comps]
    for order in itertools.permutations(range(len(comps))):
        for bps in itertools.product(*choices):
            yield Marking(tuple(bps), order)


def marking_count(d: LinkDiagram) -> int:
    total = 1
    for k in range(2, d.n_components + 1):
        total *= k
    for comp in d.components:
        total *= max(1, len(comp))
    return total


def _self_costs(d: LinkDiagram, comp: tuple[int, ...]) -> dict[int, int]:
    """For each start dart on ``comp``: crossings of the component with itself
    first met on the under-strand."""
    comp_of = d.component_of
    me = comp_of[comp[0]]
    costs = {}
    for start in comp:
        seen = set()
        cost = 0
        for ci, pos in _walk(d, start):
            x = d.crossings[ci]
            if comp_of[x.darts[0]] != me or comp_of[x.darts[1]] != me:
                continue
            if ci not in seen:
                seen.add(ci)
                cost += pos % 2 == 0
        costs[start] = cost
    return costs


def min_ascending(d: LinkDiagram) -> tuple[int, Marking]:
    """Minimum ascending count over all markings of this fixed diagram.

    The witness is the first minimizing marking in ``enumerate_markings``
    order.  Self-crossings of a component depend only on its start dart and
    crossings between components only on the order, so the two are minimized
    separately.
    """
    comps = d.components
    n = len(comps)
    comp_of = d.component_of
    best_bps = []
    self_total = 0
    for comp in comps:
        if not comp:
            best_bps.append(None)
            continue
        costs = _self_costs(d, comp)
        low = min(costs.values())
        self_total += low
        best_bps.append(min(s for s, v in costs.items() if v == low))

    # inter[i][j]: crossings between i and j where i is under
    inter = [[0] * n for _ in range(n)]
    for x in d.crossings:
        cu, co = comp_of[x.darts[0]], comp_of[x.darts[1]]
        if cu != co:
            inter[cu][co] += 1
    best_order = None
    best_inter = None
    for order in itertools.permutations(range(n)):
        cost = 0
        for a in range(n):
            for b in range(a + 1, n):
                cost += inter[order[a]][order[b]]
        if best_inter is None or cost < best_inter:
            best_inter, best_order = cost, order
    return self_total + best_inter, Marking(tuple(best_bps), best_order)


def reverse_marking(d: LinkDiagram, m: Marking) -> Marking:
    check_marking(d, m)
    return Marking(
        tuple(None if b is None else b ^ 1 for b in m.basepoints),
        tuple(reversed(m.order)),
    )


def switch_crossing(d: LinkDiagram, crossing_id: int) -> LinkDiagram:
    if not 0 <= crossing_id < d.n_crossings:
        raise DiagramError(f"no crossing with id {crossing_id}")
    xs = list(d.crossings)
    xs[crossing_id] = xs[crossing_id].switched()
    return LinkDiagram(tuple(xs), d.free_loops)


def mirror(d: LinkDiagram) -> LinkDiagram:
    return LinkDiagram(tuple(x.switched() for x in d.crossings), d.free_loops)


# -- marking notation --------------------------------------------------------


def marking_to_json(m: Marking) -> dict:
    """Basepoints as signed 1-based edge labels: +e leaves along edge e in its
    PD direction, -e travels it backwards."""
    bps = []
    for b in m.basepoints:
        if b is None:
            bps.append(None)
        else:
            e = (b >> 1) + 1
            bps.append(e if b % 2 == 0 else -e)
    return {"basepoints": bps, "order": list(m.order)}


def marking_from_json(obj: dict) -> Marking:
    bps = []
    for b in obj["basepoints"]:
        if b is None:
            bps.append(None)
        elif b > 0:
            bps.append(2 * (b - 1))
        elif b < 0:
            bps.append(2 * (-b - 1) + 1)
        else:
            raise DiagramError("basepoint edge label 0 is not valid")
    return Marking(tuple(bps), tuple(obj["order"]))
