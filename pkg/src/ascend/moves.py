"""Reidemeister moves on planar diagrams and canonical codes for dedup."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

from .diagram import DiagramError, LinkDiagram, _raw, build_diagram

R1_PLUS, R1_MINUS = "R1+", "R1-"
R2_PLUS, R2_MINUS = "R2+", "R2-"
R3 = "R3"
ALL_FAMILIES = frozenset({"r1", "r2", "r3"})
_FAMILY = {R1_PLUS: "r1", R1_MINUS: "r1", R2_PLUS: "r2", R2_MINUS: "r2", R3: "r3"}

FREE_LOOP = -1


class IllegalMoveError(DiagramError):
    pass


@dataclass(frozen=True)
class Face:
    darts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class Move:
    """A Reidemeister move at a site.

    ``site`` holds darts: the monogon/bigon/triangle face darts for R1-/R2-/R3,
    the edge-side dart for R1+ (``(FREE_LOOP,)`` adds a kink to a crossingless
    loop) and the two edge-side darts for R2+.  ``variant`` selects the
    crossing type for R1+ and whether the first edge goes over (0) or under
    (1) for R2+.
    """

    kind: str
    site: tuple[int, ...]
    variant: int = 0


def faces(d: LinkDiagram) -> list[Face]:
    return [Face(f) for f in d.face_cycles()]


def _level(d: LinkDiagram, dart: int) -> int:
    """0 if the dart is on the under-strand of its crossing, 1 if over."""
    return d.dart_site[dart][1] % 2


def legal_moves(
    d: LinkDiagram,
    crossing_cap: int | None = None,
    families=ALL_FAMILIES,
) -> list[Move]:
    c = d.n_crossings
    can_add1 = crossing_cap is None or c + 1 <= crossing_cap
    can_add2 = crossing_cap is None or c + 2 <= crossing_cap
    site = d.dart_site
    out: list[Move] = []
    fs = d.face_cycles()
    use_r1 = "r1" in families
    use_r2 = "r2" in families
    use_r3 = "r3" in families
    for f in fs:
        k = len(f)
        if k == 1 and use_r1:
            out.append(Move(R1_MINUS, f))
        elif k == 2 and use_r2:
            a, b = f
            if site[a][0] != site[b][0] and _level(d, a) == _level(d, a ^ 1):
                out.append(Move(R2_MINUS, f))
        elif k == 3 and use_r3:
            xs = {site[t][0] for t in f}
            if len(xs) == 3 and any(_level(d, t) == _level(d, t ^ 1) for t in f):
                out.append(Move(R3, f))
    if use_r1 and can_add1:
        for t in range(d.n_darts):
            out.append(Move(R1_PLUS, (t,), 0))
            out.append(Move(R1_PLUS, (t,), 1))
        if d.free_loops:
            out.append(Move(R1_PLUS, (FREE_LOOP,), 0))
            out.append(Move(R1_PLUS, (FREE_LOOP,), 1))
    if use_r2 and can_add2:
        for f in fs:
            for i, a in enumerate(f):
                for j, b in enumerate(f):
                    if i != j and a >> 1 != b >> 1:
                        out.append(Move(R2_PLUS, (a, b), 0))
                        out.append(Move(R2_PLUS, (a, b), 1))
    return out


# -- applying moves ----------------------------------------------------------


def _splice(crossings, pairs, removed: set[int], free_loops: int):
    """Delete crossings, letting each strand pass straight through them."""
    gone = set()
    for ci in removed:
        gone.update(crossings[ci])
    through = {}
    for ci in removed:
        a, b, c, e = crossings[ci]
        through[a], through[c], through[b], through[e] = c, a, e, b
    new_pairs = {}
    visited = set()
    for x_i, x in enumerate(crossings):
        if x_i in removed:
            continue
        for t in x:
            if t in new_pairs:
                continue
            u = pairs[t]
            while u in gone:
                visited.add(u)
                v = through[u]
                visited.add(v)
                u = pairs[v]
            new_pairs[t] = u
            new_pairs[u] = t
    loops = 0
    for u in gone:
        if u in visited:
            continue
        loops += 1
        while u not in visited:
            visited.add(u)
            v = through[u]
            visited.add(v)
            u = pairs[v]
    kept = [x for i, x in enumerate(crossings) if i not in removed]
    return kept, new_pairs, free_loops + loops


def apply_move(d: LinkDiagram, mv: Move) -> LinkDiagram:
    crossings, pairs = _raw(d)
    site = d.dart_site
    loops = d.free_loops
    fresh = count(d.n_darts)
    kind = mv.kind

    if kind == R1_MINUS:
        (t,) = mv.site
        if not 0 <= t < d.n_darts or d.face_next(t) != t:
            raise IllegalMoveError("R1- site is not a monogon")
        crossings, pairs, loops = _splice(crossings, pairs, {site[t][0]}, loops)

    elif kind == R2_MINUS:
        a, b = mv.site
        if (
            not (0 <= a < d.n_darts and 0 <= b < d.n_darts)
            or d.face_next(a) != b
            or d.face_next(b) != a
            or site[a][0] == site[b][0]
            or _level(d, a) != _level(d, a ^ 1)
        ):
            raise IllegalMoveError("R2- site is not a removable bigon")
        crossings, pairs, loops = _splice(crossings, pairs, {site[a][0], site[b][0]}, loops)

    elif kind == R3:
        f = mv.site
        if (
            len(f) != 3
            or any(not 0 <= t < d.n_darts for t in f)
            or any(d.face_next(f[i]) != f[(i + 1) % 3] for i in range(3))
            or len({site[t][0] for t in f}) != 3
            or not any(_level(d, t) == _level(d, t ^ 1) for t in f)
        ):
            raise IllegalMoveError("R3 site is not a legal triangle")
        pairs = _r3_pairs(d, f, pairs)

    elif kind == R1_PLUS:
        (t,) = mv.site
        a, b, c, e = next(fresh), next(fresh), next(fresh), next(fresh)
        # counterclockwise a, b, c, e = NE, NW, SW, SE; loop joins NE-NW
        x = [a, b, c, e] if mv.variant == 0 else [b, c, e, a]
        crossings.append(x)
        pairs[a], pairs[b] = b, a
        if t == FREE_LOOP:
            if not loops:
                raise IllegalMoveError("no crossingless loop to kink")
            loops -= 1
            pairs[c], pairs[e] = e, c
        else:
            if not 0 <= t < d.n_darts:
                raise IllegalMoveError("R1+ site dart out of range")
            q = t ^ 1
            pairs[t], pairs[c] = c, t
            pairs[q], pairs[e] = e, q

    elif kind == R2_PLUS:
        p, r = mv.site
        if (
            not (0 <= p < d.n_darts and 0 <= r < d.n_darts)
            or p >> 1 == r >> 1
            or r not in _face_of(d, p)
        ):
            raise IllegalMoveError("R2+ darts do not share a face")
        pairs = _r2_plus(crossings, pairs, p, r, mv.variant, fresh)

    else:
        raise IllegalMoveError(f"unknown move kind {kind!r}")

    out, _ = build_diagram(crossings, pairs, loops)
    return out


def _face_of(d: LinkDiagram, t: int) -> tuple[int, ...]:
    cyc = [t]
    u = d.face_next(t)
    while u != t:
        cyc.append(u)
        u = d.face_next(u)
    return tuple(cyc)


def _r3_pairs(d: LinkDiagram, face, pairs):
    """Each strand crossing the triangle swaps the order of its two triangle
    crossings: internal darts take over the external connections, and the two
    external darts of the strand are joined."""
    through = d._through
    role = {}
    internal = []
    for t in face:
        q = t ^ 1
        p_ext, q_ext = through[t], through[q]
        role[p_ext] = q
        role[q_ext] = t
        internal.append((p_ext, q_ext))
    new = dict(pairs)
    done = set()
    for ext, inner in role.items():
        y = pairs[ext]
        if ext in done:
            continue
        if y in role:
            new[inner] = role[y]
            new[role[y]] = inner
            done.add(y)
        else:
            new[inner] = y
            new[y] = inner
        done.add(ext)
    for p_ext, q_ext in internal:
        new[p_ext] = q_ext
        new[q_ext] = p_ext
    return new


def _r2_plus(crossings, pairs, p, r, variant, fresh):
    """Push a finger of edge ``p`` across edge ``r`` inside their common face.

    Picture the face above ``p`` (running east) and below ``r`` (running
    west); the finger rises from ``p`` through ``r`` at X1 (west) and X2 (east).
    """
    p_end, r_end = pairs[p], pairs[r]
    x1 = {k: next(fresh) for k in ("ei_a", "ei_tip", "ej_mid", "ej_b")}
    x2 = {k: next(fresh) for k in ("ei_tip", "ei_b", "ej_a", "ej_mid")}
    c1 = [x1["ej_mid"], x1["ei_tip"], x1["ej_b"], x1["ei_a"]]
    c2 = [x2["ej_a"], x2["ei_tip"], x2["ej_mid"], x2["ei_b"]]
    if variant == 1:  # finger passes under
        c1 = c1[1:] + c1[:1]
        c2 = c2[1:] + c2[:1]
    crossings.append(c1)
    crossings.append(c2)
    new = dict(pairs)
    links = [
        (p, x1["ei_a"]),
        (x1["ei_tip"], x2["ei_tip"]),
        (x2["ei_b"], p_end),
        (r, x2["ej_a"]),
        (x2["ej_mid"], x1["ej_mid"]),
        (x1["ej_b"], r_end),
    ]
    for a, b in links:
        new[a] = b
        new[b] = a
    return new


# -- canonical codes -----------------------------------------------------------


def _part_code(d: LinkDiagram, part: tuple[int, ...]) -> tuple[int, ...]:
    site = d.dart_site
    xs = d.crossings
    best = None
    for ci in part:
        for r in xs[ci].darts:
            label = {ci: 0}
            ref_pos = {ci: site[r][1]}
            queue = [ci]
            code: list[int] = []
            qi = 0
            abort = False
            while qi < len(queue):
                x = queue[qi]
                qi += 1
                p0 = ref_pos[x]
                darts = xs[x].darts
                code.append(p0 % 2)
                for k in range(4):
                    y, py = site[darts[(p0 + k) % 4] ^ 1]
                    if y not in label:
                        label[y] = len(queue)
                        ref_pos[y] = py
                        queue.append(y)
                    code.append(label[y])
                    code.append((py - ref_pos[y]) % 4)
                if best is not None:
                    # prune: compare the prefix built so far
                    n = len(code)
                    pre = best[:n]
                    if code > pre:
                        abort = True
                        break
                    if code < pre:
                        best = None
            if abort:
                continue
            if best is None or code < best:
                best = code
    return tuple(best or ())


def canonical_code(d: LinkDiagram) -> bytes:
    """Code equal for diagrams isomorphic as decorated planar maps.

    Only orientation-preserving relabelings are allowed, so a diagram and its
    mirror image (or its planar reflection) generally get different codes.
    Component orientations are ignored.
    """
    codes = sorted(_part_code(d, part) for part in d.parts)
    chunks = [",".join(map(str, c)) for c in codes]
    chunks.append(f"O{d.free_loops}")
    return ";".join(chunks).encode()
