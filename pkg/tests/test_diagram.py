import pytest

from ascend.diagram import (
    DiagramError,
    Marking,
    PDSyntaxError,
    ascending_count,
    components,
    descending,
    enumerate_markings,
    marking_count,
    marking_from_json,
    marking_to_json,
    min_ascending,
    mirror,
    parse_pd,
    reverse_marking,
    switch_crossing,
    traverse,
)
from ascend.bounds import crossing_upper_bound
from conftest import HOPF, TREFOIL, random_corpus
from oracles import brute_ascending_counts, jones, jones_up_to_mirror

CORPUS = random_corpus(60, seed=11)


def unlink_jones(n):
    # (-A^2 - A^-2)^(n-1)
    poly = {0: 1}
    for _ in range(n - 1):
        out = {}
        for e, c in poly.items():
            for de in (2, -2):
                out[e + de] = out.get(e + de, 0) - c
        poly = {e: c for e, c in out.items() if c}
    return poly


class TestParse:
    def test_trefoil(self):
        d = parse_pd(TREFOIL)
        assert (d.n_crossings, d.n_components) == (3, 1)
        assert d.to_pd() == TREFOIL

    def test_roundtrip(self):
        for d in CORPUS:
            again = parse_pd(d.to_pd())
            assert again.to_pd() == d.to_pd()
            if d.is_knot:
                assert again == d

    def test_bare_o_needs_separator(self):
        with pytest.raises(PDSyntaxError):
            parse_pd("OO")

    def test_whitespace_and_separators(self):
        d = parse_pd(" X( 6 ,4,1,3)X(4,2,5,1)\n X(2,6,3,5) ")
        assert d.to_pd() == TREFOIL

    def test_free_loops(self):
        assert parse_pd("O O").n_components == 2
        d = parse_pd(HOPF + " | O")
        assert (d.n_components, d.free_loops) == (3, 1)
        assert parse_pd("").n_components == 0

    def test_syntax_error_position(self):
        with pytest.raises(PDSyntaxError) as ei:
            parse_pd("X(6,4,1,3) X(4,2,5)")
        assert ei.value.position == 11

    def test_unpaired_labels(self):
        with pytest.raises(DiagramError, match="non-involutive"):
            parse_pd("X(1,2,3,4)")

    def test_label_used_three_times(self):
        with pytest.raises(DiagramError):
            parse_pd("X(1,1,1,2)")

    def test_nonplanar(self):
        with pytest.raises(DiagramError, match="planar"):
            parse_pd("X(2,1,2,1)")

    def test_kink(self):
        d = parse_pd("X(1,1,2,2)")
        assert (d.n_crossings, d.n_components) == (1, 1)
        assert min_ascending(d)[0] == 0


class TestComponents:
    def test_every_dart_once(self):
        for d in CORPUS:
            darts = [t for c in components(d) for t in c]
            assert sorted(darts) == list(range(d.n_darts))

    def test_hopf(self):
        d = parse_pd(HOPF)
        assert [len(c) for c in d.components] == [4, 4]

    def test_through_is_opposite(self):
        d = parse_pd(TREFOIL)
        for comp in d.components:
            for a, b in zip(comp[::2], comp[1::2]):
                assert b == a ^ 1


class TestTraverse:
    def test_trefoil_alternates(self):
        d = parse_pd(TREFOIL)
        m = Marking((0,), (0,))
        strands = [v.strand for v in traverse(d, m)]
        assert len(strands) == 6
        assert all(a != b for a, b in zip(strands, strands[1:]))

    def test_first_visits_cover_crossings(self):
        for d in CORPUS[:20]:
            for m in list(enumerate_markings(d))[:10]:
                firsts = [v.crossing for v in traverse(d, m) if v.first_visit]
                assert sorted(firsts) == list(range(d.n_crossings))

    def test_bad_marking(self):
        d = parse_pd(HOPF)
        with pytest.raises(DiagramError):
            traverse(d, Marking((0,), (0,)))
        with pytest.raises(DiagramError):
            traverse(d, Marking((0, 1), (0, 1)))
        with pytest.raises(DiagramError):
            traverse(d, Marking((0, 99), (1, 0)))


class TestAscending:
    def test_matches_gauss_oracle(self):
        for d in CORPUS:
            ours = sorted(ascending_count(d, m) for m in enumerate_markings(d))
            assert ours == sorted(brute_ascending_counts(d.to_pd()))

    def test_marking_count(self):
        for d in CORPUS[:10]:
            assert marking_count(d) == sum(1 for _ in enumerate_markings(d))

    def test_min_is_first_minimum(self):
        for d in CORPUS[:25]:
            value, m = min_ascending(d)
            first = min(enumerate_markings(d), key=lambda mm: ascending_count(d, mm))
            assert (value, m) == (ascending_count(d, first), first)

    def test_examples(self):
        assert min_ascending(parse_pd(TREFOIL))[0] == 1
        assert min_ascending(parse_pd(HOPF))[0] == 1
        assert min_ascending(parse_pd("O"))[0] == 0
        assert min_ascending(parse_pd("O O O"))[0] == 0

    def test_reversal_identity(self):
        for d in CORPUS:
            for m in enumerate_markings(d):
                assert ascending_count(d, m) + ascending_count(d, reverse_marking(d, m)) == d.n_crossings

    def test_crossing_bound(self):
        for d in CORPUS:
            assert min_ascending(d)[0] <= crossing_upper_bound(d.n_crossings, d.is_knot)

    def test_mirror_invariant(self):
        for d in CORPUS[:20]:
            assert min_ascending(mirror(d))[0] == min_ascending(d)[0]


class TestDescending:
    def test_first_visits_over_and_idempotent(self):
        for d in CORPUS[:30]:
            for m in list(enumerate_markings(d))[:8]:
                res = descending(d, m)
                assert res.ascending_count == ascending_count(d, m)
                assert all(v.strand == "over" for v in traverse(res.descending, m) if v.first_visit)
                again = descending(res.descending, m)
                assert again.changed == frozenset() and again.descending == res.descending

    def test_descending_is_trivial(self):
        for d in CORPUS[:30]:
            m = next(enumerate_markings(d))
            assert jones(descending(d, m).descending) == unlink_jones(d.n_components)


class TestSwitchMirror:
    def test_switch_twice(self):
        d = parse_pd(TREFOIL)
        assert switch_crossing(switch_crossing(d, 1), 1) == d
        with pytest.raises(DiagramError):
            switch_crossing(d, 3)

    def test_switch_keeps_darts(self):
        d = parse_pd(TREFOIL)
        s = switch_crossing(d, 0)
        assert s.components == d.components
        assert s.crossings[0].over_sign == -d.crossings[0].over_sign

    def test_mirror_jones(self):
        d = parse_pd(TREFOIL)
        j, jm = jones(d), jones(mirror(d))
        assert j != jm and jm == {-e: c for e, c in j.items()}
        assert jones_up_to_mirror(d) == jones_up_to_mirror(mirror(d))


class TestMarkingJson:
    def test_roundtrip(self):
        for d in CORPUS[:10]:
            for m in list(enumerate_markings(d))[:5]:
                assert marking_from_json(marking_to_json(m)) == m

    def test_signed_labels(self):
        assert marking_to_json(Marking((0, 3, None), (2, 0, 1))) == {"basepoints": [1, -2, None], "order": [2, 0, 1]}
        with pytest.raises(DiagramError):
            marking_from_json({"basepoints": [0], "order": [0]})


class TestFaces:
    def test_euler(self):
        for d in CORPUS:
            faces = d.face_cycles()
            assert sum(len(f) for f in faces) == d.n_darts
            # each connected part contributes c_i + 2 faces
            assert len(faces) == sum(len(p) + 2 for p in d.parts)

    def test_trefoil_faces(self):
        sizes = sorted(len(f) for f in parse_pd(TREFOIL).face_cycles())
        assert sizes == [2, 2, 2, 3, 3]
