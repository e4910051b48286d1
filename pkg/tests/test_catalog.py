import json

import pytest

from ascend.bounds import certify_entry
from ascend.catalog import CatalogError, load_catalog, parse_catalog, validate_witnesses
from ascend.diagram import ascending_count, min_ascending, switch_crossing
from conftest import TREFOIL
from oracles import alexander, jones_up_to_mirror

# standard Alexander polynomials (Rolfsen table), coefficients from the top
ALEXANDER = {
    "3_1": [1, -1, 1], "4_1": [1, -3, 1], "5_1": [1, -1, 1, -1, 1], "5_2": [2, -3, 2],
    "6_1": [2, -5, 2], "6_2": [1, -3, 3, -3, 1], "6_3": [1, -3, 5, -3, 1],
    "7_1": [1, -1, 1, -1, 1, -1, 1], "7_2": [3, -5, 3], "7_3": [2, -3, 3, -3, 2],
    "7_4": [4, -7, 4], "7_5": [2, -4, 5, -4, 2], "7_6": [1, -5, 7, -5, 1], "7_7": [1, -5, 9, -5, 1],
    "8_1": [3, -7, 3], "8_2": [1, -3, 3, -3, 3, -3, 1], "8_3": [4, -9, 4], "8_4": [2, -5, 5, -5, 2],
    "8_5": [1, -3, 4, -5, 4, -3, 1], "8_6": [2, -6, 7, -6, 2], "8_7": [1, -3, 5, -5, 5, -3, 1],
    "8_8": [2, -6, 9, -6, 2], "8_9": [1, -3, 5, -7, 5, -3, 1], "8_10": [1, -3, 6, -7, 6, -3, 1],
    "8_11": [2, -7, 9, -7, 2], "8_12": [1, -7, 13, -7, 1], "8_13": [2, -7, 11, -7, 2],
    "8_14": [2, -8, 11, -8, 2], "8_15": [3, -8, 11, -8, 3], "8_16": [1, -4, 8, -9, 8, -4, 1],
    "8_17": [1, -4, 8, -11, 8, -4, 1], "8_18": [1, -5, 10, -13, 10, -5, 1],
    "8_19": [1, -1, 0, 1, 0, -1, 1], "8_20": [1, -2, 3, -2, 1], "8_21": [1, -4, 5, -4, 1],
    "9_3": [2, -3, 3, -3, 3, -3, 2], "9_4": [3, -5, 5, -5, 3], "9_6": [2, -4, 5, -5, 5, -4, 2],
    "9_7": [3, -7, 9, -7, 3],
}

# the published table: name -> (a, u, b); a ranges as (lo, hi)
TABLE = {
    "3_1": (1, 1, 2), "4_1": (1, 1, 2), "5_1": (2, 2, 2), "5_2": (1, 1, 2), "6_1": (1, 1, 2),
    "6_2": (2, 1, 2), "6_3": (2, 1, 2), "7_1": (3, 3, 2), "7_2": (1, 1, 2), "7_3": (2, 2, 2),
    "7_4": (2, 2, 2), "7_5": (2, 2, 2), "7_6": (2, 1, 2), "7_7": (2, 1, 2), "8_1": (1, 1, 2),
    "8_2": ((2, 3), 2, 2), "8_3": (2, 2, 2), "8_4": (2, 2, 2), "8_5": ((2, 3), 2, 3),
    "8_6": (2, 2, 2), "8_7": ((2, 3), 1, 2), "8_8": (2, 2, 2), "8_9": ((2, 3), 1, 2),
    "8_10": ((2, 3), 2, 3), "8_11": (2, 1, 2), "8_12": (2, 2, 2), "8_13": (2, 1, 2),
    "8_14": (2, 1, 2), "8_15": (2, 2, 3), "8_16": ((2, 3), 2, 3), "8_17": ((2, 3), 1, 3),
    "8_18": (2, 2, 2), "8_19": (3, 3, 3), "8_20": (2, 1, 3), "8_21": (2, 1, 3),
}
EXTRAS = {"9_3": 3, "9_4": 2, "9_6": 3, "9_7": 2}


def line(**kw):
    base = {"name": "3_1", "pd": TREFOIL, "c": 3, "u": 1, "b": 2, "twist": True,
            "a_lo": 1, "a_hi": 1, "witness_pd": None, "witness_marking": None}
    base.update(kw)
    return json.dumps(base)


def test_shape(catalog):
    core = {n for n, e in catalog.items() if not e.extra}
    assert core == set(TABLE)
    assert {n for n, e in catalog.items() if e.extra} == set(EXTRAS)
    assert all(e.n_components == 1 for e in catalog.values())


def test_table_columns_verbatim(catalog):
    for name, (a, u, b) in TABLE.items():
        e = catalog[name]
        assert (e.unknotting, e.bridge) == (u, b), name
        assert e.known_a == a, name
        assert e.crossing_number == int(name.split("_")[0])
    for name, a in EXTRAS.items():
        assert catalog[name].known_a == a


def test_examples(catalog):
    t = catalog["3_1"]
    assert (t.known_a, t.unknotting, t.bridge) == (1, 1, 2)
    e = catalog["8_10"]
    assert (e.known_a, e.unknotting) == ((2, 3), 2)


def test_twist_flags(catalog):
    twist = {n for n, e in catalog.items() if e.is_twist}
    assert twist == {"3_1", "4_1", "5_2", "6_1", "7_2", "8_1"}
    assert all(catalog[n].known_a == 1 for n in twist)


def test_knot_types_by_alexander(catalog):
    for name, e in catalog.items():
        assert [int(c) for c in alexander(e.diagram).all_coeffs()] == ALEXANDER[name], name


def test_witnesses_realize_the_same_knot(catalog):
    for name, e in catalog.items():
        w = e.witness()
        if w is None:
            continue
        d, m = w
        assert jones_up_to_mirror(d) == jones_up_to_mirror(e.diagram), name
        assert [int(c) for c in alexander(d).all_coeffs()] == ALEXANDER[name], name
        assert ascending_count(d, m) == e.a_hi


def test_expected_witness_list(catalog):
    stored = {n for n, e in catalog.items() if e.witness_pd and not e.extra}
    assert stored == {"5_2", "6_1", "7_2", "7_3", "7_4", "7_5", "7_6", "8_1", "8_3", "8_4",
                      "8_6", "8_8", "8_11", "8_12", "8_13", "8_14", "8_15"}
    assert min_ascending(catalog["3_1"].diagram)[0] == 1


def test_validate_witnesses(catalog):
    rep = validate_witnesses(catalog.values())
    assert rep.ok and not rep.missing
    assert ("5_2", 1) in rep.checked


def test_corrupted_witness_reported(catalog):
    e = catalog["5_2"]
    d, m = e.witness()
    bad = switch_crossing(d, 0)
    while ascending_count(bad, m) == 1:
        bad = switch_crossing(bad, bad.n_crossings - 1)
    obj = e.to_json() | {"witness_pd": bad.to_pd()}
    rep = validate_witnesses(parse_catalog([json.dumps(obj)]))
    assert rep.mismatches and rep.mismatches[0][0] == "5_2"


def test_missing_witness_flagged(catalog):
    obj = catalog["5_2"].to_json() | {"witness_pd": None, "witness_marking": None}
    assert validate_witnesses(parse_catalog([json.dumps(obj)])).missing == ["5_2"]


def test_every_entry_certifies(catalog):
    for e in catalog.values():
        b = certify_entry(e)
        assert (b.lower, b.upper) == (e.a_lo, e.a_hi), e.name


def test_duplicate_rejected():
    with pytest.raises(CatalogError, match="duplicate"):
        parse_catalog([line(), line()])


@pytest.mark.parametrize(
    "text, match",
    [
        ("{not json", "line 1: invalid JSON"),
        (json.dumps({"name": "x"}), "missing field 'pd'"),
        (line(c=4), "crossings"),
        (line(u=-1), "field 'u'"),
        (line(twist="yes"), "field 'twist'"),
        (line(pd="X(1,2,3,4)"), "'pd' does not parse"),
        (line(a_lo=2), "a_lo"),
        (line(witness_pd=TREFOIL), "together"),
        (line(witness_pd=TREFOIL, witness_marking={"basepoints": [99], "order": [0]}), "witness invalid"),
    ],
)
def test_bad_lines(text, match):
    with pytest.raises(CatalogError, match=match):
        parse_catalog([text])


def test_comments_and_blank_lines(tmp_path):
    p = tmp_path / "k.jsonl"
    p.write_text("# header\n\n" + line() + "\n")
    assert [e.name for e in load_catalog(p)] == ["3_1"]
