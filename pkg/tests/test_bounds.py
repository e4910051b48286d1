import pytest

from ascend.bounds import (
    IntegrityError,
    bridge_lower_bound,
    certify,
    certify_torus,
    crossing_upper_bound,
    torus_ascending,
    torus_proof_markings,
)
from ascend.catalog import CatalogEntry
from ascend.diagram import ascending_count, min_ascending, parse_pd
from ascend.generators import torus_diagram
from conftest import TREFOIL


def entry(name="K", c=3, u=1, b=2, twist=False, lo=1, hi=1, pd=TREFOIL):
    return CatalogEntry(name, pd, c, u, b, twist, lo, hi)


def test_crossing_bound():
    assert crossing_upper_bound(8, True) == 3
    assert crossing_upper_bound(3, True) == 1
    assert crossing_upper_bound(2, False) == 1
    assert crossing_upper_bound(0, True) == 0
    with pytest.raises(ValueError):
        crossing_upper_bound(-1, True)


def test_bridge_and_torus_formulas():
    assert bridge_lower_bound(3, 1) == 2
    with pytest.raises(ValueError):
        bridge_lower_bound(1, 2)
    assert torus_ascending(2, 3) == 1
    assert torus_ascending(4, 7) == 9
    assert torus_ascending(1, 5) == 0
    with pytest.raises(ValueError):
        torus_ascending(2, 4)


def test_certify_examples():
    d = parse_pd(TREFOIL)
    w = (d, min_ascending(d)[1])

    b = certify(entry(u=1, twist=False, lo=2, hi=2, c=6), None)
    assert (b.lower, b.upper, b.exact) == (2, 2, True)  # 6_2: non-twist rule, crossing bound 2
    b = certify(entry(c=7, u=3, lo=3, hi=3))
    assert (b.lower, b.upper, b.lower_source) == (3, 3, "unknotting")
    b = certify(entry(c=8, u=2, lo=2, hi=3))
    assert (b.lower, b.upper, b.exact) == (2, 3, False)
    b = certify(entry(c=3, u=1, twist=True), w)
    assert (b.lower, b.upper, b.upper_source) == (1, 1, "stored-witness")


def test_certify_witness_recomputed():
    from ascend.generators import rational_diagram
    from ascend.search import search_upper_bound

    d = rational_diagram((3, 2))
    rep = search_upper_bound(d, target=1)
    b = certify(entry(c=5, u=1, b=2, twist=True, pd=d.to_pd()), rep)
    assert (b.lower, b.upper, b.upper_source) == (1, 1, "search-witness")


def test_integrity_failure():
    with pytest.raises(IntegrityError, match="exceeds"):
        certify(entry(u=5))


def test_bridge_source():
    b = certify(entry(c=8, u=1, b=3, lo=2, hi=2))
    assert b.lower_source == "bridge"


@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (4, 7)])
def test_torus_proof_markings(p, q):
    d = torus_diagram(p, q)
    ma, mb = torus_proof_markings(p, q, d)
    assert ascending_count(d, ma) + ascending_count(d, mb) == (p - 1) * (q - 1)
    b, _ = certify_torus(p, q)
    assert b.exact and b.lower == torus_ascending(p, q)
