import random

import pytest

from ascend.catalog import load_catalog
from ascend.generators import random_braid_diagram

TREFOIL = "X(6,4,1,3) X(4,2,5,1) X(2,6,3,5)"
HOPF = "X(2,4,1,3) X(3,1,4,2)"


@pytest.fixture(scope="session")
def catalog():
    return {e.name: e for e in load_catalog()}


def random_corpus(n, seed=7, max_crossings=10, max_components=3):
    rng = random.Random(seed)
    return [random_braid_diagram(rng, max_crossings, max_components) for _ in range(n)]
