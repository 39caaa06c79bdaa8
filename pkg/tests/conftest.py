import time

import pytest

from adiankit.diagram import random_diagram
from adiankit.presentation import make_presentation

SAMPLE_PRESENTATIONS = [
    make_presentation(["a", "b"], [(("a", "b", "a"), ("b", "a", "b"))]),
    make_presentation(["a", "b", "c"], [(("a", "b"), ("c",)), (("b", "a"), ("c",))]),
    make_presentation(["a", "b", "c"], [(("a", "b", "c"), ("b", "a"))]),
]


@pytest.fixture(scope="session")
def samples():
    return SAMPLE_PRESENTATIONS


@pytest.fixture(scope="session")
def corpus():
    """The 500-diagram acceptance corpus: seeds 0-499, cells 1-12, cycling
    through the sample Adian presentations.  Returns (build_seconds, items)."""
    t0 = time.perf_counter()
    items = []
    for seed in range(500):
        p = SAMPLE_PRESENTATIONS[seed % 3]
        cells = (seed % 12) + 1
        items.append((p, random_diagram(p, cells, seed)))
    return time.perf_counter() - t0, items


@pytest.fixture()
def two_cell_pres(samples):
    return samples[1]
