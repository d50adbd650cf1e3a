"""Shared corpora for the suite; sizes follow the acceptance criteria.

Randomised corpora honour ORDLOC_SEED so failures reproduce exactly.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ordloc.frames import FinFrame
from ordloc.generators import (all_posets, all_preorders, all_topologies,
                               random_frame, random_ordered_locale,
                               random_ordered_space, seed_from_env)
from ordloc.spaces import FinSpace, OrderedSpace
from oracles import downset_lattice

FIXTURE_DIR = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def seed() -> int:
    return seed_from_env()


@pytest.fixture(scope="session")
def preorders_le3():
    return [p for n in (1, 2, 3) for p in all_preorders(n)]


@pytest.fixture(scope="session")
def ordered_le3():
    """Every topology paired with every preorder, carriers of 1..3 points."""
    out = []
    for n in (1, 2, 3):
        tops = all_topologies(n)
        pres = all_preorders(n)
        out += [OrderedSpace(s, p) for s in tops for p in pres]
    return out


@pytest.fixture(scope="session")
def random_ordered_45(seed):
    rng = random.Random(seed + 1)
    return [random_ordered_space(rng, rng.choice((4, 5)), max_opens=14)
            for _ in range(300)]


@pytest.fixture(scope="session")
def lattice_fixtures():
    """Distributive lattices up to 20 elements: named ones plus every
    down-set lattice of a poset on up to 4 points, plus a few larger."""
    chains = [FinFrame.from_opens([(1 << k) - 1 for k in range(n + 1)])
              for n in range(1, 6)]
    booleans = [FinFrame.from_opens(list(range(1 << n))) for n in (1, 2, 3, 4)]
    small = [downset_lattice(p) for n in (1, 2, 3, 4) for p in all_posets(n)]
    large = []
    for p in all_posets(5):
        lat = downset_lattice(p)
        if 17 <= lat.size <= 20:
            large.append(lat)
        if len(large) >= 6:
            break
    return chains + booleans + small + large


@pytest.fixture(scope="session")
def random_frames(seed):
    rng = random.Random(seed + 2)
    return [random_frame(rng, max_points=5, max_elements=12) for _ in range(200)]


@pytest.fixture(scope="session")
def random_locales(seed):
    rng = random.Random(seed + 3)
    return [random_ordered_locale(rng, max_elements=16) for _ in range(300)]


@pytest.fixture(scope="session")
def posets_le5():
    return {n: all_posets(n) for n in (1, 2, 3, 4, 5)}


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR
