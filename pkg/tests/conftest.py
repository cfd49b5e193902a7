import sys
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from greenmackey.groups import builtin_group  # noqa: E402
from greenmackey.twisted import TwistedCategory  # noqa: E402
from greenmackey.zalgebra import builtin_action, builtin_ring, trivial_action  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@lru_cache(maxsize=None)
def group(name):
    return builtin_group(name)


@lru_cache(maxsize=None)
def category(group_name, ring_name="Z[i]", trivial=False):
    G = group(group_name)
    R = builtin_ring(ring_name, G.degree)
    action = trivial_action(G, R) if trivial else builtin_action(G, R)
    return TwistedCategory(action)


def sub(G, order, k=0):
    """The ``k``-th subgroup of the given order."""
    return [H for H in G.subgroups if H.order == order][k]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.line(k))
