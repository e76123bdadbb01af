import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tightclosure.rings import present_ring  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


def fermat(p):
    return present_ring(p, ["x", "y", "z"], relations=[lambda x, y, z: x**3 + y**3 - z**3], domain=True)


def toric(p=5):
    """k[s^4, s^3 t, s t^3, t^4] presented by its toric relations (depth 1, dim 2)."""
    rels = [lambda a, b, c, d: b * c - a * d,
            lambda a, b, c, d: b**3 - a**2 * c,
            lambda a, b, c, d: c**3 - b * d**2,
            lambda a, b, c, d: a * c**2 - b**2 * d]
    return present_ring(p, ["a", "b", "c", "d"], relations=rels, domain=True)


def cusp(p=5):
    return present_ring(p, ["a", "b"], weights=[2, 3], relations=[lambda a, b: b**2 - a**3], domain=True)


@pytest.fixture(scope="session")
def fermat7():
    return fermat(7)


@pytest.fixture(scope="session")
def golden():
    import json

    def load(name):
        return json.loads((GOLDEN / f"{name}.json").read_text())
    return load


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
