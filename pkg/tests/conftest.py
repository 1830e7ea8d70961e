import numpy as np
import pytest

from kts import BasisKind, TensorPoly
from kts.verify import reference_instance


def power_system(rows):
    """Power-basis system from a ``{(i, j): (a, b)}`` coefficient map."""
    m = max(i for i, _ in rows)
    n = max(j for _, j in rows)
    c = np.zeros((m + 1, n + 1, 2))
    for (i, j), value in rows.items():
        c[i, j] = value
    return TensorPoly(BasisKind.POWER, c)


@pytest.fixture
def border_system():
    # (u^2 - .25, v - .8): zeros at (.5, .8) and (-.5, .8)
    return power_system({(0, 0): (-0.25, -0.8), (2, 0): (1.0, 0.0), (0, 1): (0.0, 1.0)})


@pytest.fixture
def reference():
    return reference_instance()


@pytest.fixture
def cubic_system():
    # (u^3 - 2.2u^2 + 1.55u - .35, v^2 - .7v + .1), zero at (.5, .5)
    return power_system({(0, 0): (-0.35, 0.1), (1, 0): (1.55, 0.0), (2, 0): (-2.2, 0.0),
                         (3, 0): (1.0, 0.0), (0, 1): (0.0, -0.7), (0, 2): (0.0, 1.0)})


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
