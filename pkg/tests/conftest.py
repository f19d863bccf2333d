from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from ratioref.spaces import Finite

F = Fraction


@pytest.fixture
def three():
    """The three-object dictionary {1/4, 1, 4} labelled o1, o2, o3."""
    return Finite.from_scales([F(1, 4), F(1), F(4)])


@pytest.fixture
def rng():
    return np.random.default_rng(0x5EED)


def rationals(top=64):
    return st.builds(Fraction, st.integers(1, top), st.integers(1, top))


positive_floats = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False,
                            allow_infinity=False)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
