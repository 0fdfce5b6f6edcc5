import math

import pytest
from hypothesis import strategies as st

from jtphom.herm import Herm2

finite = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


@st.composite
def herm2(draw):
    return Herm2(draw(finite), draw(finite), complex(draw(finite), draw(finite)))


def close(X: Herm2, Y: Herm2, tol: float = 1e-12) -> bool:
    return (X - Y).fro <= tol * max(1.0, Y.fro)


@pytest.fixture
def r2():
    return 1.0 / math.sqrt(2.0)
