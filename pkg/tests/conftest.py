import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from constsymp.exactla import Mat

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_ints = st.integers(min_value=-3, max_value=3)
small_rats = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def matrices(draw, rows=None, cols=None, elements=small_rats, max_dim=4):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    data = [[draw(elements) for _ in range(c)] for _ in range(r)]
    return Mat(data, rows=r, cols=c)


@pytest.fixture
def rng():
    return random.Random(20240531)
