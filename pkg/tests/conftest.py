import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from dcont.laws import Bounds  # noqa: E402
from dcont.values import Symbol  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

EXAMPLES = os.path.join(os.path.dirname(__file__), "..", "src", "dcont", "examples")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


@pytest.fixture
def bounds():
    return Bounds(6, 8, 3)


def syms(text: str):
    return [Symbol(c) for c in text.split()]
