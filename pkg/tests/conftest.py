import pytest

from vinedesign import SearchParams, Target


@pytest.fixture
def four_targets():
    """The bundled demonstration scenario: four goals around a fixed base."""
    return [
        Target.from_degrees(0.4, 0.65, 90.0),
        Target.from_degrees(0.8, 0.6, 0.0),
        Target.from_degrees(0.9, 0.4, -30.0),
        Target.from_degrees(0.6, 0.25, 15.0),
    ]


@pytest.fixture
def fast_params():
    """Small search budget for unit tests that only need plausibility."""
    return SearchParams(samples=60, iterations=120, convergence_window=30, seed=7)
