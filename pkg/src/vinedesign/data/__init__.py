"""Bundled example problems."""
from importlib import resources
from pathlib import Path

SCENARIOS = ("four_targets",)


def scenario_path(name: str) -> Path:
    """Filesystem path of a bundled problem file."""
    if name not in SCENARIOS:
        raise KeyError(f"unknown scenario {name!r}; available: {', '.join(SCENARIOS)}")
    return Path(resources.files(__package__) / f"{name}.json")


def four_targets_path() -> Path:
    """The four-target demonstration problem."""
    return scenario_path("four_targets")
