import pathlib

import pytest

from supercolor import GroundSet, SetFn, load_instance

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def example_path() -> pathlib.Path:
    return DATA / "example1.json"


@pytest.fixture(scope="session")
def example_instance(example_path):
    """The worked ten-element instance: g1 a six-set function, g2 empty."""
    return load_instance(example_path)


@pytest.fixture(scope="session")
def example_g(example_instance) -> SetFn:
    return example_instance[0]


@pytest.fixture()
def abc_ground() -> GroundSet:
    return GroundSet(("a", "b", "c"))


def names_of_sets(sets):
    return {tuple(x.names) for x in sets}
