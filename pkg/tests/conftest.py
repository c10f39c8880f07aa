import pytest

from lgcarpet import synth

SPEC_DIR = "specs"


@pytest.fixture(scope="session")
def cd():
    return synth.cantor_dust()


@pytest.fixture(scope="session")
def mcm():
    return synth.three_map_carpet()


@pytest.fixture(scope="session")
def mixed():
    return synth.mixed_rows()


@pytest.fixture(scope="session")
def touching():
    return synth.touching_columns()
