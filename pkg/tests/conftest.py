import pathlib

import pytest

from qualex.corpus import load_corpus

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def corpus200():
    return load_corpus(DATA / "corpus200")


@pytest.fixture(scope="session")
def corpus500():
    return load_corpus(DATA / "corpus500")


@pytest.fixture(scope="session")
def corpus200_path():
    return DATA / "corpus200"


@pytest.fixture(scope="session")
def corpus500_path():
    return DATA / "corpus500"


@pytest.fixture(scope="session")
def thresholds200_path():
    return DATA / "thresholds200.csv"
