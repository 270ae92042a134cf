from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def java_fixture_dir() -> Path:
    return FIXTURES / "java"


@pytest.fixture(scope="session")
def c_fixture_dir() -> Path:
    return FIXTURES / "c"


@pytest.fixture(scope="session")
def broken_fixture_dir() -> Path:
    return FIXTURES / "broken"


@pytest.fixture(scope="session")
def golden_pairs() -> str:
    return (FIXTURES / "golden_pairs.csv").read_text(encoding="utf-8")
