import json
from pathlib import Path

import pytest

from relsc import build_relsc_h, parse_source

DATA_DIR = Path(__file__).parent / "data"
SNIPPET_DIR = DATA_DIR / "snippets"


@pytest.fixture(scope="session")
def factorial_source() -> str:
    return (DATA_DIR / "factorial.java").read_text()


@pytest.fixture(scope="session")
def factorial_unit(factorial_source):
    return parse_source(factorial_source, "factorial.java")


@pytest.fixture(scope="session")
def factorial_graph(factorial_unit):
    return build_relsc_h(factorial_unit)


@pytest.fixture(scope="session")
def factorial_golden() -> dict:
    return json.loads((DATA_DIR / "factorial_golden.json").read_text())


@pytest.fixture(scope="session")
def snippet_units():
    units = []
    for path in sorted(SNIPPET_DIR.glob("*.java")):
        units.append(parse_source(path.read_text(), path.name))
    assert len(units) == 30
    return units


@pytest.fixture(scope="session")
def snippet_graphs(snippet_units):
    return [build_relsc_h(u) for u in snippet_units]
