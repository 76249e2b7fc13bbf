import json
from pathlib import Path

import pytest

from com2match.model_ir import parse_model
from com2match.resources import load_lexicon, load_ontology

FIXTURES = Path(__file__).parent / "fixtures"


def pytest_terminal_summary(terminalreporter):
    import sys

    module = (sys.modules.get("test_acceptance")
              or sys.modules.get("tests.test_acceptance"))
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, outcome = results[number]
        terminalreporter.write_line(f"criterion {number} [{title}]: {outcome}")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def m1():
    return parse_model((FIXTURES / "m1.json").read_text())


@pytest.fixture(scope="session")
def m2():
    return parse_model((FIXTURES / "m2.json").read_text())


@pytest.fixture(scope="session")
def bank_ontology():
    return load_ontology((FIXTURES / "bank_ontology.json").read_text())


@pytest.fixture(scope="session")
def bank_lexicon():
    return load_lexicon(
        (FIXTURES / "synonyms.tsv").read_text(),
        (FIXTURES / "abbreviations.tsv").read_text(),
        (FIXTURES / "acronyms.tsv").read_text(),
    )


@pytest.fixture(scope="session")
def session_payload(m1, m2):
    return {
        "left": json.loads((FIXTURES / "m1.json").read_text()),
        "right": json.loads((FIXTURES / "m2.json").read_text()),
        "ontology": json.loads((FIXTURES / "bank_ontology.json").read_text()),
        "synonyms": (FIXTURES / "synonyms.tsv").read_text(),
        "abbreviations": (FIXTURES / "abbreviations.tsv").read_text(),
        "acronyms": (FIXTURES / "acronyms.tsv").read_text(),
    }
