from pathlib import Path

import pytest

from riskalign.archimate_xml import import_archimate
from riskalign.builtin_tables import builtin_ruleset
from riskalign.classify import apply_review, classify_model, parse_overlay
from riskalign.register import parse_risk_catalog

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def lab_model():
    data = (FIXTURES / "lab_model.xml").read_bytes()
    return import_archimate(data, "lab_model.xml")


@pytest.fixture(scope="session")
def lab_classification(lab_model):
    return classify_model(builtin_ruleset("archimate21"), lab_model)


@pytest.fixture(scope="session")
def lab_reviewed(lab_classification):
    overlay = parse_overlay((FIXTURES / "lab.overlay").read_text())
    return apply_review(lab_classification, overlay)


@pytest.fixture(scope="session")
def lab_register(lab_reviewed):
    return parse_risk_catalog((FIXTURES / "lab.risk").read_text(), lab_reviewed)
