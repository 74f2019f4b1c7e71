import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from filesem import lexicon, model
from filesem.corpus import default_corpus

sys.path.insert(0, str(Path(__file__).parent))

# seeded and reproducible: every property run draws the same cases
settings.register_profile(
    "seeded", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("seeded")

DATA = default_corpus()


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def lex():
    return lexicon.load()


def load_model(name):
    return model.load(DATA / f"{name}.model")


@pytest.fixture(scope="session")
def hotel():
    return load_model("hotel")


@pytest.fixture(scope="session")
def team():
    return load_model("team")


# outcome of every test call in this session, keyed by "module::name"
OUTCOMES = {}


def pytest_collection_modifyitems(items):
    # acceptance last, so it can reuse the property suites' outcomes
    items.sort(key=lambda item: item.module.__name__ == "test_acceptance")


def pytest_runtest_logreport(report):
    if report.when == "call":
        module, _, name = report.nodeid.rpartition("::")
        OUTCOMES[f"{module.rsplit('/', 1)[-1][:-3]}::{name}"] = report.outcome
