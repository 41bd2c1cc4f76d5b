import pytest

from emet.defaults import (
    load_default_lexicon,
    load_default_paradigms,
    load_default_rules,
)


@pytest.fixture(scope="session")
def paradigms():
    return load_default_paradigms()


@pytest.fixture(scope="session")
def lex():
    return load_default_lexicon()


@pytest.fixture(scope="session")
def lex_no_priority():
    return load_default_lexicon(include_priority=False)


@pytest.fixture(scope="session")
def rules():
    return load_default_rules()
