import pytest

from bi_notation.config import get_settings
from bi_notation.corpus import sample_proofs
from bi_notation.sexpr import render
from shared_utilities import DerivationGenerator


@pytest.fixture
def literal_cut_text():
    return "(cut (eq 0 0) (ax (seq (eq 0 0))) (ax (seq (eq 0 0) (not (eq 0 0)))))"


@pytest.fixture
def proofs():
    return sample_proofs()


@pytest.fixture
def literal_cut(proofs):
    return proofs["literal-cut"]


@pytest.fixture
def write_term(tmp_path):
    """Write a derivation (or raw text) to a file and return its path"""

    def write(term, name="term.sexp"):
        path = tmp_path / name
        text = term if isinstance(term, str) else render(term, pretty=True)
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def generator():
    return DerivationGenerator(seed=7)


@pytest.fixture
def env_settings(monkeypatch):
    """Set BI_* variables for one test and refresh the cached settings"""

    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(key, value)
        get_settings.cache_clear()
        return get_settings()

    yield apply
    get_settings.cache_clear()
