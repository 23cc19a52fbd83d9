import pytest

from syntaug.augment import check_eligibility
from syntaug.corpusio import load_parsed_bisentences

from treegen import FIXTURES


@pytest.fixture
def table4_pairs():
    pairs, _, _ = load_parsed_bisentences(
        FIXTURES / "table4.src.conllu", FIXTURES / "table4.tgt.conllu"
    )
    return pairs


@pytest.fixture
def table4_eligible(table4_pairs):
    eligible = [check_eligibility(p) for p in table4_pairs]
    assert all(eligible)
    return eligible
