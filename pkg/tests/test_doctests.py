import doctest

import pytest

import bnhecke.cosets
import bnhecke.group_algebra
import bnhecke.hecke
import bnhecke.partitions
import bnhecke.permutations
import bnhecke.universal


@pytest.mark.parametrize(
    "module",
    [
        bnhecke.partitions,
        bnhecke.permutations,
        bnhecke.cosets,
        bnhecke.group_algebra,
        bnhecke.hecke,
        bnhecke.universal,
    ],
    ids=lambda m: m.__name__,
)
def test_docstring_examples(module):
    result = doctest.testmod(module)
    assert result.failed == 0
