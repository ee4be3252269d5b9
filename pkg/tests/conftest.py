from itertools import product

import pytest


def words(max_len, min_len=0, alphabet="01"):
    for n in range(min_len, max_len + 1):
        for w in product(alphabet, repeat=n):
            yield "".join(w)


@pytest.fixture
def all_words():
    return words
