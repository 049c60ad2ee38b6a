import random

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("repo", deadline=None, max_examples=100)
settings.load_profile("repo")

from thurston4.acceptance import random_H_word
from thurston4.words import Context, Word

letters = st.sampled_from([1, -1, 2, -2])
moduli_words = st.lists(letters, max_size=30).map(lambda xs: Word(xs, Context.MODULI))
free4_words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4]), max_size=20).map(
    lambda xs: Word(xs, Context.FREE4))
H_words = st.integers(min_value=0, max_value=2**32).map(
    lambda seed: random_H_word(random.Random(seed), 40))


@pytest.fixture
def rng():
    return random.Random(12345)
