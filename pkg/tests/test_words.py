import json

import pytest
from hypothesis import given, strategies as st

from flatstir import (
    MalformedWordError,
    NotStirlingError,
    StirlingWord,
    is_flattened,
    is_valid_stirling,
    parse_word,
    sorted_word,
    word_stats,
)
from flatstir.words import word_from_json

EXAMPLE_LETTERS = (1, 2, 2, 2, 2, 6, 6, 6, 6, 1, 4, 4, 4, 4, 1, 1, 3, 3, 3, 3, 5, 5, 5, 5)


def example_word():
    return StirlingWord(EXAMPLE_LETTERS, 6, 4)


class TestConstruction:
    def test_valid(self):
        w = StirlingWord((1, 2, 2, 1), 2, 2)
        assert w.letters == (1, 2, 2, 1)

    def test_empty_word_is_structurally_valid(self):
        w = StirlingWord((), 0, 2)
        assert w.is_empty

    def test_wrong_length(self):
        with pytest.raises(MalformedWordError):
            StirlingWord((1, 2, 2), 2, 2)

    def test_wrong_multiset(self):
        with pytest.raises(MalformedWordError):
            StirlingWord((1, 1, 1, 2), 2, 2)

    def test_value_out_of_range(self):
        with pytest.raises(MalformedWordError):
            StirlingWord((1, 1, 3, 3), 2, 2)

    def test_zero_multiplicity(self):
        with pytest.raises(MalformedWordError):
            StirlingWord((), 0, 0)

    def test_from_letters_infers_order(self):
        w = StirlingWord.from_letters([1, 2, 2, 1], 2)
        assert (w.order, w.multiplicity) == (2, 2)


class TestStirlingPredicate:
    def test_simple_valid(self):
        assert is_valid_stirling(StirlingWord((1, 2, 2, 1), 2, 2))

    def test_simple_invalid(self):
        assert not is_valid_stirling(StirlingWord((2, 1, 1, 2), 2, 2))

    def test_worked_example(self):
        assert is_valid_stirling(example_word())

    def test_valid_but_not_flattened(self):
        w = StirlingWord((2, 2, 1, 1), 2, 2)
        assert is_valid_stirling(w)
        assert not is_flattened(w)

    def test_k1_always_valid(self):
        assert is_valid_stirling(StirlingWord((3, 1, 2), 3, 1))

    def test_empty(self):
        assert is_valid_stirling(StirlingWord((), 0, 3))


class TestFlattenedPredicate:
    def test_single_run(self):
        assert is_flattened(StirlingWord((1, 1, 2, 2), 2, 2))

    def test_decreasing_leaders(self):
        assert not is_flattened(StirlingWord((2, 2, 1, 1), 2, 2))

    def test_worked_example(self):
        assert is_flattened(example_word())

    def test_raises_on_non_stirling(self):
        with pytest.raises(NotStirlingError):
            is_flattened(StirlingWord((2, 1, 1, 2), 2, 2))


class TestWordStats:
    def test_worked_example(self):
        # direct scan: descents at 6->1 and 4->1; plateaus inside the six
        # constant blocks 2222/6666/4444/11/3333/5555 = 3+3+3+1+3+3 = 16;
        # ascents 1<2, 2<6, 1<4, 1<3, 3<5 = 5; 2+16+5 = 23 pairs.
        s = word_stats(example_word())
        assert (s.descents, s.runs, s.plateaus, s.ascents) == (2, 3, 16, 5)

    @pytest.mark.parametrize("n,k", [(1, 1), (3, 2), (5, 3)])
    def test_sorted_word(self, n, k):
        s = word_stats(sorted_word(n, k))
        assert s.descents == 0
        assert s.runs == 1

    def test_small_scan(self):
        s = word_stats(StirlingWord((1, 2, 2, 1, 3, 3), 3, 2))
        assert (s.descents, s.runs, s.plateaus, s.ascents) == (1, 2, 2, 2)

    def test_empty_marker(self):
        s = word_stats(StirlingWord((), 0, 2))
        assert (s.descents, s.runs, s.plateaus, s.ascents) == (0, 0, 0, 0)


@pytest.mark.parametrize("n,k", [(3, 2), (2, 3), (4, 1), (2, 4)])
def test_stirling_check_against_naive_oracle(n, k):
    """Compare the one-scan check with the definition applied literally."""
    from itertools import permutations

    def naive(letters):
        for v in range(1, n + 1):
            pos = [i for i, x in enumerate(letters) if x == v]
            for a, b in zip(pos, pos[1:]):
                if any(letters[i] < v for i in range(a + 1, b)):
                    return False
        return True

    multiset = [v for v in range(1, n + 1) for _ in range(k)]
    for perm in set(permutations(multiset)):
        w = StirlingWord(perm, n, k)
        assert is_valid_stirling(w) == naive(perm), perm


@st.composite
def random_stirling_words(draw):
    """Build a word by the gap-insertion construction; always valid."""
    n = draw(st.integers(min_value=1, max_value=6))
    k = draw(st.integers(min_value=1, max_value=4))
    word = []
    for m in range(1, n + 1):
        pos = draw(st.integers(min_value=0, max_value=len(word)))
        word[pos:pos] = [m] * k
    return StirlingWord(tuple(word), n, k)


@given(random_stirling_words())
def test_stats_invariants_on_random_words(w):
    s = word_stats(w)
    assert s.runs == s.descents + 1
    assert s.descents + s.plateaus + s.ascents == w.order * w.multiplicity - 1
    assert is_valid_stirling(w)


class TestSerialization:
    def test_text_round_trip(self):
        w = example_word()
        assert parse_word(w.to_text(), 4) == w

    def test_text_format_is_space_separated(self):
        assert sorted_word(2, 2).to_text() == "1 1 2 2"

    def test_json_round_trip(self):
        w = example_word()
        assert word_from_json(w.to_json()) == w
        payload = json.loads(w.to_json())
        assert payload["order"] == 6
        assert payload["multiplicity"] == 4

    def test_parse_rejects_garbage(self):
        with pytest.raises(MalformedWordError):
            parse_word("1 two 2 1", 2)
