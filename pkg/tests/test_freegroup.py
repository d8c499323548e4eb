import numpy as np
import pytest

from muharmonic import (
    FreeWord,
    empty_word,
    free_ball,
    free_inverse,
    free_mul,
    tree_distance,
    word,
)


def test_cancellation_examples():
    a = word(2, (1,))
    assert free_mul(a, free_inverse(a)) == empty_word(2)
    ab = word(2, (1, 2))
    binva = word(2, (-2, 1))
    assert free_mul(ab, binva) == word(2, (1, 1))


def test_constructor_rejects_unreduced():
    with pytest.raises(ValueError):
        FreeWord(2, (1, -1))
    with pytest.raises(ValueError):
        FreeWord(2, (3,))
    assert word(2, (1, -1)) == empty_word(2)


def test_rank_mismatch():
    with pytest.raises(ValueError):
        free_mul(word(2, (1,)), word(3, (1,)))


def test_ball_counts():
    # |ball(k, r)| = 1 + 2k((2k-1)^r - 1)/(2k-2)
    assert len(free_ball(2, 0)) == 1
    assert len(free_ball(2, 1)) == 5
    assert len(free_ball(2, 2)) == 17
    assert len(free_ball(2, 3)) == 53
    assert len(free_ball(3, 2)) == 1 + 6 * (5**2 - 1) // 4
    ball = free_ball(2, 2)
    assert len(set(w.letters for w in ball)) == len(ball)
    assert all(len(w) <= 2 for w in ball)


def test_mul_associative_and_inverse_involutive_random():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        k = int(rng.integers(1, 4))
        ws = []
        for _ in range(3):
            letters = [int(s) for s in rng.integers(1, k + 1, size=rng.integers(0, 21))]
            signs = rng.choice([-1, 1], size=len(letters))
            ws.append(word(k, [s * l for s, l in zip(signs, letters)]))
        a, b, c = ws
        assert free_mul(free_mul(a, b), c) == free_mul(a, free_mul(b, c))
        assert free_inverse(free_inverse(a)) == a
        assert free_mul(a, free_inverse(a)) == empty_word(k)


def test_tree_distance():
    e = empty_word(2)
    a = word(2, (1,))
    ab = word(2, (1, 2))
    ainv = word(2, (-1,))
    assert tree_distance(e, a) == 1
    assert tree_distance(a, ab) == 1
    assert tree_distance(ainv, a) == 2
    assert tree_distance(ab, word(2, (1, -2))) == 2


def test_str_rendering():
    assert str(empty_word(2)) == "e"
    assert str(word(2, (1, -2))) == "ab'"
