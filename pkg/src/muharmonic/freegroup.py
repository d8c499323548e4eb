"""Reduced words in the free group F_k and the regular-tree geometry they span.

Letters are nonzero signed integers in ``{-k..-1, 1..k}``; the word is stored
fully reduced (no adjacent s, -s).  Generator ``i`` prints as the i-th
lowercase letter, its inverse with a trailing apostrophe.
"""

from __future__ import annotations

from dataclasses import dataclass

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def reduce_letters(letters) -> tuple[int, ...]:
    """Fully reduce a letter sequence by cancelling adjacent inverse pairs."""
    out: list[int] = []
    for s in letters:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(int(s))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A reduced word in F_k."""

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")
        for s in self.letters:
            if s == 0 or abs(s) > self.rank:
                raise ValueError(f"letter {s} out of range for rank {self.rank}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError(f"word {self.letters} is not reduced")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "e"
        return "".join(_ALPHABET[abs(s) - 1] + ("'" if s < 0 else "") for s in self.letters)

    def __repr__(self):
        return f"FreeWord(F{self.rank}, {self})"


def word(k: int, letters=()) -> FreeWord:
    """Build a word from any letter sequence, reducing eagerly."""
    return FreeWord(k, reduce_letters(letters))


def empty_word(k: int) -> FreeWord:
    return FreeWord(k, ())


def generator(k: int, i: int) -> FreeWord:
    """The i-th generator (1-based); negative i gives its inverse."""
    return FreeWord(k, (i,))


def free_mul(a: FreeWord, b: FreeWord) -> FreeWord:
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    return FreeWord(a.rank, reduce_letters(a.letters + b.letters))


def free_inverse(a: FreeWord) -> FreeWord:
    return FreeWord(a.rank, tuple(-s for s in reversed(a.letters)))


def free_ball(k: int, r: int) -> list[FreeWord]:
    """All reduced words of length <= r, in breadth-first order.

    The count is 1 + 2k((2k-1)^r - 1)/(2k-2).
    """
    if r < 0:
        raise ValueError("radius must be >= 0")
    ball = [empty_word(k)]
    sphere = [()]
    gens = [i for i in range(1, k + 1)] + [-i for i in range(1, k + 1)]
    for _ in range(r):
        nxt = []
        for w in sphere:
            for s in gens:
                if w and w[-1] == -s:
                    continue
                nxt.append(w + (s,))
        ball.extend(FreeWord(k, w) for w in nxt)
        sphere = nxt
    return ball


def common_prefix_length(a: FreeWord, b: FreeWord) -> int:
    n = 0
    for x, y in zip(a.letters, b.letters):
        if x != y:
            break
        n += 1
    return n


def tree_distance(a: FreeWord, b: FreeWord) -> int:
    """Graph distance d(a, b) = |a^{-1} b| in the 2k-regular Cayley tree."""
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    lcp = common_prefix_length(a, b)
    return len(a) + len(b) - 2 * lcp


def is_prefix(w: FreeWord, g: FreeWord) -> bool:
    """True when the geodesic from the identity to g passes through w."""
    return len(w) <= len(g) and g.letters[: len(w)] == w.letters


def neighbors(g: FreeWord) -> list[FreeWord]:
    """The 2k adjacent vertices gs, s a generator or inverse generator."""
    k = g.rank
    out = []
    for s in [i for i in range(1, k + 1)] + [-i for i in range(1, k + 1)]:
        out.append(free_mul(g, FreeWord(k, (s,))))
    return out
