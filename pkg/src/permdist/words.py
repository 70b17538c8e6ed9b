"""
Words in the transpositions s_1, ..., s_{n-1}, their permutations, and braid relations.

A :class:`Word` is an *n-expression*: a sequence of generator indices, each in
``1..n-1``, together with the strand count ``n``.  Letter ``i`` stands for the
transposition exchanging positions ``i`` and ``i+1``.  Products read left to
right ("u first, then v"), which matches stacking crossings from top to bottom
in a braid diagram.

A :class:`Permutation` stores, for each strand (named by its initial position),
the position where it ends.  With this convention the inversion set of
``evaluate(w)`` is exactly the set of strand pairs that cross in the diagram of
``w``.

Text format: letters joined by dots (``"1.2.1"``), the empty word is ``"e"``,
and inverse letters of extended words carry a minus sign (``"-1.2"``).

Positions inside words are 0-based throughout the Python API.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .errors import NotReduced, PatternMismatch, StrandCountMismatch

EMPTY = "e"


def _parse_letters(text: str, signed: bool) -> tuple[int, ...]:
    text = text.strip()
    if text in (EMPTY, "", "ε"):
        return ()
    try:
        letters = tuple(int(tok) for tok in text.split("."))
    except ValueError:
        raise ValueError(f"malformed word {text!r}") from None
    if not signed and any(x <= 0 for x in letters):
        raise ValueError(f"malformed word {text!r}: letters must be positive")
    if 0 in letters:
        raise ValueError(f"malformed word {text!r}: no generator s_0")
    return letters


def _format_letters(letters: Sequence[int]) -> str:
    return ".".join(str(x) for x in letters) if letters else EMPTY


@dataclass(frozen=True)
class Word:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.n < 1:
            raise ValueError(f"strand count must be >= 1, got {self.n}")
        for x in self.letters:
            if not 1 <= x <= self.n - 1:
                raise ValueError(f"letter s_{x} out of range for n={self.n}")

    @classmethod
    def parse(cls, text: str, n: int) -> Word:
        return cls(n, _parse_letters(text, signed=False))

    def __str__(self) -> str:
        return _format_letters(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.n, self.letters[item])
        return self.letters[item]

    def __add__(self, other: Word) -> Word:
        _check_same_n(self, other)
        return Word(self.n, self.letters + other.letters)

    def with_n(self, n: int) -> Word:
        """The same letters viewed with another strand count."""
        return Word(n, self.letters)

    def bar(self) -> ExtendedWord:
        """Reverse the word and replace every letter by its formal inverse."""
        return ExtendedWord(self.n, tuple(-x for x in reversed(self.letters)))

    def positive(self) -> ExtendedWord:
        return ExtendedWord(self.n, self.letters)


@dataclass(frozen=True)
class ExtendedWord:
    """A word over s_i and the formal inverses s̄_i (stored as ``-i``)."""

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if x == 0 or abs(x) > self.n - 1:
                raise ValueError(f"letter {x} out of range for n={self.n}")

    @classmethod
    def parse(cls, text: str, n: int) -> ExtendedWord:
        return cls(n, _parse_letters(text, signed=True))

    @classmethod
    def from_pair(cls, u: Word, v: Word) -> ExtendedWord:
        """The word ū v whose reversing compares u and v."""
        _check_same_n(u, v)
        return cls(u.n, u.bar().letters + v.letters)

    def __str__(self) -> str:
        return _format_letters(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __add__(self, other: ExtendedWord) -> ExtendedWord:
        _check_same_n(self, other)
        return ExtendedWord(self.n, self.letters + other.letters)

    def bar(self) -> ExtendedWord:
        return ExtendedWord(self.n, tuple(-x for x in reversed(self.letters)))

    def split_terminal(self) -> tuple[Word, Word] | None:
        """
        Split a word of shape ``v' ū'`` into ``(u', v')``.

        Returns None when some negative letter precedes a positive one.
        """
        k = 0
        while k < len(self.letters) and self.letters[k] > 0:
            k += 1
        if any(x > 0 for x in self.letters[k:]):
            return None
        v_prime = Word(self.n, self.letters[:k])
        u_prime = Word(self.n, tuple(-x for x in reversed(self.letters[k:])))
        return u_prime, v_prime


def _check_same_n(a, b) -> None:
    if a.n != b.n:
        raise StrandCountMismatch(f"strand counts differ: {a.n} != {b.n}")


@dataclass(frozen=True)
class Permutation:
    """``images[k-1]`` is the final position of the strand starting at ``k``."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.n or sorted(self.images) != list(range(1, self.n + 1)):
            raise ValueError(f"not a permutation of 1..{self.n}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def flip(cls, n: int) -> Permutation:
        """The order-reversing permutation k -> n+1-k."""
        return cls(n, tuple(range(n, 0, -1)))

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __len__(self) -> int:
        """Coxeter length, i.e. the number of inversions."""
        return len(inversion_set(self))

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other`` (the product used for words)."""
        if self.n != other.n:
            raise StrandCountMismatch(f"strand counts differ: {self.n} != {other.n}")
        return Permutation(self.n, tuple(other(self(k)) for k in range(1, self.n + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for k, img in enumerate(self.images, start=1):
            inv[img - 1] = k
        return Permutation(self.n, tuple(inv))


@dataclass(frozen=True)
class Relation:
    """
    A braid relation read left to right.

    ``Relation("I", i, j)`` rewrites ``s_i s_j s_i`` into ``s_j s_i s_j``
    (requires ``|i-j| = 1``); ``Relation("II", i, j)`` rewrites ``s_i s_j`` into
    ``s_j s_i`` (requires ``|i-j| >= 2``).
    """

    kind: str
    i: int
    j: int

    def __post_init__(self):
        gap = abs(self.i - self.j)
        if self.kind == "I":
            if gap != 1:
                raise ValueError(f"type I relation needs |i-j| = 1, got {self.i}, {self.j}")
        elif self.kind == "II":
            if gap < 2:
                raise ValueError(f"type II relation needs |i-j| >= 2, got {self.i}, {self.j}")
        else:
            raise ValueError(f"unknown relation kind {self.kind!r}")

    @property
    def lhs(self) -> tuple[int, ...]:
        if self.kind == "I":
            return (self.i, self.j, self.i)
        return (self.i, self.j)

    @property
    def rhs(self) -> tuple[int, ...]:
        if self.kind == "I":
            return (self.j, self.i, self.j)
        return (self.j, self.i)

    @property
    def width(self) -> int:
        return len(self.lhs)

    @property
    def direction(self) -> str:
        """``"LR"`` when the pattern being replaced starts with the smaller index."""
        return "LR" if self.i < self.j else "RL"

    def inverse(self) -> Relation:
        return Relation(self.kind, self.j, self.i)

    @classmethod
    def matching(cls, letters: Sequence[int], pos: int, kind: str) -> Relation:
        """The relation of the given kind whose left side sits at ``pos``."""
        window = tuple(letters[pos:pos + (3 if kind == "I" else 2)])
        try:
            rel = cls(kind, window[0], window[1])
        except (ValueError, IndexError):
            raise PatternMismatch(f"no type {kind} pattern at position {pos}") from None
        if window != rel.lhs:
            raise PatternMismatch(f"no type {kind} pattern at position {pos}")
        return rel


def strand_slots(word: Word) -> list[list[int]]:
    """
    Arrangements of strands before and after every letter.

    Entry ``r`` lists, slot by slot, which strand (initial position) sits there
    after the first ``r`` letters; there are ``len(word) + 1`` entries.
    """
    slots = list(range(1, word.n + 1))
    trace = [slots[:]]
    for a in word.letters:
        slots[a - 1], slots[a] = slots[a], slots[a - 1]
        trace.append(slots[:])
    return trace


def evaluate(word: Word) -> Permutation:
    """
    The permutation represented by ``word``.

    >>> evaluate(Word(3, (1, 2))).images
    (3, 1, 2)
    """
    slots = list(range(1, word.n + 1))
    for a in word.letters:
        slots[a - 1], slots[a] = slots[a], slots[a - 1]
    images = [0] * word.n
    for position, strand in enumerate(slots, start=1):
        images[strand - 1] = position
    return Permutation(word.n, tuple(images))


def inversion_set(p: Permutation) -> frozenset[frozenset[int]]:
    """All pairs {a, b} of strands with (b - a)(p(b) - p(a)) < 0."""
    return frozenset(
        frozenset((a, b))
        for a, b in combinations(range(1, p.n + 1), 2)
        if p(a) > p(b)
    )


def is_reduced(word: Word) -> bool:
    """True iff no two strands cross twice in the diagram of ``word``."""
    slots = list(range(1, word.n + 1))
    for a in word.letters:
        if slots[a - 1] > slots[a]:
            return False
        slots[a - 1], slots[a] = slots[a], slots[a - 1]
    return True


def require_reduced(*words: Word) -> None:
    for w in words:
        if not is_reduced(w):
            raise NotReduced(f"{w} is not reduced")


def apply_relation(word: Word, position: int, relation: Relation) -> Word:
    lhs = relation.lhs
    if tuple(word.letters[position:position + len(lhs)]) != lhs or position < 0:
        raise PatternMismatch(
            f"{relation.kind} {_format_letters(lhs)} does not match {word} at {position}"
        )
    letters = word.letters[:position] + relation.rhs + word.letters[position + len(lhs):]
    return Word(word.n, letters)


def applicable_relations(word: Word) -> list[tuple[int, Relation]]:
    """Every (position, relation) pair that applies to ``word``, left to right."""
    out = []
    w = word.letters
    for k in range(len(w) - 1):
        a, b = w[k], w[k + 1]
        gap = abs(a - b)
        if gap >= 2:
            out.append((k, Relation("II", a, b)))
        elif gap == 1 and k + 2 < len(w) and w[k + 2] == a:
            out.append((k, Relation("I", a, b)))
    return out


def neighbours(word: Word) -> Iterator[Word]:
    for pos, rel in applicable_relations(word):
        yield apply_relation(word, pos, rel)


def equivalent(u: Word, v: Word) -> bool:
    _check_same_n(u, v)
    return evaluate(u) == evaluate(v)


def reduced_words(n: int, max_length: int | None = None) -> Iterator[Word]:
    """All reduced n-expressions (of length at most ``max_length``), shortest first."""
    limit = n * (n - 1) // 2 if max_length is None else max_length
    layer = [((), tuple(range(1, n + 1)))]
    for _ in range(limit + 1):
        nxt = []
        for letters, slots in layer:
            yield Word(n, letters)
            for a in range(1, n):
                if slots[a - 1] < slots[a]:
                    s = list(slots)
                    s[a - 1], s[a] = s[a], s[a - 1]
                    nxt.append((letters + (a,), tuple(s)))
        layer = nxt


def reduced_words_of(p: Permutation) -> list[Word]:
    """Every reduced word representing ``p``, in lexicographic order."""
    target = inversion_set(p)
    out: list[Word] = []

    def extend(letters: tuple[int, ...], slots: list[int]) -> None:
        if len(letters) == len(target):
            out.append(Word(p.n, letters))
            return
        for a in range(1, p.n):
            x, y = slots[a - 1], slots[a]
            if x < y and frozenset((x, y)) in target:
                slots[a - 1], slots[a] = y, x
                extend(letters + (a,), slots)
                slots[a - 1], slots[a] = x, y

    extend((), list(range(1, p.n + 1)))
    return out


def random_reduced_word(n: int, length: int, rng: random.Random) -> Word:
    """
    A random reduced word built by appending random admissible letters.

    Stops early if the longest element is reached before ``length`` letters.
    """
    slots = list(range(1, n + 1))
    letters = []
    for _ in range(length):
        choices = [a for a in range(1, n) if slots[a - 1] < slots[a]]
        if not choices:
            break
        a = rng.choice(choices)
        slots[a - 1], slots[a] = slots[a], slots[a - 1]
        letters.append(a)
    return Word(n, tuple(letters))
