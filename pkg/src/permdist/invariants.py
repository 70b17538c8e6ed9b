"""
Name sequences of reduced words and the lower-bound functionals built on them.

Every letter of a reduced word is the crossing of two strands; the pair of
their initial positions is the letter's *name*.  Comparing the order in which
two equivalent words list the same names bounds their braid distance from
below: a type I relation reverses the order of the three names inside one
triple {p, q, r}, a type II relation swaps two disjoint names, and nothing
else moves.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import IncomparableSequences, NotEquivalent
from .words import Word, equivalent, require_reduced

Name2 = frozenset  # frozenset of two strand labels
Name3 = frozenset  # frozenset of three strand labels
Name22 = frozenset  # frozenset of two disjoint Name2


def name2(p: int, q: int) -> Name2:
    if p == q:
        raise ValueError("a name needs two distinct strands")
    return frozenset((p, q))


def name22(a: Name2, b: Name2) -> Name22:
    if a & b:
        raise ValueError(f"{sorted(a)} and {sorted(b)} are not disjoint")
    return frozenset((a, b))


def format_name(name: frozenset) -> str:
    """``{1,2,3}`` for triples and ``{{1,4},{2,3}}`` for pairs of pairs."""
    items = sorted(name, key=lambda x: sorted(x) if isinstance(x, frozenset) else [x])
    inner = ",".join(format_name(x) if isinstance(x, frozenset) else str(x) for x in items)
    return "{" + inner + "}"


@dataclass(frozen=True)
class NameSequence:
    n: int
    names: tuple[Name2, ...]

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def reversed(self) -> NameSequence:
        return NameSequence(self.n, self.names[::-1])

    def to_json(self) -> list[list[int]]:
        return [sorted(pair) for pair in self.names]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]], n: int) -> NameSequence:
        return cls(n, tuple(name2(*pair) for pair in data))


def name_sequence(word: Word) -> NameSequence:
    """
    S(u): the names of the successive letters of a reduced word.

    >>> [sorted(x) for x in name_sequence(Word(3, (1, 2, 1)))]
    [[1, 2], [1, 3], [2, 3]]
    """
    require_reduced(word)
    slots = list(range(1, word.n + 1))
    names = []
    for a in word.letters:
        names.append(frozenset((slots[a - 1], slots[a])))
        slots[a - 1], slots[a] = slots[a], slots[a - 1]
    return NameSequence(word.n, tuple(names))


def _index(S: NameSequence, S2: NameSequence) -> tuple[dict, dict]:
    if S.n != S2.n:
        raise IncomparableSequences(f"strand counts differ: {S.n} != {S2.n}")
    pos = {name: k for k, name in enumerate(S.names)}
    pos2 = {name: k for k, name in enumerate(S2.names)}
    if len(pos) != len(S.names) or len(pos2) != len(S2.names) or pos.keys() != pos2.keys():
        raise IncomparableSequences("sequences must list the same distinct names")
    return pos, pos2


def flipped_pairs(S: NameSequence, S2: NameSequence) -> list[tuple[Name2, Name2]]:
    """Pairs of names listed in opposite relative orders by S and S2."""
    pos, pos2 = _index(S, S2)
    names = S.names
    return [
        (a, b)
        for a, b in combinations(names, 2)
        if (pos[a] < pos[b]) != (pos2[a] < pos2[b])
    ]


def i3(S: NameSequence, S2: NameSequence) -> int:
    """Number of triples {p,q,r} whose pairs are not in the same order in S and S2."""
    return len({a | b for a, b in flipped_pairs(S, S2) if a & b})


def i22(S: NameSequence, S2: NameSequence) -> int:
    """Number of disjoint pairs of names whose order differs between S and S2."""
    return sum(1 for a, b in flipped_pairs(S, S2) if not a & b)


def inv_count(S: NameSequence, S2: NameSequence) -> int:
    """Inversion number between S and S2, over all pairs of names."""
    return len(flipped_pairs(S, S2))


def lower_bound_split(u: Word, v: Word) -> tuple[int, int]:
    """
    Minimal numbers of type I and type II relations in any derivation u -> v.
    """
    require_reduced(u, v)
    if not equivalent(u, v):
        raise NotEquivalent(f"{u} and {v} represent different permutations")
    S, S2 = name_sequence(u), name_sequence(v)
    return i3(S, S2), i22(S, S2)


def lower_bound(u: Word, v: Word) -> int:
    t1, t2 = lower_bound_split(u, v)
    return t1 + t2


@dataclass
class EqualityTally:
    """Outcome of testing lower_bound == dist over a family of pairs."""

    pairs: int = 0
    equal: int = 0
    counterexamples: list[tuple[Word, Word, int, int]] = field(default_factory=list)

    def summary(self) -> str:
        return (
            f"{self.pairs} pairs checked, {self.equal} with lower bound = distance, "
            f"{len(self.counterexamples)} counterexamples"
        )


def tally_equality(pairs: Iterable[tuple[Word, Word]], dist) -> EqualityTally:
    """Compare lower_bound with ``dist(u, v)`` on every pair; never raises on inequality."""
    tally = EqualityTally()
    for u, v in pairs:
        lb, d = lower_bound(u, v), dist(u, v)
        tally.pairs += 1
        if lb == d:
            tally.equal += 1
        else:
            tally.counterexamples.append((u, v, lb, d))
    return tally
