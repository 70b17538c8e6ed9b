"""
Derivations: sequences of braid relations, read as algebraic van Kampen diagrams.

A derivation never stores planar data.  Each step still carries a well defined
*name* (the strands it moves: a triple for type I, two disjoint pairs for type
II), and those names are all that the optimality criteria need: a derivation
whose steps have pairwise distinct names is as short as possible, and two
separatrices Sep(p,q), Sep(p',q') cross exactly as often as a step carries the
corresponding name.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterator

from .errors import NotEquivalent, PatternMismatch, ReplayMismatch, StateSpaceExceeded, Unreachable
from .invariants import format_name, name_sequence
from .words import Relation, Word, applicable_relations, apply_relation, equivalent, require_reduced

DEFAULT_NODE_LIMIT = 10**6

CERTIFIED = "CertifiedOptimal"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Step:
    pos: int
    relation: Relation

    @property
    def kind(self) -> str:
        return self.relation.kind

    def inverse(self) -> Step:
        return Step(self.pos, self.relation.inverse())

    def to_json(self) -> dict:
        # positions are 1-based in every serialized form
        return {"pos": self.pos + 1, "kind": self.kind, "dir": self.relation.direction}


@dataclass(frozen=True)
class Derivation:
    start: Word
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def words(self) -> Iterator[Word]:
        """The start word followed by the word after each step."""
        w = self.start
        yield w
        for k, step in enumerate(self.steps):
            try:
                w = apply_relation(w, step.pos, step.relation)
            except PatternMismatch as exc:
                raise ReplayMismatch(k, str(exc)) from None
            yield w

    def end(self) -> Word:
        return replay(self)

    def reversed(self) -> Derivation:
        return Derivation(self.end(), tuple(s.inverse() for s in reversed(self.steps)))

    def then(self, other: Derivation) -> Derivation:
        if self.end() != other.start:
            raise ReplayMismatch(len(self.steps), f"{other.start} does not continue {self.end()}")
        return Derivation(self.start, self.steps + other.steps)

    def shifted(self, offset: int, prefix: Word | None = None, suffix: Word | None = None) -> Derivation:
        """
        Embed the derivation into a longer word.

        ``prefix`` (of length ``offset``) and ``suffix`` are glued around
        every intermediate word; step positions move right by ``offset``.
        """
        start = self.start
        if prefix is not None:
            start = prefix + start
        if suffix is not None:
            start = start + suffix
        return Derivation(start, tuple(Step(s.pos + offset, s.relation) for s in self.steps))

    def to_json(self) -> dict:
        return {
            "n": self.start.n,
            "start": str(self.start),
            "steps": [s.to_json() for s in self.steps],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict, n: int | None = None) -> Derivation:
        """
        Rebuild a derivation; each step's indices are read off the word it acts on.

        The strand count comes from ``n``, else the payload's ``"n"`` field,
        else one more than the largest letter.
        """
        if n is None:
            n = data.get("n")
        text = data["start"]
        if n is None:
            letters = [int(x) for x in text.split(".")] if text not in ("e", "") else []
            n = max(letters, default=0) + 1
        w = Word.parse(text, n)
        start = w
        steps = []
        for k, raw in enumerate(data["steps"]):
            pos = int(raw["pos"]) - 1
            try:
                rel = Relation.matching(w.letters, pos, raw["kind"])
            except PatternMismatch as exc:
                raise ReplayMismatch(k, str(exc)) from None
            if raw.get("dir", rel.direction) != rel.direction:
                raise ReplayMismatch(k, f"direction {raw['dir']} does not match {w} at {pos + 1}")
            steps.append(Step(pos, rel))
            w = apply_relation(w, pos, rel)
        return cls(start, tuple(steps))

    @classmethod
    def loads(cls, text: str, n: int | None = None) -> Derivation:
        return cls.from_json(json.loads(text), n)


def replay(d: Derivation) -> Word:
    w = d.start
    for w in d.words():
        pass
    return w


def step_names(d: Derivation) -> list[frozenset]:
    """
    Name of every step, read off the strands it involves.

    A type I step is named by the triple of strands in its three letters, a
    type II step by the two (disjoint) names of its two letters.
    """
    require_reduced(d.start)
    names = []
    for step, w in zip(d.steps, d.words()):
        S = name_sequence(w).names
        k = step.pos
        if step.kind == "I":
            names.append(S[k] | S[k + 1] | S[k + 2])
        else:
            names.append(frozenset((S[k], S[k + 1])))
    return names


@dataclass
class Certificate:
    verdict: str
    names: list[frozenset] = field(default_factory=list)
    duplicates: list[frozenset] = field(default_factory=list)
    detail: str = ""

    @property
    def optimal(self) -> bool:
        return self.verdict == CERTIFIED

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "names": [format_name(x) for x in self.names],
            "duplicates": [format_name(x) for x in self.duplicates],
        }
        if self.detail:
            out["detail"] = self.detail
        return out


def certify(d: Derivation) -> Certificate:
    """CertifiedOptimal when no two steps share a name; Inconclusive otherwise."""
    require_reduced(d.start, d.end())
    names = step_names(d)
    counts = Counter(names)
    dups = [name for name in dict.fromkeys(names) if counts[name] > 1]
    return Certificate(CERTIFIED if not dups else INCONCLUSIVE, names, dups)


def crossing_matrix(d: Derivation) -> Counter:
    """
    Crossing counts between separatrices, keyed by the unordered pair of their names.

    Pairs that never cross are absent (a Counter reads them as 0).
    """
    out: Counter = Counter()
    for name in step_names(d):
        members = sorted(name, key=lambda x: sorted(x) if isinstance(x, frozenset) else [x])
        if isinstance(members[0], frozenset):
            out[name] += 1
        else:
            p, q, r = members
            a, b, c = frozenset((p, q)), frozenset((p, r)), frozenset((q, r))
            for pair in ((a, b), (a, c), (b, c)):
                out[frozenset(pair)] += 1
    return out


def _bfs(u: Word, node_limit: int, target: Word | None):
    parent: dict[tuple, tuple | None] = {u.letters: None}
    dist = {u.letters: 0}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if target is not None and w == target:
            break
        for pos, rel in applicable_relations(w):
            x = apply_relation(w, pos, rel)
            if x.letters not in dist:
                dist[x.letters] = dist[w.letters] + 1
                parent[x.letters] = (w.letters, Step(pos, rel))
                if len(dist) > node_limit:
                    raise StateSpaceExceeded(f"more than {node_limit} words reachable from {u}")
                queue.append(x)
    return dist, parent


def distances_from(u: Word, node_limit: int = DEFAULT_NODE_LIMIT) -> dict[tuple[int, ...], int]:
    """Braid distance from ``u`` to every word reachable from it, keyed by letters."""
    dist, _ = _bfs(u, node_limit, None)
    return dist


def dist_bfs(u: Word, v: Word, node_limit: int = DEFAULT_NODE_LIMIT) -> int:
    """Exact combinatorial distance by breadth-first search over single relations."""
    if not equivalent(u, v):
        raise NotEquivalent(f"{u} and {v} represent different permutations")
    dist, _ = _bfs(u, node_limit, v)
    if v.letters not in dist:
        raise Unreachable(f"{v} cannot be reached from {u} by braid relations")
    return dist[v.letters]


def shortest_derivation(u: Word, v: Word, node_limit: int = DEFAULT_NODE_LIMIT) -> Derivation:
    """A derivation from u to v of minimal length."""
    if not equivalent(u, v):
        raise NotEquivalent(f"{u} and {v} represent different permutations")
    _, parent = _bfs(u, node_limit, v)
    if v.letters not in parent:
        raise Unreachable(f"{v} cannot be reached from {u} by braid relations")
    steps = []
    key = v.letters
    while parent[key] is not None:
        key, step = parent[key]
        steps.append(step)
    return Derivation(u, tuple(reversed(steps)))

