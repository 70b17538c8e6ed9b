from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import distance
from permdist.derivations import (
    Derivation,
    Step,
    certify,
    crossing_matrix,
    dist_bfs,
    distances_from,
    replay,
    shortest_derivation,
    step_names,
)
from permdist.errors import NotEquivalent, ReplayMismatch, StateSpaceExceeded, Unreachable
from permdist.invariants import format_name, lower_bound
from permdist.normalform import derive
from permdist.words import Relation, Word, evaluate, random_reduced_word, reduced_words_of

W = Word.parse
U, V = W("1.2.1.3.2.1", 4), W("3.2.3.1.2.3", 4)


@st.composite
def equivalent_pair(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    rng = random.Random(draw(st.integers(0, 10**6)))
    u = random_reduced_word(n, rng.randint(0, n * (n - 1) // 2), rng)
    return u, rng.choice(reduced_words_of(evaluate(u)))


def test_replay_and_end():
    d = Derivation(W("1.2.1", 3), (Step(0, Relation("I", 1, 2)),))
    assert str(replay(d)) == "2.1.2"
    assert str(d.reversed().end()) == "1.2.1"


def test_replay_mismatch_reports_index():
    d = Derivation(W("1.2.1", 3), (Step(0, Relation("I", 1, 2)), Step(0, Relation("I", 1, 2))))
    with pytest.raises(ReplayMismatch) as exc:
        d.end()
    assert exc.value.index == 1


def test_then_requires_matching_endpoints():
    a = Derivation(W("1.2.1", 3), (Step(0, Relation("I", 1, 2)),))
    with pytest.raises(ReplayMismatch):
        a.then(Derivation(W("1.2.1", 3)))


def test_json_is_one_based_and_round_trips():
    d = derive(U, V)
    data = d.to_json()
    assert data["steps"][0]["pos"] == d.steps[0].pos + 1
    assert Derivation.loads(json.dumps(data)) == d
    data.pop("n")
    assert Derivation.from_json(data, 4) == d


def test_json_direction_is_checked():
    data = {"start": "1.2.1", "steps": [{"pos": 1, "kind": "I", "dir": "RL"}]}
    with pytest.raises(ReplayMismatch):
        Derivation.from_json(data, 3)


def test_shifted():
    d = Derivation(W("1.2.1", 4), (Step(0, Relation("I", 1, 2)),))
    s = d.shifted(1, prefix=W("3", 4))
    assert str(s.end()) == "3.2.1.2"


def test_shortest_derivation_certified():
    d = shortest_derivation(U, V)
    assert len(d) == 6 and d.end() == V
    cert = certify(d)
    assert cert.optimal
    assert sorted(format_name(x) for x in cert.names) == sorted(
        ["{1,2,3}", "{1,2,4}", "{{1,3},{2,4}}", "{{1,2},{3,4}}", "{1,3,4}", "{2,3,4}"]
    )


def test_crossing_matrix():
    d = Derivation(W("1.2.1", 3), (Step(0, Relation("I", 1, 2)),))
    m = crossing_matrix(d)
    assert sum(m.values()) == 3
    assert m[frozenset({frozenset({1, 2}), frozenset({1, 3})})] == 1


@given(equivalent_pair())
def test_dist_bfs_matches_oracle_and_bounds(pair):
    u, v = pair
    d = dist_bfs(u, v)
    assert d == distance(u.letters, v.letters)
    assert lower_bound(u, v) <= d <= len(derive(u, v))
    assert dist_bfs(v, u) == d


@given(equivalent_pair())
def test_names_are_always_triples_or_disjoint_pairs(pair):
    u, v = pair
    for name in step_names(derive(u, v)):
        members = list(name)
        if isinstance(members[0], frozenset):
            assert len(members) == 2 and not members[0] & members[1]
        else:
            assert len(members) == 3


@given(equivalent_pair())
def test_certified_derivations_are_shortest(pair):
    u, v = pair
    d = derive(u, v)
    if certify(d).optimal:
        assert len(d) == dist_bfs(u, v)


def test_distances_from():
    dist = distances_from(W("1.2.1", 3))
    assert dist == {(1, 2, 1): 0, (2, 1, 2): 1}


def test_errors():
    with pytest.raises(NotEquivalent):
        dist_bfs(W("1.2", 3), W("2.1", 3))
    with pytest.raises(Unreachable):
        dist_bfs(W("1.1", 3), W("e", 3))
    with pytest.raises(StateSpaceExceeded):
        dist_bfs(U, V, node_limit=3)


def test_certificate_json():
    data = certify(derive(U, V)).to_json()
    assert data["verdict"] in ("CertifiedOptimal", "Inconclusive")
    assert isinstance(data["names"], list)
