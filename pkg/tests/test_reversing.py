from __future__ import annotations

import random
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import complement, distance, eval_strands, join
from permdist.derivations import certify, dist_bfs
from permdist.errors import NotReduced, StepBudgetExceeded
from permdist.invariants import format_name
from permdist.normalform import nf_of_perm
from permdist.reversing import (
    TileType,
    certify_digon_free,
    compact,
    compl,
    diagram,
    fusion_candidates,
    reverse,
    reverse_pair,
    reversing_diagram,
    to_derivation,
)
from permdist.words import ExtendedWord, Permutation, Word, evaluate, is_reduced, random_reduced_word, reduced_words_of

W = Word.parse
U, V = W("1.2.1.3.2.1", 4), W("3.2.3.1.2.3", 4)


@st.composite
def pair(draw, max_n=7, max_len=12):
    n = draw(st.integers(2, max_n))
    rng = random.Random(draw(st.integers(0, 10**6)))
    return random_reduced_word(n, rng.randint(0, max_len), rng), random_reduced_word(n, rng.randint(0, max_len), rng)


@st.composite
def equivalent_pair(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    rng = random.Random(draw(st.integers(0, 10**6)))
    u = random_reduced_word(n, rng.randint(0, n * (n - 1) // 2), rng)
    return u, rng.choice(reduced_words_of(evaluate(u)))


def test_single_rules():
    r = reverse(ExtendedWord.parse("-1.2", 3))
    assert str(r.terminal) == "2.1.-2.-1" and r.counts[TileType.I] == 1
    r = reverse(ExtendedWord.parse("-1.3", 4))
    assert str(r.terminal) == "3.-1" and r.counts[TileType.II] == 1
    r = reverse(ExtendedWord.parse("-2.2", 3))
    assert str(r.terminal) == "e" and r.counts[TileType.III] == 1


def test_sequence_star():
    r = reverse(ExtendedWord.parse("-1.-2.-1.2.1.2", 3))
    assert str(r.terminal) == "e"
    assert r.summary() == "1 (I=1 II=0 III=4)"
    # same factors, in the same order, as the displayed leftmost sequence
    assert [s.tile for s in r.steps] == [TileType.I, TileType.III, TileType.III, TileType.III, TileType.III]
    assert [s.position for s in r.steps] == [2, 1, 0, 1, 0]


def test_fig_pair_counts():
    r = reverse_pair(U, V)
    assert r.summary() == "8 (I=4 II=4 III=10)"
    assert compl(U, V) == 8


def test_trivial_cases():
    assert compl(U, U) == 0
    r = reverse_pair(Word(3), W("1.2", 3))
    assert str(r.v_prime) == "1.2" and str(r.u_prime) == "e"
    g = reversing_diagram(Word(3), W("1.2", 3))
    assert g.tiles == [] and len(to_derivation(g)) == 0


def test_budget():
    with pytest.raises(StepBudgetExceeded):
        reverse_pair(U, V, budget=3)
    with pytest.raises(ValueError):
        reverse_pair(U, V, strategy="middle")


@given(pair())
def test_strategy_independence(p):
    u, v = p
    a, b = reverse_pair(u, v, "leftmost"), reverse_pair(u, v, "rightmost")
    assert a.terminal == b.terminal and a.counts == b.counts


@given(pair(max_n=5, max_len=7))
def test_matches_recursive_complement(p):
    u, v = p
    r = reverse_pair(u, v)
    u_p, v_p, count = complement(u.letters, v.letters)
    assert (r.u_prime.letters, r.v_prime.letters, r.nontrivial) == (u_p, v_p, count)


@given(pair(max_n=5, max_len=10))
def test_terminal_is_the_join(p):
    u, v = p
    r = reverse_pair(u, v)
    left, right = u + r.v_prime, v + r.u_prime
    assert is_reduced(left) and is_reduced(right)
    assert evaluate(left) == evaluate(right)
    assert evaluate(left).images == join(u.n, eval_strands(u.n, u.letters), eval_strands(v.n, v.letters))


@given(equivalent_pair())
def test_equivalent_pairs_reverse_to_empty(p):
    u, v = p
    r = reverse_pair(u, v)
    assert str(r.terminal) == "e"
    assert dist_bfs(u, v) <= r.nontrivial


@given(pair(max_n=6, max_len=10))
def test_to_derivation(p):
    u, v = p
    g = reversing_diagram(u, v)
    d = to_derivation(g)
    assert len(d) == g.nontrivial == compl(u, v)
    assert d.start == u + g.v_prime and d.end() == v + g.u_prime


@given(pair(max_n=6, max_len=10))
def test_diagram_structure(p):
    u, v = p
    g = reversing_diagram(u, v)
    assert max(g.out_degrees().values(), default=0) <= 2
    assert g.counts == reverse_pair(u, v).counts
    # every edge on the final frontier points right (v') or down (u')
    nv = len(g.v_prime)
    assert all(g.edges[e].kind == "h" for e in g.terminal[:nv])
    assert all(g.edges[e].kind == "v" for e in g.terminal[nv:])
    # horizontal edges point right, vertical ones down
    for e in g.edges:
        a, b = g.vertices[e.src], g.vertices[e.dst]
        if e.kind == "h":
            assert b.x > a.x
        elif e.kind == "v":
            assert b.y > a.y


@given(pair(max_n=6, max_len=10))
def test_compact_preserves_counts(p):
    u, v = p
    g = reversing_diagram(u, v)
    c = compact(g)
    assert c.nontrivial == g.nontrivial
    assert c.count(TileType.III) == g.count(TileType.III) - c.count(TileType.IPRIME) - c.count(TileType.IDBLPRIME)
    d = to_derivation(c)
    assert d.start == u + g.v_prime and d.end() == v + g.u_prime
    assert compact(c) is c


@given(equivalent_pair())
def test_digon_free_certificate_is_sound(p):
    u, v = p
    g = reversing_diagram(u, v)
    cert = certify_digon_free(g)
    if cert.optimal:
        assert not cert.duplicates
        assert g.nontrivial == distance(u.letters, v.letters)


def test_fig_pair_diagram():
    g = reversing_diagram(U, V)
    d = to_derivation(g)
    assert d.start == U and d.end() == V and len(d) == 8
    cert = certify(d)
    assert [format_name(x) for x in cert.duplicates] == ["{{1,4},{2,3}}"]
    assert not certify_digon_free(g).optimal
    c = compact(g)
    assert c.nontrivial == 8 and c.count(TileType.III) > 0
    assert {t.type for t in c.tiles} >= {TileType.IPRIME, TileType.IDBLPRIME}


def test_star_diagram():
    g = reversing_diagram(W("1.2.1", 3), W("2.1.2", 3))
    assert g.counts == {TileType.I: 1, TileType.III: 4}
    assert len(to_derivation(g)) == 1
    assert certify_digon_free(g).verdict == "Inconclusive"
    assert fusion_candidates(g)


def test_certify_requires_reduced_boundaries():
    g = reversing_diagram(W("1.1", 3), W("2", 3))
    with pytest.raises(NotReduced):
        certify_digon_free(g)


def test_no_digons_no_change():
    g = reversing_diagram(W("1", 4), W("3", 4))
    assert compact(g).tiles == g.tiles


def test_general_extended_word_diagram():
    g = diagram(ExtendedWord.parse("-1.-2.-1.2.1.2", 3))
    assert g.count(TileType.I) == 1 and g.count(TileType.III) == 4
    with pytest.raises(ValueError):
        to_derivation(g)


def test_tile_names_on_diagram():
    g = reversing_diagram(U, V)
    named = [format_name(t.name) for t in g.tiles if t.type.nontrivial]
    assert sorted(named) == sorted(format_name(x) for x in certify(to_derivation(g)).names)


@pytest.mark.parametrize("n", [3, 4])
def test_join_on_all_pairs_of_permutations(n):
    perms = [Permutation(n, p) for p in permutations(range(1, n + 1))]
    for p in perms:
        for q in perms:
            r = reverse_pair(nf_of_perm(p), nf_of_perm(q))
            assert evaluate(nf_of_perm(p) + r.v_prime).images == join(n, p.images, q.images)
