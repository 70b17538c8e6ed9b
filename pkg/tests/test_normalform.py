from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import eval_strands, normal_words, raster_area_between, raster_area_right
from permdist.errors import NotEquivalent, NotReduced, StrandsDoNotCross
from permdist.normalform import (
    DescendingRun,
    NormalShape,
    area_between,
    area_right,
    derive,
    derive_budgets,
    derive_to_nf,
    expand,
    is_normal,
    nf,
    nf_budget,
    pull_last_strand,
    shape_of_perm,
)
from permdist.words import Word, apply_relation, evaluate, random_reduced_word, reduced_words, reduced_words_of


@st.composite
def reduced(draw, max_n=6, max_len=15):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 10**6))
    return random_reduced_word(n, draw(st.integers(0, max_len)), random.Random(seed))


def test_run_letters():
    assert DescendingRun(4, 1).letters == (3, 2, 1)
    assert DescendingRun(3, 3).letters == ()
    with pytest.raises(ValueError):
        DescendingRun(2, 3)


def test_shape_validation():
    with pytest.raises(ValueError):
        NormalShape(3, (1, 3, 1))


def test_examples():
    assert str(nf(Word.parse("2.1.2", 3))) == "1.2.1"
    assert str(nf(Word.parse("e", 3))) == "e"
    assert is_normal(Word.parse("1.2.1", 3))
    assert not is_normal(Word.parse("2.1.2", 3))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_normal_words_enumerate_each_permutation_once(n):
    seen = {}
    for letters in normal_words(n):
        images = eval_strands(n, letters)
        assert images not in seen
        seen[images] = letters
        w = Word(n, letters)
        assert nf(w).letters == letters
        assert expand(shape_of_perm(evaluate(w))).letters == letters
    assert len(seen) == {1: 1, 2: 2, 3: 6, 4: 24, 5: 120}[n]


@given(reduced())
def test_nf_is_equivalent_and_reduced(w):
    out = nf(w)
    assert evaluate(out) == evaluate(w) and len(out) == len(w)


@given(reduced())
def test_area_right_matches_raster(w):
    assert area_right(w) == raster_area_right(w.n, w.letters)


def test_area_right_trailing_strand():
    # strand count matters: s3 s2 over four strands leaves one square right of strand 4
    assert area_right(Word.parse("3.2", 4)) == 1
    assert area_right(Word.parse("e", 4)) == 0


@pytest.mark.parametrize("n", [3, 4])
def test_area_between_matches_raster(n):
    for w in reduced_words(n):
        for i in range(1, n):
            ev = evaluate(w)
            if ev(i) > ev(i + 1):
                assert area_between(w, i) == raster_area_between(n, w.letters, i)
            else:
                with pytest.raises(StrandsDoNotCross):
                    area_between(w, i)


def test_area_between_calibration():
    for text in ("1.3.2.1.3.2", "3.1.2.1.3.2", "1.3.2.3.1.2"):
        assert area_between(Word.parse(text, 4), 2) == 9


@given(reduced())
def test_pull_last_strand(w):
    d, v, run = pull_last_strand(w)
    assert d.start == w
    assert d.end().letters == v.letters + run.letters
    assert run.j == w.n
    assert v.n == max(w.n - 1, 1)
    for step, before in zip(d.steps, d.words()):
        after = apply_relation(before, step.pos, step.relation)
        assert area_right(before) - area_right(after) == (2 if step.kind == "I" else 1)


@given(reduced())
def test_derive_to_nf_budget(w):
    d = derive_to_nf(w)
    assert d.end() == nf(w)
    assert len(d) <= nf_budget(w.n, len(w))


@given(reduced(max_n=5), st.integers(0, 10**6))
def test_derive_connects_equivalent_words(u, seed):
    v = random.Random(seed).choice(reduced_words_of(evaluate(u)))
    d = derive(u, v)
    assert d.start == u and d.end() == v
    assert len(d) <= derive_budgets(u.n, len(u))["derivable"]


def test_derive_errors():
    with pytest.raises(NotEquivalent):
        derive(Word.parse("1.2", 3), Word.parse("2.1", 3))
    with pytest.raises(NotReduced):
        derive_to_nf(Word.parse("1.1", 3))


def test_budgets():
    assert nf_budget(4, 6) == 36
    assert derive_budgets(4, 6) == {"derivable": 72, "stated": 36}
