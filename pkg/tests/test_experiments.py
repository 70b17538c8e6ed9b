from __future__ import annotations

import csv
import io

from permdist.experiments import (
    GROWTH_COLUMNS,
    QUARTIC_COLUMNS,
    csv_text,
    equality_tally,
    exhaustive_pairs,
    growth_rows,
    quartic_rows,
    sampled_pairs,
    stabilization_rows,
)
from permdist.words import evaluate


def test_quartic_csv():
    text = csv_text(quartic_rows(4), QUARTIC_COLUMNS)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == list(QUARTIC_COLUMNS)
    assert [int(r["engine_count"]) for r in rows] == [1, 12, 73, 256]
    assert [int(r["formula_value"]) for r in rows] == [1, 11, 80, 288]
    assert all(r["digon_free"] == "True" for r in rows)


def test_threads_do_not_change_rows():
    assert quartic_rows(4, workers=1) == quartic_rows(4, workers=4)
    assert growth_rows([4, 5], [3, 5], 10, seed=3, workers=1) == growth_rows([4, 5], [3, 5], 10, seed=3, workers=3)


def test_exhaustive_pairs_n4():
    pairs = exhaustive_pairs(4)
    assert len(pairs) == 173
    assert all(evaluate(u) == evaluate(v) and u != v for u, v in pairs)


def test_equality_counterexamples_n4():
    tally = equality_tally(4)
    assert (tally.pairs, tally.equal) == (173, 171)
    found = {(str(u), str(v), lb, d) for u, v, lb, d in tally.counterexamples}
    assert found == {("1.3.2.1.3.2", "2.3.1.2.3.1", 5, 7), ("2.1.3.2.1.3", "3.1.2.3.1.2", 5, 7)}


def test_sampled_pairs_are_seeded():
    assert sampled_pairs(5, 20, 7) == sampled_pairs(5, 20, 7)
    assert all(evaluate(u) == evaluate(v) for u, v in sampled_pairs(5, 20, 7))


def test_growth_rows():
    rows = growth_rows([4], [4], 5, seed=0)
    assert list(rows[0]) == list(GROWTH_COLUMNS)
    assert rows[0]["max_compl"] >= rows[0]["mean_compl"]


def test_stabilization_small():
    rows = stabilization_rows(2, samples=100)
    table = {(r["ell"], r["n"]): r["max_compl"] for r in rows}
    assert table[(1, 3)] == 1
    # with two letters the maximum is reached once n >= 5 and then stays put
    assert table[(2, 5)] == table[(2, 6)] == 16
    assert all(r["method"] == "exhaustive" for r in rows)
