"""
Measurement runs.  Nothing here asserts a conjecture; each function returns rows
that the CLI writes as CSV.

Independent cases fan out over a thread pool; ``Executor.map`` keeps the row
order, so the output of a run is byte-for-byte reproducible.
"""
from __future__ import annotations

import csv
import io
import random
from concurrent.futures import ThreadPoolExecutor
from itertools import permutations, product
from typing import Callable, Iterable, Sequence, TextIO

from .derivations import DEFAULT_NODE_LIMIT, dist_bfs, distances_from
from .families import quartic_total, validate_quartic
from .invariants import EqualityTally, tally_equality
from .reversing import reverse_pair
from .words import Permutation, Word, evaluate, random_reduced_word, reduced_words, reduced_words_of

QUARTIC_COLUMNS = ("ell", "engine_count", "formula_value", "typeI", "typeII", "typeIII", "digon_free")
GROWTH_COLUMNS = ("n", "ell", "samples", "max_compl", "mean_compl", "max_over_n2l")
STABILIZATION_COLUMNS = ("ell", "n", "method", "pairs", "max_compl")

EXHAUSTIVE_PAIR_CAP = 250_000


def _fan_out(fn: Callable, cases: Sequence, workers: int | None) -> list:
    if workers == 1 or len(cases) <= 1:
        return [fn(c) for c in cases]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cases))


def write_csv(rows: Iterable[dict], columns: Sequence[str], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def csv_text(rows: Iterable[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    write_csv(rows, columns, buf)
    return buf.getvalue()


# -- quartic family ---------------------------------------------------------------


def _quartic_row(ell: int) -> dict:
    r = validate_quartic(ell)
    return {
        "ell": ell,
        "engine_count": r.actual,
        "formula_value": quartic_total(ell),
        "typeI": r.counts["I"],
        "typeII": r.counts["II"],
        "typeIII": r.counts["III"],
        "digon_free": r.digon_free,
    }


def quartic_rows(lmax: int, workers: int | None = None) -> list[dict]:
    return _fan_out(_quartic_row, list(range(1, lmax + 1)), workers)


# -- lower bound versus distance ------------------------------------------------------


def _classes(n: int) -> list[list[Word]]:
    return [reduced_words_of(Permutation(n, images)) for images in permutations(range(1, n + 1))]


def exhaustive_pairs(n: int) -> list[tuple[Word, Word]]:
    """Every unordered pair of distinct equivalent reduced n-expressions."""
    out = []
    for words in _classes(n):
        for a in range(len(words)):
            for b in range(a + 1, len(words)):
                out.append((words[a], words[b]))
    return out


def sampled_pairs(n: int, samples: int, seed: int) -> list[tuple[Word, Word]]:
    """Random equivalent pairs: a random reduced word and a uniform word of its class."""
    rng = random.Random(seed)
    top = n * (n - 1) // 2
    out = []
    for _ in range(samples):
        u = random_reduced_word(n, rng.randint(1, top), rng)
        v = rng.choice(reduced_words_of(evaluate(u)))
        out.append((u, v))
    return out


class _CachedDistance:
    def __init__(self, node_limit: int):
        self.node_limit = node_limit
        self.cache: dict[tuple[int, ...], dict] = {}

    def __call__(self, u: Word, v: Word) -> int:
        if u.letters not in self.cache:
            self.cache[u.letters] = distances_from(u, self.node_limit)
        return self.cache[u.letters][v.letters]


def equality_tally(
    n: int, samples: int | None = None, seed: int = 0, node_limit: int = DEFAULT_NODE_LIMIT
) -> EqualityTally:
    """
    Tally lower_bound == dist over exhaustive pairs (``samples`` None) or random ones.
    """
    if samples is None:
        return tally_equality(exhaustive_pairs(n), _CachedDistance(node_limit))
    return tally_equality(sampled_pairs(n, samples, seed), lambda u, v: dist_bfs(u, v, node_limit))


def equality_report(samples: int = 200, seed: int = 0) -> list[dict]:
    """Exhaustive n = 4 and sampled n = 5, one row each."""
    rows = []
    for n, k in ((4, None), (5, samples)):
        t = equality_tally(n, k, seed)
        rows.append(
            {
                "n": n,
                "mode": "exhaustive" if k is None else f"sampled({k})",
                "pairs": t.pairs,
                "equal": t.equal,
                "counterexamples": len(t.counterexamples),
            }
        )
    return rows


EQUALITY_COLUMNS = ("n", "mode", "pairs", "equal", "counterexamples")


# -- reversing complexity growth ------------------------------------------------------


def _growth_cell(case: tuple[int, int, int, int]) -> dict:
    n, ell, samples, seed = case
    rng = random.Random(f"{seed}:{n}:{ell}")
    values = []
    for _ in range(samples):
        u = random_reduced_word(n, ell, rng)
        v = random_reduced_word(n, ell, rng)
        values.append(reverse_pair(u, v).nontrivial)
    best = max(values)
    return {
        "n": n,
        "ell": ell,
        "samples": samples,
        "max_compl": best,
        "mean_compl": round(sum(values) / len(values), 3),
        "max_over_n2l": round(best / (n * n * ell), 4),
    }


def growth_rows(
    ns: Sequence[int], ells: Sequence[int], samples: int = 100, seed: int = 0, workers: int | None = None
) -> list[dict]:
    """Max and mean compl over random pairs of reduced words, per (n, l)."""
    cases = [(n, ell, samples, seed) for n, ell in product(ns, ells)]
    return _fan_out(_growth_cell, cases, workers)


def _stabilization_cell(case: tuple[int, int, int, int]) -> dict:
    ell, n, samples, seed = case
    words = [w for w in reduced_words(n, ell) if len(w) == ell]
    if not words:
        return {"ell": ell, "n": n, "method": "none", "pairs": 0, "max_compl": 0}
    if len(words) ** 2 <= EXHAUSTIVE_PAIR_CAP:
        pairs: Iterable = product(words, words)
        method, count = "exhaustive", len(words) ** 2
    else:
        rng = random.Random(f"{seed}:{ell}:{n}")
        pairs = ((rng.choice(words), rng.choice(words)) for _ in range(samples))
        method, count = "sampled", samples
    best = max(reverse_pair(u, v).nontrivial for u, v in pairs)
    return {"ell": ell, "n": n, "method": method, "pairs": count, "max_compl": best}


def stabilization_rows(
    lmax: int = 5, nmax: int | None = None, samples: int = 20_000, seed: int = 0, workers: int | None = None
) -> list[dict]:
    """
    N(n, l): max compl over pairs of reduced n-expressions of length l.

    Exhaustive when there are at most EXHAUSTIVE_PAIR_CAP pairs, sampled
    otherwise (sampled values are lower bounds for N).  n runs up to
    ``nmax`` (default 2l + 2) so that the stable range n >= 2l is visible.
    """
    cases = []
    for ell in range(1, lmax + 1):
        top = nmax if nmax is not None else 2 * ell + 2
        for n in range(2, top + 1):
            if n * (n - 1) // 2 >= ell:
                cases.append((ell, n, samples, seed))
    return _fan_out(_stabilization_cell, cases, workers)
