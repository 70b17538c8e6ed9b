"""
Word families with known reversing behaviour, and validators for their step counts.

Validators never correct a formula: they run the engine, compare with the
closed form, and report both numbers.  ``check()`` turns a disagreement into a
:class:`~permdist.errors.Mismatch`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import Mismatch
from .normalform import DescendingRun
from .reversing import TileType, compact, reverse, reverse_pair, reversing_diagram
from .words import ExtendedWord, Word

BLOCK_KINDS = ("a", "b", "c", "d")


@dataclass(frozen=True)
class BlockWord:
    """
    a_{i,p} = s_{i+p-1} ... s_i,   b_{i,p} = s_i ... s_{i+p-1},
    c_{i,p} = a_{i,p} a_{i+1,p},   d_{i,p} = b_{i+1,p} b_{i,p}.
    """

    kind: str
    i: int
    p: int

    def __post_init__(self):
        if self.kind not in BLOCK_KINDS:
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.i < 1 or self.p < 1:
            raise ValueError("block words need i >= 1 and p >= 1")

    @property
    def letters(self) -> tuple[int, ...]:
        i, p = self.i, self.p
        if self.kind == "a":
            return tuple(range(i + p - 1, i - 1, -1))
        if self.kind == "b":
            return tuple(range(i, i + p))
        if self.kind == "c":
            return BlockWord("a", i, p).letters + BlockWord("a", i + 1, p).letters
        return BlockWord("b", i + 1, p).letters + BlockWord("b", i, p).letters

    @property
    def top(self) -> int:
        """Largest generator index used."""
        return max(self.letters)

    def word(self, n: int | None = None) -> Word:
        return Word(n if n is not None else self.top + 1, self.letters)


def block(kind: str, i: int, p: int, n: int | None = None) -> Word:
    return BlockWord(kind, i, p).word(n)


# -- flip family --------------------------------------------------------------


def flip_pair(n: int) -> tuple[Word, Word]:
    """
    Two reduced words for the flip: s_{1,1} s_{2,1} ... s_{n,1} and s_{n,1} s_{n,2} ... s_{n,n-1}.
    """
    if n < 2:
        raise ValueError("flip_pair needs n >= 2")
    u: tuple[int, ...] = ()
    v: tuple[int, ...] = ()
    for k in range(1, n + 1):
        u += DescendingRun(k, 1).letters
    for k in range(1, n):
        v += DescendingRun(n, k).letters
    return Word(n, u), Word(n, v)


def flip_lower_bound(n: int) -> int:
    """Exact lower bound for the flip pair: one type I per triple, three type II per quadruple."""
    if n < 2:
        raise ValueError("flip_lower_bound needs n >= 2")
    return comb(n, 3) + 3 * comb(n, 4)


@dataclass(frozen=True)
class QuadraticBoundReport:
    """compl of the flip pair against l(l-1)/2, l the common length."""

    n: int
    length: int
    compl: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.compl >= self.bound

    @property
    def ratio(self) -> float:
        return self.compl / self.bound if self.bound else float("inf")


def flip_quadratic_bound(n: int) -> QuadraticBoundReport:
    """
    Compare compl(flip_pair(n)) with l(l-1)/2.

    Both grow like n^4/8, but compl stays below l(l-1)/2 for every n >= 3;
    only the ratio tends to 1.
    """
    u, v = flip_pair(n)
    ell = len(u)
    return QuadraticBoundReport(n, ell, reverse_pair(u, v).nontrivial, ell * (ell - 1) // 2)


# -- block lemmas ---------------------------------------------------------------


@dataclass(frozen=True)
class FamilyReport:
    family: str
    p: int
    expected: int  # closed form under test
    actual: int  # nontrivial tiles counted by the engine
    counts: dict[str, int]
    expected_terminal: str
    actual_terminal: str

    @property
    def all_steps(self) -> int:
        return sum(self.counts.values())

    @property
    def terminal_ok(self) -> bool:
        return self.expected_terminal == self.actual_terminal

    @property
    def count_ok(self) -> bool:
        return self.expected == self.actual

    @property
    def ok(self) -> bool:
        return self.terminal_ok and self.count_ok

    def describe(self) -> str:
        c = self.counts
        return (
            f"{self.family} p={self.p}: expected {self.expected}, engine {self.actual} "
            f"(I={c.get('I', 0)} II={c.get('II', 0)} III={c.get('III', 0)}, all steps {self.all_steps}); "
            f"terminal {'ok' if self.terminal_ok else 'WRONG: ' + self.actual_terminal}"
        )

    def check(self) -> FamilyReport:
        if not self.ok:
            raise Mismatch(self.expected, self.actual, self.describe())
        return self


def _counts(result) -> dict[str, int]:
    c = result.counts
    return {t.value: c[t] for t in (TileType.I, TileType.II, TileType.III)}


def ba_formula(p: int) -> int:
    """Stated count for reversing b̄_{i,p} a_{i+1,p}."""
    return p * p + p - 1


def ba_exact(p: int) -> int:
    """Count the engine actually produces: p type I, p(p-1) type II."""
    return p * p


def dc_formula(p: int) -> int:
    """Stated count for reversing d̄_{i,p} c_{i+2,p}."""
    return 4 * p * p + 8 * p - 3


def dc_exact(p: int) -> int:
    """Engine count: four runs of the b̄a lemma plus 4p + 1 bridging tiles."""
    return (2 * p + 1) ** 2


def _validate(family: str, p: int, start: ExtendedWord, expected: int, terminal: ExtendedWord) -> FamilyReport:
    result = reverse(start)
    return FamilyReport(family, p, expected, result.nontrivial, _counts(result), str(terminal), str(result.terminal))


def validate_ba(p: int) -> FamilyReport:
    """Reverse b̄_{1,p} a_{2,p}; expect a_{1,p+1} b̄_{1,p+1} after p^2 + p - 1 tiles."""
    if p < 1:
        raise ValueError("p >= 1 required")
    n = p + 2
    start = ExtendedWord.from_pair(block("b", 1, p, n), block("a", 2, p, n))
    terminal = ExtendedWord(n, block("a", 1, p + 1, n).letters) + block("b", 1, p + 1, n).bar()
    return _validate("ba", p, start, ba_formula(p), terminal)


def validate_dc(p: int) -> FamilyReport:
    """Reverse d̄_{1,p} c_{3,p}; expect c_{1,p+2} d̄_{1,p+2} after 4p^2 + 8p - 3 tiles."""
    if p < 1:
        raise ValueError("p >= 1 required")
    n = p + 4
    start = ExtendedWord.from_pair(block("d", 1, p, n), block("c", 3, p, n))
    terminal = ExtendedWord(n, block("c", 1, p + 2, n).letters) + block("d", 1, p + 2, n).bar()
    return _validate("dc", p, start, dc_formula(p), terminal)


# -- quartic family -------------------------------------------------------------


def quartic_pair(ell: int) -> tuple[Word, Word]:
    """(s_{2l} s_{2l-2} ... s_2, s_1 s_3 ... s_{2l-1}) over 2l + 2 strands."""
    if ell < 1:
        raise ValueError("quartic_pair needs l >= 1")
    n = 2 * ell + 2
    return Word(n, tuple(range(2 * ell, 1, -2))), Word(n, tuple(range(1, 2 * ell, 2)))


def quartic_total(ell: int) -> int:
    """Closed form (8l^4 - 23l^2 + 9l + 12)/6 under test."""
    if ell < 1:
        raise ValueError("l >= 1 required")
    num = 8 * ell**4 - 23 * ell**2 + 9 * ell + 12
    q, r = divmod(num, 6)
    if r:
        raise ArithmeticError(f"closed form is not an integer at l={ell}")
    return q


def quartic_exact(ell: int) -> int:
    """
    The engine's count, (4l^4 - 4l^3 - l^2 + 4l)/3.

    It splits as l(l-1)/2 commutations, l hexagons, then (l-k) uses of the d̄c
    lemma at width 2k-1 for k = 1..l-1, each costing (4k-1)^2 tiles.
    """
    return (4 * ell**4 - 4 * ell**3 - ell**2 + 4 * ell) // 3


def _commutations_first(w: ExtendedWord) -> tuple[int, ExtendedWord]:
    """Apply only far-commutation reversals until none applies; return their number."""
    letters = list(w.letters)
    count = 0
    k = 0
    while k < len(letters) - 1:
        a, b = letters[k], letters[k + 1]
        if a < 0 < b and abs(a + b) >= 2:
            letters[k:k + 2] = [b, a]
            count += 1
            k = max(k - 1, 0)
        else:
            k += 1
    return count, ExtendedWord(w.n, tuple(letters))


@dataclass(frozen=True)
class QuarticReport:
    ell: int
    expected: int
    actual: int
    counts: dict[str, int]
    phase1: int  # commutations before the first hexagon
    phase1_stated: Fraction  # l(l-2)/2
    phase2: int  # hexagons right after phase 1
    phase3: int  # the remaining tiles, from repeated d̄c reversals
    phase3_stated: int
    digon_free: bool
    terminal: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def describe(self) -> str:
        c = self.counts
        return (
            f"quartic l={self.ell}: closed form {self.expected}, engine {self.actual} "
            f"(I={c['I']} II={c['II']} III={c['III']}); phases: commutations {self.phase1} "
            f"(stated {self.phase1_stated}), hexagons {self.phase2}, d̄c part {self.phase3} "
            f"(stated {self.phase3_stated}); digon-free after compaction: {self.digon_free}"
        )

    def check(self) -> QuarticReport:
        if not self.ok:
            raise Mismatch(self.expected, self.actual, self.describe())
        return self


def validate_quartic(ell: int) -> QuarticReport:
    u, v = quartic_pair(ell)
    g = reversing_diagram(u, v)
    start = ExtendedWord.from_pair(u, v)
    result = reverse(start)
    phase1, mid = _commutations_first(start)
    # the hexagon phase: every remaining adjacent pair s̄_{2k} s_{2k-1}
    phase2 = sum(1 for a, b in zip(mid.letters, mid.letters[1:]) if a < 0 < b and abs(a + b) == 1)
    actual = result.nontrivial
    stated3 = sum((ell - k) * dc_formula(2 * k - 1) for k in range(1, ell))
    return QuarticReport(
        ell=ell,
        expected=quartic_total(ell),
        actual=actual,
        counts=_counts(result),
        phase1=phase1,
        phase1_stated=Fraction(ell * (ell - 2), 2),
        phase2=phase2,
        phase3=actual - phase1 - phase2,
        phase3_stated=stated3,
        digon_free=compact(g).count(TileType.III) == 0,
        terminal=str(result.terminal),
    )


def quartic_threshold(lmax: int = 12, constant: Fraction = Fraction(4, 3)) -> int | None:
    """
    Smallest l <= lmax with compl(quartic_pair(l)) >= constant * l^4, or None.

    With the default 4/3 the answer is None for every lmax: the count's leading
    term is exactly (4/3) l^4 but the next one, -(4/3) l^3, is negative.
    """
    for ell in range(1, lmax + 1):
        u, v = quartic_pair(ell)
        if reverse_pair(u, v).nontrivial >= constant * ell**4:
            return ell
    return None
