"""
Subword reversing and reversing diagrams.

Reversing rewrites a factor s̄_i s_j of an extended word:

    s̄_i s_j  ->  s_j s_i s̄_j s̄_i   if |i - j| = 1   (type I, a hexagon)
    s̄_i s_j  ->  s_j s̄_i           if |i - j| >= 2  (type II, a square)
    s̄_i s_i  ->  ε                                  (type III, a digon)

until the word has the shape v' ū'.  Started from ū v, the process draws a
diagram on a grid whose nontrivial tiles form a van Kampen diagram for
(u v', v u') once the ε-arcs are collapsed.  The diagram does not depend on
the order in which factors are reversed; the engine picks the leftmost factor
unless told otherwise.
"""
from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from graphlib import CycleError, TopologicalSorter

import networkx as nx

from .derivations import CERTIFIED, INCONCLUSIVE, Certificate, Derivation, Step, step_names
from .errors import NotReduced, StepBudgetExceeded
from .words import ExtendedWord, Relation, Word, is_reduced

DEFAULT_BUDGET = 10**8


class TileType(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IPRIME = "I'"
    IDBLPRIME = "I''"

    @property
    def nontrivial(self) -> bool:
        return self is not TileType.III


@dataclass(frozen=True)
class ReversingStep:
    position: int  # index of s̄_i in the word before the step
    tile: TileType
    i: int
    j: int


@dataclass(frozen=True)
class ReversingResult:
    start: ExtendedWord
    terminal: ExtendedWord
    steps: tuple[ReversingStep, ...]
    u_prime: Word
    v_prime: Word

    @property
    def counts(self) -> Counter:
        return Counter(s.tile for s in self.steps)

    @property
    def nontrivial(self) -> int:
        c = self.counts
        return c[TileType.I] + c[TileType.II]

    def summary(self) -> str:
        c = self.counts
        return f"{self.nontrivial} (I={c[TileType.I]} II={c[TileType.II]} III={c[TileType.III]})"


def _rule(i: int, j: int) -> tuple[TileType, list[int]]:
    if i == j:
        return TileType.III, []
    if abs(i - j) == 1:
        return TileType.I, [j, i, -j, -i]
    return TileType.II, [j, -i]


def reverse(w: ExtendedWord, strategy: str = "leftmost", budget: int = DEFAULT_BUDGET) -> ReversingResult:
    """
    Reverse ``w`` until no factor s̄_i s_j remains.

    ``strategy`` is ``"leftmost"`` or ``"rightmost"``; both reach the same
    terminal word with the same tile counts.  ``budget`` bounds the number
    of steps (trivial ones included).
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    word = list(w.letters)
    steps: list[ReversingStep] = []
    leftmost = strategy == "leftmost"
    k = 0 if leftmost else len(word) - 2
    while True:
        if leftmost:
            while k < len(word) - 1 and not (word[k] < 0 < word[k + 1]):
                k += 1
            if k >= len(word) - 1:
                break
        else:
            k = min(k, len(word) - 2)
            while k >= 0 and not (word[k] < 0 < word[k + 1]):
                k -= 1
            if k < 0:
                break
        if len(steps) >= budget:
            raise StepBudgetExceeded(f"no terminal word after {budget} reversing steps")
        i, j = -word[k], word[k + 1]
        tile, new = _rule(i, j)
        word[k:k + 2] = new
        steps.append(ReversingStep(k, tile, i, j))
        k = max(k - 1, 0) if leftmost else k + len(new)
    terminal = ExtendedWord(w.n, tuple(word))
    u_prime, v_prime = terminal.split_terminal()
    return ReversingResult(w, terminal, tuple(steps), u_prime, v_prime)


def reverse_pair(u: Word, v: Word, strategy: str = "leftmost", budget: int = DEFAULT_BUDGET) -> ReversingResult:
    return reverse(ExtendedWord.from_pair(u, v), strategy, budget)


def compl(u: Word, v: Word, budget: int = DEFAULT_BUDGET) -> int:
    """Reversing complexity: the number of nontrivial tiles for the pair (u, v)."""
    return reverse_pair(u, v, budget=budget).nontrivial


# -- diagrams ---------------------------------------------------------------


@dataclass
class Vertex:
    id: int
    x: int = 0
    y: int = 0


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    dst: int
    label: int  # generator index; 0 on ε-arcs
    kind: str  # "h" (rightward), "v" (downward) or "eps"


@dataclass
class Tile:
    """
    One tile; boundary edge ids are listed along the two source-to-sink sides.

    ``left`` then ``bottom`` is the lower-left side, ``top`` then ``right`` the
    upper-right side.  Compacted tiles keep their constituents in ``parts``.
    """

    id: int
    type: TileType
    step: int
    left: tuple[int, ...]
    top: tuple[int, ...]
    bottom: tuple[int, ...] = ()
    right: tuple[int, ...] = ()
    eps: tuple[int, ...] = ()
    parts: tuple[Tile, ...] = ()
    name: frozenset | None = None

    @property
    def hexagon(self) -> Tile:
        """The tile carrying the braid relation (itself unless compacted)."""
        return self.parts[0] if self.parts else self


@dataclass
class GridDiagram:
    n: int
    start: ExtendedWord
    vertices: list[Vertex]
    edges: list[Edge]
    tiles: list[Tile]
    initial: tuple[int, ...]  # frontier edges of the start word
    terminal: tuple[int, ...]  # frontier edges of the terminal word
    u: Word | None = None
    v: Word | None = None
    u_prime: Word | None = None
    v_prime: Word | None = None
    compacted: bool = False

    def count(self, tile_type: TileType) -> int:
        return sum(1 for t in self.tiles if t.type is tile_type)

    @property
    def counts(self) -> Counter:
        return Counter(t.type for t in self.tiles)

    @property
    def nontrivial(self) -> int:
        return sum(1 for t in self.tiles if t.type.nontrivial)

    def out_degrees(self) -> Counter:
        """Labelled (non-ε) edges leaving each vertex."""
        return Counter(e.src for e in self.edges if e.kind != "eps")

    def boundary_words(self) -> tuple[Word, Word]:
        """(u v', v u'): the two boundary words of the collapsed diagram."""
        if self.u is None:
            raise ValueError("diagram was not built from a pair (u, v)")
        return self.u + self.v_prime, self.v + self.u_prime


def diagram(w: ExtendedWord, budget: int = DEFAULT_BUDGET) -> GridDiagram:
    """The reversing diagram drawn by reversing ``w``."""
    result = reverse(w, budget=budget)
    return _build(result)


def reversing_diagram(u: Word, v: Word, budget: int = DEFAULT_BUDGET) -> GridDiagram:
    """The reversing diagram for the pair (u, v): u down the left, v along the top."""
    result = reverse_pair(u, v, budget=budget)
    g = _build(result)
    g.u, g.v = u, v
    g.u_prime, g.v_prime = result.u_prime, result.v_prime
    if is_reduced(u + result.v_prime) and is_reduced(v + result.u_prime):
        _attach_names(g)
    return g


def _build(result: ReversingResult) -> GridDiagram:
    vertices: list[Vertex] = [Vertex(0)]
    edges: list[Edge] = []

    def vertex() -> int:
        vertices.append(Vertex(len(vertices)))
        return len(vertices) - 1

    def edge(src: int, dst: int, label: int, kind: str) -> int:
        edges.append(Edge(len(edges), src, dst, label, kind))
        return len(edges) - 1

    front: list[int] = []
    cur = 0
    for x in result.start.letters:
        nxt = vertex()
        front.append(edge(cur, nxt, x, "h") if x > 0 else edge(nxt, cur, -x, "v"))
        cur = nxt
    initial = tuple(front)

    tiles: list[Tile] = []
    for index, st in enumerate(result.steps):
        k = st.position
        e1, e2 = edges[front[k]], edges[front[k + 1]]
        assert e1.kind == "v" and e2.kind == "h" and (e1.label, e2.label) == (st.i, st.j)
        a, c = e1.dst, e2.dst
        i, j = st.i, st.j
        tid = len(tiles)
        if st.tile is TileType.I:
            ev, dv, fv = vertex(), vertex(), vertex()
            bottom = (edge(a, ev, j, "h"), edge(ev, dv, i, "h"))
            right = (edge(c, fv, i, "v"), edge(fv, dv, j, "v"))
            front[k:k + 2] = [bottom[0], bottom[1], right[1], right[0]]
            tiles.append(Tile(tid, TileType.I, index, (e1.id,), (e2.id,), bottom, right))
        elif st.tile is TileType.II:
            dv = vertex()
            bottom = (edge(a, dv, j, "h"),)
            right = (edge(c, dv, i, "v"),)
            front[k:k + 2] = [bottom[0], right[0]]
            tiles.append(Tile(tid, TileType.II, index, (e1.id,), (e2.id,), bottom, right))
        else:
            eps = edge(a, c, 0, "eps")
            front[k:k + 2] = []
            tiles.append(Tile(tid, TileType.III, index, (e1.id,), (e2.id,), eps=(eps,)))

    g = GridDiagram(result.start.n, result.start, vertices, edges, tiles, initial, tuple(front))
    _layout(g)
    return g


def _longest(g: GridDiagram, weights: dict[str, int], eps_reversed: bool) -> dict[int, int]:
    preds: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for e in g.edges:
        src, dst = (e.dst, e.src) if (e.kind == "eps" and eps_reversed) else (e.src, e.dst)
        preds[dst].append((src, weights[e.kind]))
    order = TopologicalSorter({v.id: [p for p, _ in preds[v.id]] for v in g.vertices}).static_order()
    level: dict[int, int] = {}
    for vid in order:
        level[vid] = max((level[p] + w for p, w in preds[vid]), default=0)
    return level


def _layout(g: GridDiagram) -> None:
    """Integer coordinates: longest rightward / downward edge counts from the source."""
    try:
        xs = _longest(g, {"h": 1, "v": 0, "eps": 0}, eps_reversed=False)
        ys = _longest(g, {"h": 0, "v": 1, "eps": 0}, eps_reversed=True)
    except CycleError:
        g_plain = replace(g, edges=[e for e in g.edges if e.kind != "eps"])
        xs = _longest(g_plain, {"h": 1, "v": 0}, eps_reversed=False)
        ys = _longest(g_plain, {"h": 0, "v": 1}, eps_reversed=True)
    for vert in g.vertices:
        vert.x, vert.y = xs[vert.id], ys[vert.id]


# -- collapsing ε-arcs: diagram -> derivation --------------------------------


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        self.parent[self.find(a)] = self.find(b)


def _raw_tiles(g: GridDiagram) -> list[Tile]:
    out = []
    for t in g.tiles:
        out.extend(t.parts if t.parts else (t,))
    return out


def _derivation_with_tiles(g: GridDiagram) -> tuple[Derivation, list[Tile]]:
    if g.u is None:
        raise ValueError("diagram was not built from a pair (u, v)")
    edge_class = _UnionFind()
    tiles = _raw_tiles(g)
    for t in tiles:
        if t.type is TileType.III:
            # the two sides of a digon become a single edge
            edge_class.union(t.left[0], t.top[0])
    cls = edge_class.find
    label = {cls(e.id): e.label for e in g.edges if e.kind != "eps"}

    nu = len(g.u)
    u_edges = list(reversed(g.initial[:nu]))
    v_prime_edges = list(g.terminal[: len(g.v_prime)])
    path = [cls(e) for e in u_edges + v_prime_edges]

    by_first: dict[int, list[tuple[Tile, list[int], list[int]]]] = defaultdict(list)
    for t in tiles:
        if t.type.nontrivial:
            lower = [cls(e) for e in t.left + t.bottom]
            upper = [cls(e) for e in t.top + t.right]
            by_first[lower[0]].append((t, lower, upper))

    remaining = sum(len(x) for x in by_first.values())
    steps: list[Step] = []
    order: list[Tile] = []
    word = Word(g.n, tuple(label[c] for c in path))
    start = word
    while remaining:
        found = None
        for pos, c in enumerate(path):
            for entry in by_first.get(c, ()):
                t, lower, upper = entry
                if path[pos:pos + len(lower)] == lower:
                    found = (pos, entry)
                    break
            if found:
                break
        if found is None:
            raise RuntimeError("collapsed diagram has no tile on the current path")
        pos, (t, lower, upper) = found
        by_first[lower[0]].remove(found[1])
        remaining -= 1
        kind = "I" if t.type is TileType.I else "II"
        steps.append(Step(pos, Relation(kind, label[lower[0]], label[lower[1]])))
        order.append(t)
        path[pos:pos + len(lower)] = upper
    return Derivation(start, tuple(steps)), order


def to_derivation(g: GridDiagram) -> Derivation:
    """
    A derivation from u v' to v u' with one step per nontrivial tile.
    """
    d, _ = _derivation_with_tiles(g)
    return d


def _attach_names(g: GridDiagram) -> None:
    d, order = _derivation_with_tiles(g)
    names = step_names(d)
    by_id = {t.id: name for t, name in zip(order, names)}
    for t in g.tiles:
        t.name = by_id.get(t.hexagon.id)
        for part in t.parts:
            part.name = by_id.get(part.id)


# -- compaction ---------------------------------------------------------------


def fusion_candidates(g: GridDiagram) -> list[tuple[int, int, TileType]]:
    """
    (hexagon id, digon id, fused type) for every hexagon/digon pair that can merge.

    I' absorbs the digon sitting on the upper right edge of the hexagon, I''
    the one sitting on its lower left edge.
    """
    hexes = [t for t in g.tiles if t.type is TileType.I]
    digon_by_left = {t.left[0]: t for t in g.tiles if t.type is TileType.III}
    digon_by_top = {t.top[0]: t for t in g.tiles if t.type is TileType.III}
    out = []
    for h in hexes:
        if h.right[0] in digon_by_left:
            out.append((h.id, digon_by_left[h.right[0]].id, TileType.IPRIME))
        if h.bottom[0] in digon_by_top:
            out.append((h.id, digon_by_top[h.bottom[0]].id, TileType.IDBLPRIME))
    return out


def compact(g: GridDiagram) -> GridDiagram:
    """
    Fuse hexagon/digon pairs into I' and I'' tiles.

    Pairs are taken greedily, leftmost hexagon first.  When that leaves digons
    a larger grouping could absorb, a maximum matching is used instead, so a
    digon-free compaction is found whenever one exists.  The
    number of nontrivial tiles is unchanged.
    """
    if g.compacted:
        return g
    candidates = fusion_candidates(g)
    # integer node keys (hexagon 2h, digon 2d + 1) keep the matching independent of hash seeding
    graph = nx.Graph()
    for h, d, kind in candidates:
        graph.add_edge(2 * h, 2 * d + 1, kind=kind)
    matching: dict[int, int] = {}
    for h, d, _ in sorted(candidates):
        if 2 * h not in matching and 2 * d + 1 not in matching:
            matching[2 * h], matching[2 * d + 1] = 2 * d + 1, 2 * h
    if candidates:
        best = nx.bipartite.hopcroft_karp_matching(graph, top_nodes={2 * h for h, _, _ in candidates})
        if len(best) > len(matching):
            matching = best

    tiles_by_id = {t.id: t for t in g.tiles}
    fused_digons = set()
    new_tiles: list[Tile] = []
    for t in g.tiles:
        if t.type is TileType.III:
            continue
        partner = matching.get(2 * t.id)
        if partner is None:
            new_tiles.append(t)
            continue
        d = tiles_by_id[partner // 2]
        fused_digons.add(d.id)
        kind = graph.edges[2 * t.id, partner]["kind"]
        if kind is TileType.IPRIME:
            fused = Tile(t.id, kind, t.step, t.left, t.top + d.top, t.bottom, t.right[1:], d.eps, (t, d), t.name)
        else:
            fused = Tile(t.id, kind, t.step, t.left + d.left, t.top, t.bottom[1:], t.right, d.eps, (t, d), t.name)
        new_tiles.append(fused)
    for t in g.tiles:
        if t.type is TileType.III and t.id not in fused_digons:
            new_tiles.append(t)
    new_tiles.sort(key=lambda t: t.id)
    return replace(g, tiles=new_tiles, compacted=True)


def certify_digon_free(g: GridDiagram) -> Certificate:
    """
    CertifiedOptimal when the compacted diagram has no digon left.

    In that case its nontrivial tile count equals dist(u v', v u').
    """
    u_side, v_side = g.boundary_words()
    if not (is_reduced(u_side) and is_reduced(v_side)):
        raise NotReduced(f"boundary words {u_side}, {v_side} are not both reduced")
    c = compact(g)
    names = [t.name for t in c.tiles if t.type.nontrivial]
    counts = Counter(names)
    dups = [x for x in dict.fromkeys(names) if counts[x] > 1]
    left = c.count(TileType.III)
    if left:
        return Certificate(INCONCLUSIVE, names, dups, f"{left} digon(s) remain after compaction")
    return Certificate(CERTIFIED, names, dups)


@dataclass
class PairReport:
    """Everything the reversing engine says about one pair (u, v)."""

    u: Word
    v: Word
    result: ReversingResult
    diagram: GridDiagram = field(repr=False)

    @property
    def compl(self) -> int:
        return self.result.nontrivial
