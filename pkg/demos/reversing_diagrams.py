"""
Reversing diagrams and their tiles
==================================

Reversing pushes inverse letters right and positive letters left until
nothing can move.  The trace of the process is a grid of hexagons, squares
and digons; collapsing the digons leaves a van Kampen diagram, i.e. a
derivation.
"""

import os
import tempfile

from permdist import ExtendedWord, Word, certify, compact, reverse, reversing_diagram, to_derivation
from permdist.invariants import format_name
from permdist.render import to_svg

# The smallest interesting case: one hexagon and four digons.
r = reverse(ExtendedWord.parse("-1.-2.-1.2.1.2", 3))
for step in r.steps:
    print(f"  reverse -{step.i}.{step.j} at {step.position + 1}: {step.tile.value}")
print("terminal:", r.terminal, "|", r.summary())

# A pair of flip words whose diagram is not optimal.
u, v = Word.parse("1.2.1.3.2.1", 4), Word.parse("3.2.3.1.2.3", 4)
g = reversing_diagram(u, v)
print("tiles:", {t.value: k for t, k in g.counts.items()})

# Reading the collapsed diagram as a derivation gives 8 steps, one too many
# of the {{1,4},{2,3}} kind: the same square is used twice.
d = to_derivation(g)
print(len(d), "steps;", "repeated:", [format_name(x) for x in certify(d).duplicates])

# Compaction glues digons onto neighbouring hexagons.  Here digons survive,
# so the digon-free criterion stays silent.
c = compact(g)
print("compacted:", {t.value: k for t, k in c.counts.items()})

# The quartic pair with l = 2 compacts without any digon left.
g2 = reversing_diagram(Word.parse("4.2", 6), Word.parse("1.3", 6))
print("quartic l=2:", {t.value: k for t, k in compact(g2).counts.items()})

out = os.path.join(tempfile.gettempdir(), "reversing_flip4.svg")
with open(out, "w") as fh:
    fh.write(to_svg(g))
print("diagram written to", out)
