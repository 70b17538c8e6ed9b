"""
Counting reversing steps in structured families
===============================================

Block words a, b, c, d reverse in a regular way, which makes their step
counts computable in closed form.  The validators run the engine and put
the closed forms next to what actually happens.
"""

from permdist.families import (
    quartic_exact,
    quartic_pair,
    quartic_threshold,
    quartic_total,
    validate_ba,
    validate_dc,
    validate_quartic,
)
from permdist.reversing import certify_digon_free, reversing_diagram

# b̄a: nontrivial tiles versus the formula p^2 + p - 1.  The formula matches
# the number of *all* steps, digons included.
for p in range(1, 5):
    r = validate_ba(p)
    print(f"ba p={p}: formula {r.expected:>3}  tiles {r.actual:>3}  all steps {r.all_steps:>3}")

for p in range(1, 5):
    r = validate_dc(p)
    print(f"dc p={p}: formula {r.expected:>3}  tiles {r.actual:>3}  all steps {r.all_steps:>3}")

# The quartic family grows like l^4.  The engine agrees with
# (4l^4 - 4l^3 - l^2 + 4l)/3, not with the other closed form.
print(" l  engine  exact  formula")
for ell in range(1, 7):
    r = validate_quartic(ell)
    print(f"{ell:>2}  {r.actual:>6}  {quartic_exact(ell):>5}  {quartic_total(ell):>7}")

# Each quartic diagram compacts without digons, so its count is the distance.
for ell in range(1, 5):
    print(ell, certify_digon_free(reversing_diagram(*quartic_pair(ell))).verdict)

# And the count never reaches (4/3) l^4: the l^3 term is negative.
print("first l with compl >= (4/3) l^4:", quartic_threshold(12))
