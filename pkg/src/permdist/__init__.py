"""Braid-relation distances between reduced expressions of permutations."""
from .derivations import Certificate, Derivation, Step, certify, dist_bfs, shortest_derivation, step_names
from .errors import (
    IncomparableSequences,
    Mismatch,
    NotEquivalent,
    NotReduced,
    PermDistError,
    ReplayMismatch,
    StateSpaceExceeded,
    StepBudgetExceeded,
    StrandCountMismatch,
    StrandsDoNotCross,
    Unreachable,
)
from .invariants import i3, i22, inv_count, lower_bound, lower_bound_split, name_sequence
from .normalform import area_between, area_right, derive, derive_to_nf, nf, pull_last_strand
from .reversing import (
    GridDiagram,
    TileType,
    certify_digon_free,
    compact,
    compl,
    reverse,
    reversing_diagram,
    to_derivation,
)
from .words import ExtendedWord, Permutation, Relation, Word, evaluate, is_reduced

__version__ = "0.1.0"
