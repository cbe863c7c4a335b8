"""Reduced-word braid graphs for the Coxeter groups of types A and B."""

from .coxeter import (
    Element, Family, GroupSpec, Hyperplane, Word, all_elements, crossing_sequence, evaluate,
    inversion_set, is_reduced, length, parse_element, parse_word,
)
from .errors import (
    BraidGraphError, BudgetExceededError, DomainError, InvalidInputError, InvariantError,
    NotExhaustiveError, UnsupportedModeError,
)
from .rank2 import Rank2Flat, enumerate_flats, induced_order, l2_of, separation, verify_metric_axioms
from .wordgraph import (
    DiameterMode, WordGraph, antipode, bfs_distances, braid_neighbors, build_graph, diameter,
    enumerate_words, is_accessible,
)
from .canonical import canonical_word, canonical_word_w0, certify_accessibility, verify_flag_incidence
from .formulas import conjecture_check, count_flats_by_geometry, l2_closed_form

__version__ = "0.1.0"
