"""Finite iterative multisets with symmetry, decided exactly.

An element is a finite, interned tree whose edges carry finite G-sets.  The
public surface re-exports the constructors and queries from the submodules;
the ``lang`` subpackage adds a small construction language and the
``iterite`` command.
"""

__version__ = "0.1.0"

from .config import Caps, get_caps, set_caps, using_caps
from .elgroupoid import ElComponent, ElDescriptor, el, groupoid_cardinality, pi0
from .errors import (CapExceeded, DegreeMismatch, GroupMismatch, GroupTooLarge,
                     IndexOutOfRange, IoError, IteriteError, MalformedAction,
                     MissingAssignment, NonDiscreteEl, NotASubgroup, ParseError,
                     UnboundIdentifier)
from .gset import GSet, gset_aut_order, gset_iso, regular_gset, trivial_gset
from .permgroup import Perm, PermGroup, coset_action, group_from_generators
from .universe import (MSet, OrbitPredicate, aut, binary_union, canon_code,
                       classifying_space, el_orbits, empty, eq, expo, fuzzy_nat, graph,
                       id_count, is_accessible, is_discrete_el, is_operation, membership,
                       mult, pair, rank, replace, separate0, separate1, to_json, tup, union,
                       unpair, vn)

__all__ = [
    "__version__", "Caps", "get_caps", "set_caps", "using_caps", "ElComponent", "ElDescriptor",
    "el", "groupoid_cardinality", "pi0", "CapExceeded", "DegreeMismatch", "GroupMismatch",
    "GroupTooLarge", "IndexOutOfRange", "IoError", "IteriteError", "MalformedAction",
    "MissingAssignment", "NonDiscreteEl", "NotASubgroup", "ParseError", "UnboundIdentifier",
    "GSet", "gset_aut_order", "gset_iso", "regular_gset", "trivial_gset", "Perm", "PermGroup",
    "coset_action", "group_from_generators", "MSet", "OrbitPredicate", "aut", "binary_union",
    "canon_code", "classifying_space", "el_orbits", "empty", "eq", "expo", "fuzzy_nat",
    "graph", "id_count", "is_accessible", "is_discrete_el", "is_operation", "membership",
    "mult", "pair", "rank", "replace", "separate0", "separate1", "to_json", "tup", "union",
    "unpair", "vn",
]
