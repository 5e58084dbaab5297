"""latkit: finite lattices, free distributive lattices, congruences,
doubling and the embeddability of distributive lattices in free lattices."""

from .constructors import boolean, chain, fixture, free_distributive, linear_sum, product
from .core import FiniteLattice, Poset, dual, enumerate_lattices, is_isomorphic, validate
from .dsl import parse_construction

__all__ = [
    "FiniteLattice",
    "Poset",
    "boolean",
    "chain",
    "dual",
    "enumerate_lattices",
    "fixture",
    "free_distributive",
    "is_isomorphic",
    "linear_sum",
    "parse_construction",
    "product",
    "validate",
]
