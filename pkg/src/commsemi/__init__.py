"""Commutation semigroups of finite metacyclic groups with trivial centre.

The library analyzes the semigroups of self-maps generated by the right
and left commutation maps x -> [x, g] and x -> [g, x] of the groups
G(m,n,k) = <a,b; a^m = 1, b^n = 1, a^b = a^k> (with gcd(m, k-1) = 1 and
n the order of k mod m), and more generally the semigroup based on any
subset of Z_m containing 0 and a unit.  Results come from an exact
container-calculus engine and are cross-checked against two independent
brute-force oracles.
"""

from .container import Container, make_container
from .group import (
    Abelian,
    GroupElement,
    InvalidPresentation,
    NonTrivialCentre,
    NotCoprimeK,
    Presentation,
    validate,
)
from .mumap import MuMap
from .sigma import BaseSet, SigmaAnalysis, analyze, enumerate_elements, left_base, right_base

__version__ = "0.1.0"

__all__ = [
    "Abelian",
    "BaseSet",
    "Container",
    "GroupElement",
    "InvalidPresentation",
    "MuMap",
    "NonTrivialCentre",
    "NotCoprimeK",
    "Presentation",
    "SigmaAnalysis",
    "analyze",
    "enumerate_elements",
    "left_base",
    "make_container",
    "right_base",
    "validate",
]
