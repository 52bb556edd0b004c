"""Containers: the sets C(x, y) = {mu(x, y*z) : z in Z_m}.

Since {y*z mod m : z} is exactly the set of multiples of gcd(m, y), a
container is canonically named by (x, d) with d = gcd(m, y); two defining
y values give equal sets iff they give the same divisor.  That makes set
equality structural equality, membership a divisibility test, and the
subset order a divisor order, so containers are never materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .group import Presentation
from .mumap import MuMap


@dataclass(frozen=True, order=True)
class Container:
    """The set {mu(x, w) : d divides w}, for d a divisor of m."""

    x: int
    d: int

    def __str__(self) -> str:
        return f"C({self.x}; {self.d})"


def make_container(p: Presentation, x: int, y: int) -> Container:
    # y = 0 gives d = m: the singleton {mu(x, 0)}.
    return Container(x % p.m, math.gcd(p.m, y % p.m))


def order(p: Presentation, c: Container) -> int:
    """|C(x, y)| = m / gcd(m, y)."""
    return p.m // c.d


def contains(p: Presentation, c: Container, mu: MuMap) -> bool:
    return mu.x == c.x and mu.y % c.d == 0


def subset(p: Presentation, c1: Container, c2: Container) -> bool:
    """C(x, y1) <= C(x, y2) iff y1 is a multiple of y2 mod m, i.e. d2 | d1."""
    return c1.x == c2.x and c1.d % c2.d == 0


def members(p: Presentation, c: Container) -> list[MuMap]:
    """The m/d distinct maps of the container, ascending by y."""
    return [MuMap(c.x, t * c.d) for t in range(p.m // c.d)]
