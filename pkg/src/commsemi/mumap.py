"""Mu-maps: the self-maps of G underlying both commutation semigroups.

mu(x, y) sends a^i b^j to a^N with N = x*i*k^j - y*k_j (mod m).  The pair
(x, y), reduced mod m, is a faithful name for the map (probing at a and b
separates any two pairs), so maps are stored as canonical pairs and never
as function tables; tables live in the oracle module only.

Maps act on the right and compose left-to-right: (g)(f . h) = ((g)f)h.
In that order composition is again a mu-map:

    mu(x1, y1) . mu(x2, y2) = mu(x1*x2, y1*x2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .group import GroupElement, Presentation


@dataclass(frozen=True, order=True)
class MuMap:
    """Canonical pair (x, y) in Z_m x Z_m naming the map mu(x, y)."""

    x: int
    y: int

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


def apply(p: Presentation, mu: MuMap, g: GroupElement) -> GroupElement:
    n_exp = (mu.x * g.i * p.k_pow[g.j] - mu.y * p.k_sub[g.j]) % p.m
    return GroupElement(n_exp, 0)


def compose(p: Presentation, first: MuMap, second: MuMap) -> MuMap:
    """The map 'first then second'; note the second map's y is discarded."""
    return MuMap(first.x * second.x % p.m, first.y * second.x % p.m)


def rho_of(p: Presentation, g: GroupElement) -> MuMap:
    """Right commutation map x -> [x, g] as a mu-map: rho(a^r b^s) = mu(k_s, r*k^s)."""
    return MuMap(p.k_sub[g.j], g.i * p.k_pow[g.j] % p.m)


def lambda_of(p: Presentation, g: GroupElement) -> MuMap:
    """Left commutation map x -> [g, x]: lambda(a^r b^s) = mu(-k_s, -r*k^s)."""
    return MuMap((-p.k_sub[g.j]) % p.m, (-g.i * p.k_pow[g.j]) % p.m)
