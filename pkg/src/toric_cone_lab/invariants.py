"""Torus counts, Hirzebruch chains and bundle invariants for the circle bundles P(a, b)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .polytope import HirzebruchParams


def tori_lower_bound(a: int, b: int) -> int:
    """Number of integers ``k`` with ``0 <= k < a/b``.

    This is a lower bound on the number of conjugacy classes of maximal tori;
    nothing here says whether it is attained.
    """
    if b < 1 or a < b:
        raise ValueError("need a >= b >= 1")
    return (a - 1) // b + 1


@dataclass(frozen=True)
class ToriChain:
    a: Fraction
    b: int
    k: int
    members: Tuple[HirzebruchParams, ...]

    @property
    def length_ell(self) -> int:
        return len(self.members)

    @property
    def ms(self) -> Tuple[int, ...]:
        return tuple(p.m for p in self.members)


def largest_k(a, b: int) -> int:
    """Largest integer ``k`` with ``a/b > k/2``."""
    # k < 2a/b  <=>  k <= ceil(2a/b) - 1
    q = Fraction(2) * Fraction(a) / b
    return math.ceil(q) - 1


def hirzebruch_chain(a: int, b: int, parity: Optional[str] = None) -> ToriChain:
    """Parameters ``(a, b, k), (a, b, k-2), ...`` down to ``m = 0`` or ``1``.

    With ``parity="even"`` the top ``k`` is rounded down to an even number so
    that every member is integral. Without it, a member whose trapezoid is
    not integral is an error.
    """
    if b < 1 or a <= b:
        raise ValueError("need a > b >= 1")
    if parity not in (None, "even"):
        raise ValueError(f"unknown parity {parity!r}")
    k = largest_k(a, b)
    if parity == "even":
        k -= k % 2
    members = []
    for m in range(k, -1, -2):
        c = Fraction(a) - Fraction(m * b, 2)
        if c.denominator != 1:
            raise ValueError(f"m = {m} gives non-integral trapezoid (a - (m/2) b = {c})")
        members.append(HirzebruchParams(b, int(c), m))
    chain = ToriChain(Fraction(a), b, k, tuple(members))
    assert chain.length_ell == k // 2 + 1
    return chain


def karshon_related(p1: HirzebruchParams, p2: HirzebruchParams) -> bool:
    """Same ``a`` and ``b`` and ``m`` of equal parity.

    This is the transitive closure of the move ``m -> m + 2``, which leaves
    the symplectic manifold unchanged up to symplectomorphism.
    """
    return p1.a == p2.a and p1.b == p2.b and (p1.m - p2.m) % 2 == 0


@dataclass(frozen=True)
class BundleInvariant:
    """First Chern classes of the two line bundles splitting the contact distribution.

    Classes are multiples of the generator of H^2(P; Z) = Z, with the sign
    fixed so that ``c1_L1 > 0``.
    """

    a: int
    b: int
    c1_L1: int
    c1_L2: int
    iso_class: int


def bundle_invariant(a: int, b: int) -> BundleInvariant:
    if not a > b >= 1:
        raise ValueError("need a > b >= 1")
    if math.gcd(a, b) != 1:
        raise ValueError(f"a and b must be coprime (gcd = {math.gcd(a, b)})")
    inv = BundleInvariant(a, b, 2 * a, -2 * b, a - b)
    assert inv.c1_L1 + inv.c1_L2 == 2 * inv.iso_class
    return inv
