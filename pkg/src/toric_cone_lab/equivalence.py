"""Lattice equivalence of pointed cones.

Two cones are equivalent when some ``T`` in GL(n, Z), possibly composed with
``-1``, maps one onto the other. Since ``-1`` is itself in GL(n, Z) the sign
never changes *whether* an equivalence exists, only how the witness is
written; the search still honours ``allow_sign`` so both conventions can be
reported.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional

from .cone import PolyCone, extreme_rays, hirzebruch_cone
from .lattice import (
    IntegerMatrix,
    UnimodularSolver,
    inverse_unimodular,
    is_primitive,
    is_unimodular,
    primitive_part,
    rank,
)
from .polytope import HirzebruchParams


def _transform_normals(T: IntegerMatrix, normals):
    # normals transform by the inverse transpose
    Tit = inverse_unimodular(T).T
    return [primitive_part(Tit @ u)[0] for u in normals]


def apply_unimodular(T, C: PolyCone) -> PolyCone:
    """The image cone ``T(C)``."""
    T = T if isinstance(T, IntegerMatrix) else IntegerMatrix(T)
    if T.shape != (C.dim, C.dim):
        raise ValueError(f"matrix shape {T.shape} does not match cone dimension {C.dim}")
    if not is_unimodular(T):
        raise ValueError("matrix is not unimodular")
    image = PolyCone(_transform_normals(T, C.normals), C.dim, prune=False)
    if C.pointed:
        mapped = [T @ r for r in C.rays]
        assert all(is_primitive(r) for r in mapped)
        assert sorted(mapped) == list(image.rays)
    return image


@dataclass(frozen=True)
class EquivalenceWitness:
    """``sign * T`` carries the source cone onto the target cone."""

    T: IntegerMatrix
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not is_unimodular(self.T):
            raise ValueError("witness matrix is not unimodular")

    @property
    def matrix(self) -> IntegerMatrix:
        return self.T if self.sign == 1 else -self.T

    def maps(self, C1: PolyCone, C2: PolyCone) -> bool:
        """Check the witness: rays onto rays and normals onto normals, as sets."""
        if C1.dim != C2.dim or self.T.shape != (C1.dim, C1.dim):
            return False
        M = self.matrix
        if sorted(M @ r for r in C1.rays) != sorted(C2.rays):
            return False
        return set(_transform_normals(M, C1.normals)) == set(C2.normals)

    def inverse(self) -> "EquivalenceWitness":
        return EquivalenceWitness(inverse_unimodular(self.T), self.sign)

    def then(self, other: "EquivalenceWitness") -> "EquivalenceWitness":
        """Witness for applying ``self`` first and ``other`` second."""
        return EquivalenceWitness(other.T @ self.T, self.sign * other.sign)


def find_equivalence(C1: PolyCone, C2: PolyCone, allow_sign: bool = True) -> Optional[EquivalenceWitness]:
    """Search for ``T`` in GL(n, Z) (and ``-T`` if ``allow_sign``) with ``T(C1) = C2``.

    A fixed spanning set of ``dim`` rays of ``C1`` is sent, in lexicographic
    order, to every ordered selection of ``dim`` rays of ``C2``. Each
    candidate is accepted only after checking the full ray and normal sets.
    The first witness in that order is returned, so results are
    reproducible.
    """
    if C1.dim != C2.dim:
        return None
    rays1, rays2 = extreme_rays(C1), extreme_rays(C2)
    if len(rays1) != len(rays2) or len(C1.normals) != len(C2.normals):
        return None
    n = C1.dim
    anchor = next((s for s in combinations(range(len(rays1)), n)
                   if rank([rays1[i] for i in s]) == n), None)
    if anchor is None:
        raise ValueError("ray set does not span")
    solver = UnimodularSolver([rays1[i] for i in anchor])
    target_rays = set(rays2)
    target_normals = set(C2.normals)
    for sign in ((1, -1) if allow_sign else (1,)):
        for sel in permutations(range(len(rays2)), n):
            # solve for T with sign * T mapping the anchor onto the selection
            T = solver.solve([tuple(sign * x for x in rays2[i]) for i in sel])
            if T is None:
                continue
            M = T if sign == 1 else -T
            if {M @ r for r in rays1} != target_rays:
                continue
            if set(_transform_normals(M, C1.normals)) != target_normals:
                continue
            return EquivalenceWitness(T, sign)
    return None


def classify_hirzebruch(p1: HirzebruchParams, p2: HirzebruchParams) -> bool:
    """Closed-form answer: equal parameters, or ``m = m' = 0`` with ``a, b`` swapped."""
    if p1.abm == p2.abm:
        return True
    return p1.m == p2.m == 0 and p1.a == p2.b and p1.b == p2.a


def hirzebruch_grid(bmax: int, cmax: int, mmax: int):
    return [HirzebruchParams(b, c, m)
            for b in range(1, bmax + 1) for c in range(1, cmax + 1) for m in range(mmax + 1)]


def _sweep_row(args):
    i, grid, cones, allow_sign = args
    out = []
    for j, p2 in enumerate(grid):
        found = find_equivalence(cones[i], cones[j], allow_sign) is not None
        out.append((i, j, found, classify_hirzebruch(grid[i], p2)))
    return out


def agreement_sweep(bmax: int, cmax: int, mmax: int, allow_sign: bool = True, threads: int = 1):
    """Compare the search with the closed form over all ordered pairs of a parameter grid.

    Returns ``(grid, rows)`` where ``rows`` lists ``(i, j, searched, closed_form)``
    in row-major order regardless of ``threads``.
    """
    grid = hirzebruch_grid(bmax, cmax, mmax)
    cones = [hirzebruch_cone(p) for p in grid]
    jobs = [(i, grid, cones, allow_sign) for i in range(len(grid))]
    if threads > 1 and len(grid) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_sweep_row, jobs))
    else:
        chunks = [_sweep_row(job) for job in jobs]
    return grid, [row for chunk in chunks for row in chunk]
