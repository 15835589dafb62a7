"""Rational polyhedral cones stored by inward facet normals.

A cone is ``{x : <x, mu_j> >= 0 for all j}``. Extreme rays and the face
lattice are derived by exhaustive subset enumeration, which is exact and
fast enough for cones with a handful of facets.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .lattice import (
    LatticeVector,
    as_vector,
    dot,
    generalized_cross,
    in_cone_of,
    is_primitive,
    is_primitive_summand,
    primitive_part,
    rank,
)
from .polytope import HirzebruchParams, Polytope, hirzebruch_trapezoid, is_delzant, is_integral


@dataclass(frozen=True)
class Face:
    """A face of a pointed cone.

    ``facets`` are the indices of all facets containing the face and
    ``rays`` the indices of the extreme rays it contains.
    """

    dim: int
    facets: FrozenSet[int]
    rays: FrozenSet[int]

    def codim(self, ambient: int) -> int:
        return ambient - self.dim


class PolyCone:
    """Cone cut out by inward normals ``mu_j``.

    By default normals are replaced by their primitive parts and redundant
    ones are dropped, so the stored list is a minimal description. Pass
    ``prune=False`` to keep the normals exactly as given, e.g. to build
    deliberately bad cones for :func:`is_good`.
    """

    def __init__(self, normals: Sequence[Sequence[int]], dim: Optional[int] = None, *, prune: bool = True):
        normals = [as_vector(u) for u in normals]
        if dim is None:
            if not normals:
                raise ValueError("dimension required for a cone with no normals")
            dim = len(normals[0])
        if any(len(u) != dim for u in normals):
            raise ValueError("normal dimensions disagree")
        if any(not any(u) for u in normals):
            raise ValueError("zero normal")
        if prune:
            prim = []
            for u in normals:
                w, _ = primitive_part(u)
                if w not in prim:
                    prim.append(w)
            normals = [u for i, u in enumerate(prim) if _irredundant(prim, i)]
        self.dim = dim
        self.normals: Tuple[LatticeVector, ...] = tuple(normals)
        self.pointed = rank(list(self.normals)) == dim if self.normals else False
        self._rays: Optional[Tuple[LatticeVector, ...]] = None
        self._faces: Optional[Tuple[Face, ...]] = None
        if self.pointed:
            self._rays = _extreme_rays(self.normals, dim)
            self.full_dimensional = bool(self._rays) and rank(list(self._rays)) == dim
        else:
            self.full_dimensional = None

    @property
    def rays(self) -> Tuple[LatticeVector, ...]:
        return extreme_rays(self)

    def contains(self, x: Sequence) -> bool:
        return all(dot(u, x) >= 0 for u in self.normals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyCone):
            return NotImplemented
        return self.dim == other.dim and set(self.normals) == set(other.normals)

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.normals)))

    def __repr__(self) -> str:
        return f"PolyCone(normals={[list(u) for u in self.normals]})"


def _irredundant(normals: Sequence[LatticeVector], i: int) -> bool:
    # Farkas: dropping mu_i leaves the cone unchanged iff mu_i lies in the
    # cone generated by the remaining normals.
    others = [u for j, u in enumerate(normals) if j != i]
    return not in_cone_of(normals[i], others)


def _extreme_rays(normals: Sequence[LatticeVector], dim: int) -> Tuple[LatticeVector, ...]:
    rays: List[LatticeVector] = []
    for subset in combinations(normals, dim - 1):
        k = generalized_cross(list(subset), dim)
        if not any(k):
            continue
        r, _ = primitive_part(k)
        for cand in (r, tuple(-x for x in r)):
            if all(dot(u, cand) >= 0 for u in normals):
                if cand not in rays:
                    rays.append(cand)
                break
    # a kernel direction is a ray only if the tight normals have rank dim - 1
    return tuple(
        sorted(r for r in rays if rank([u for u in normals if dot(u, r) == 0]) == dim - 1)
    )


def extreme_rays(C: PolyCone) -> Tuple[LatticeVector, ...]:
    """Primitive generators of the one-dimensional faces, sorted."""
    if not C.pointed:
        raise ValueError("cone is not pointed")
    return C._rays


def face_lattice(C: PolyCone) -> Tuple[Face, ...]:
    """Every face of a pointed cone, from the apex up to the whole cone.

    Faces are generated by intersecting subsets of facets; each face
    records the full set of facets it lies on and the rays it contains.
    """
    if C._faces is not None:
        return C._faces
    rays = extreme_rays(C)
    normals = C.normals
    seen = {}
    for size in range(len(normals) + 1):
        for J in combinations(range(len(normals)), size):
            R = frozenset(i for i, r in enumerate(rays) if all(dot(normals[j], r) == 0 for j in J))
            if R in seen:
                continue
            if R:
                F = frozenset(j for j, u in enumerate(normals) if all(dot(u, rays[i]) == 0 for i in R))
                d = rank([rays[i] for i in R])
            else:
                F = frozenset(range(len(normals)))
                d = 0
            seen[R] = Face(d, F, R)
    faces = tuple(sorted(seen.values(), key=lambda f: (f.dim, sorted(f.facets), sorted(f.rays))))
    C._faces = faces
    return faces


def face_normals(C: PolyCone, face: Face) -> List[LatticeVector]:
    return [C.normals[j] for j in sorted(face.facets)]


# --------------------------------------------------------------------------
# goodness and freeness

@dataclass(frozen=True)
class GoodnessReport:
    primitive_ok: bool
    minimal_ok: bool
    faces_ok: bool
    failing_face: Optional[FrozenSet[int]] = None
    detail: str = ""

    @property
    def verdict(self) -> bool:
        return self.primitive_ok and self.minimal_ok and self.faces_ok

    def __bool__(self) -> bool:
        return self.verdict


def is_good(C: PolyCone, *, include_apex: bool = False) -> GoodnessReport:
    """Test the three conditions of a good cone.

    1. every normal is primitive;
    2. the normal list is minimal (no normal can be dropped);
    3. each face of codimension ``k`` with ``0 < k < dim`` lies on exactly
       ``k`` facets whose normals generate a rank-``k`` direct summand.

    The apex (codimension ``dim``) is exempt from condition 3 unless
    ``include_apex`` is set. ``failing_face`` is the facet-index set of the
    first face, in face-lattice order, that violates condition 3.
    """
    normals = list(C.normals)
    if not C.pointed or not C.full_dimensional:
        raise ValueError("goodness is defined for pointed full-dimensional cones")
    bad_prim = [j for j, u in enumerate(normals) if not is_primitive(u)]
    redundant = [j for j in range(len(normals)) if not _irredundant(normals, j)]
    failing, detail = None, ""
    for face in face_lattice(C):
        k = C.dim - face.dim
        if k == 0 or (k == C.dim and not include_apex):
            continue
        if len(face.facets) != k:
            failing = face.facets
            detail = f"codimension {k} face lies on {len(face.facets)} facets"
            break
        if not is_primitive_summand(face_normals(C, face), k):
            failing = face.facets
            detail = f"normals of codimension {k} face do not span a direct summand"
            break
    if bad_prim:
        detail = detail or f"non-primitive normals at {bad_prim}"
    if redundant:
        detail = detail or f"redundant normals at {redundant}"
    return GoodnessReport(not bad_prim, not redundant, failing is None, failing, detail)


def circle_action_free(C: PolyCone, fiber: Optional[Sequence[int]] = None) -> bool:
    """Is the circle generated by ``fiber`` free on the symplectic cone over ``C``?

    For every face ``F`` other than the apex, the facet normals through
    ``F`` together with ``fiber`` must generate a direct summand of rank
    ``codim F + 1``. ``fiber`` defaults to the last basis vector.
    """
    if fiber is None:
        fiber = tuple(int(i == C.dim - 1) for i in range(C.dim))
    fiber = as_vector(fiber)
    if len(fiber) != C.dim:
        raise ValueError("fiber dimension does not match the cone")
    if not is_primitive(fiber):
        raise ValueError("fiber must be a primitive vector")
    for face in face_lattice(C):
        k = C.dim - face.dim
        if face.dim == 0:
            continue
        if k + 1 > C.dim or not is_primitive_summand(face_normals(C, face) + [fiber], k + 1):
            return False
    return True


# --------------------------------------------------------------------------
# standard cones

def standard_cone(poly: Polytope) -> PolyCone:
    """Cone over ``poly x {1}`` one dimension up.

    Each facet ``<u, x> >= lam`` of the polytope lifts to the normal
    ``(u, -lam)``. Only integral Delzant polytopes are accepted.
    """
    if not is_integral(poly):
        raise ValueError("standard cone requires an integral polytope")
    if not is_delzant(poly):
        raise ValueError("standard cone requires a Delzant polytope")
    normals = [tuple(f.normal) + (-int(f.offset),) for f in poly.facets()]
    C = PolyCone(normals, poly.dim + 1, prune=False)
    expected = sorted(primitive_part(tuple(int(x) for x in v) + (1,))[0] for v in poly.vertices)
    if list(C.rays) != expected:
        raise AssertionError("standard cone rays do not match the lifted vertices")
    return C


def hirzebruch_cone(p: HirzebruchParams) -> PolyCone:
    return standard_cone(hirzebruch_trapezoid(p))


def orthant(dim: int) -> PolyCone:
    return PolyCone([tuple(int(i == j) for j in range(dim)) for i in range(dim)])
