"""Rational convex polytopes, the Delzant test, and Hirzebruch trapezoids."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .lattice import (
    IntegerMatrix,
    LatticeVector,
    clear_denominators,
    determinant,
    dot,
    generalized_cross,
    primitive_part,
    rank,
)

Point = Tuple[Fraction, ...]


def _point(p) -> Point:
    out = []
    for x in p:
        if isinstance(x, float):
            raise TypeError("float coordinates are not allowed; use ints, Fractions or 'p/q' strings")
        out.append(Fraction(x))
    return tuple(out)


def _cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Facet:
    """Supporting half-space ``<normal, x> >= offset`` with a primitive inward normal."""

    normal: LatticeVector
    offset: Fraction
    vertices: frozenset


@dataclass(frozen=True)
class EdgeDescriptor:
    endpoints: Tuple[int, int]
    primitive_direction: LatticeVector
    lattice_length: Fraction


@dataclass(frozen=True)
class Polytope:
    """A convex polytope given by its vertices.

    In dimension 2 the vertices are stored in counterclockwise cyclic order
    and validated as such. In higher dimension the vertices may come in any
    order; facets are found by brute force over vertex subsets.
    """

    vertices: Tuple[Point, ...]
    dim: int = field(default=0)

    def __init__(self, vertices: Sequence[Sequence], dim: Optional[int] = None):
        verts = tuple(_point(v) for v in vertices)
        if not verts:
            raise ValueError("polytope needs vertices")
        d = len(verts[0]) if dim is None else dim
        if d < 1 or any(len(v) != d for v in verts):
            raise ValueError("vertex dimensions disagree")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "dim", d)
        self._validate()

    def _validate(self) -> None:
        verts, d = self.vertices, self.dim
        if len(verts) < d + 1:
            raise ValueError(f"need at least {d + 1} vertices in dimension {d}")
        if len(set(verts)) != len(verts):
            raise ValueError("vertices are not pairwise distinct")
        if d == 2:
            n = len(verts)
            for i in range(n):
                p, q = verts[i], verts[(i + 1) % n]
                e = (q[0] - p[0], q[1] - p[1])
                # every other vertex strictly left of each ccw edge
                if any(_cross2(e, (r[0] - p[0], r[1] - p[1])) <= 0
                       for k, r in enumerate(verts) if k not in (i, (i + 1) % n)):
                    raise ValueError(
                        "vertices must be extreme and in counterclockwise order"
                    )
        else:
            if rank([clear_denominators(tuple(v - w for v, w in zip(p, verts[0])))[0]
                     for p in verts[1:]]) != d:
                raise ValueError("polytope is not full-dimensional")
            facets = self.facets()
            for i in range(len(verts)):
                normals = [facets[k].normal for k in self.facets_through(i)]
                if not normals or rank(normals) != d:
                    raise ValueError(f"vertex {i} is not extreme")

    # ------------------------------------------------------------------
    def facets(self) -> Tuple[Facet, ...]:
        """Facets with primitive inward normals.

        In dimension 2 facet ``i`` is the edge from vertex ``i`` to vertex
        ``i + 1``.
        """
        cached = self.__dict__.get("_facets")
        if cached is not None:
            return cached
        verts = self.vertices
        if self.dim == 2:
            out = []
            n = len(verts)
            for i in range(n):
                p, q = verts[i], verts[(i + 1) % n]
                edge, _ = clear_denominators((q[0] - p[0], q[1] - p[1]))
                # inward normal of a ccw boundary edge is its left rotation
                u, _ = primitive_part((-edge[1], edge[0]))
                out.append(Facet(u, dot(u, p), frozenset((i, (i + 1) % n))))
            facets = tuple(out)
        else:
            facets = self._facets_brute_force()
        object.__setattr__(self, "_facets", facets)
        return facets

    def _facets_brute_force(self) -> Tuple[Facet, ...]:
        verts, d = self.vertices, self.dim
        found: Dict[LatticeVector, Facet] = {}
        for subset in combinations(range(len(verts)), d):
            base = verts[subset[0]]
            diffs = [clear_denominators(tuple(x - y for x, y in zip(verts[j], base)))[0]
                     for j in subset[1:]]
            normal = generalized_cross(diffs, d)
            if not any(normal):
                continue
            u, _ = primitive_part(normal)
            vals = [dot(u, v) for v in verts]
            lam = dot(u, base)
            if all(x >= lam for x in vals):
                pass
            elif all(x <= lam for x in vals):
                u = tuple(-x for x in u)
                lam = -lam
            else:
                continue
            on = frozenset(i for i, v in enumerate(verts) if dot(u, v) == lam)
            if u not in found:
                found[u] = Facet(u, lam, on)
        return tuple(sorted(found.values(), key=lambda f: f.normal, reverse=True))

    def facets_through(self, i: int) -> Tuple[int, ...]:
        return tuple(k for k, f in enumerate(self.facets()) if i in f.vertices)

    def neighbors(self, i: int) -> Tuple[int, ...]:
        """Vertices joined to vertex ``i`` by an edge."""
        n = len(self.vertices)
        if self.dim == 2:
            return ((i + 1) % n, (i - 1) % n)
        facets = self.facets()
        out = []
        for j in range(n):
            if j == i:
                continue
            common = [facets[k].normal for k in self.facets_through(i) if j in facets[k].vertices]
            if common and rank(common) == self.dim - 1:
                out.append(j)
        return tuple(out)

    def edges(self) -> List[EdgeDescriptor]:
        return edges(self)

    def transform(self, T, w: Sequence[int] = None) -> "Polytope":
        """Image under ``x -> T x + w``; dimension-2 orientation is restored."""
        T = T if isinstance(T, IntegerMatrix) else IntegerMatrix(T)
        w = tuple(w) if w is not None else (0,) * self.dim
        image = [tuple(sum(t * x for t, x in zip(row, v)) + s for row, s in zip(T.rows, w))
                 for v in self.vertices]
        if self.dim == 2 and determinant(T) < 0:
            image = image[::-1]
        return Polytope(image, self.dim)

    def __repr__(self) -> str:
        pts = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"Polytope([{pts}])"


def _edge(poly: Polytope, i: int, j: int) -> EdgeDescriptor:
    p, q = poly.vertices[i], poly.vertices[j]
    diff, den = clear_denominators(tuple(b - a for a, b in zip(p, q)))
    w, g = primitive_part(diff)
    return EdgeDescriptor((i, j), w, Fraction(g, den))


def edges(poly: Polytope) -> List[EdgeDescriptor]:
    """All edges, each with primitive direction and lattice length.

    In dimension 2 edges follow the counterclockwise boundary.
    """
    n = len(poly.vertices)
    if poly.dim == 2:
        return [_edge(poly, i, (i + 1) % n) for i in range(n)]
    return [_edge(poly, i, j) for i in range(n) for j in poly.neighbors(i) if i < j]


def lattice_length(e: EdgeDescriptor) -> Fraction:
    return e.lattice_length


def is_integral(poly: Polytope) -> bool:
    return all(x.denominator == 1 for v in poly.vertices for x in v)


@dataclass(frozen=True)
class VertexCheck:
    vertex: int
    directions: Tuple[LatticeVector, ...]
    determinant: Optional[int]
    ok: bool
    reason: str = ""


@dataclass(frozen=True)
class DelzantReport:
    delzant: bool
    vertices: Tuple[VertexCheck, ...]

    def __bool__(self) -> bool:
        return self.delzant

    @property
    def failures(self) -> Tuple[VertexCheck, ...]:
        return tuple(v for v in self.vertices if not v.ok)


def is_delzant(poly: Polytope) -> DelzantReport:
    """Check that the outgoing primitive edge directions at every vertex form a lattice basis."""
    checks = []
    for i in range(len(poly.vertices)):
        dirs = tuple(_edge(poly, i, j).primitive_direction for j in poly.neighbors(i))
        if len(dirs) != poly.dim:
            checks.append(VertexCheck(i, dirs, None, False, "non-simple"))
            continue
        d = determinant(IntegerMatrix.from_columns(dirs))
        ok = d in (1, -1)
        checks.append(VertexCheck(i, dirs, d, ok, "" if ok else "non-unimodular"))
    return DelzantReport(all(c.ok for c in checks), tuple(checks))


# --------------------------------------------------------------------------
# Hirzebruch trapezoids

@dataclass(frozen=True, order=True)
class HirzebruchParams:
    """Parameters of the trapezoid, stored as ``(b, c, m)`` with ``c = a - (m/2) b``.

    Keeping ``c`` instead of ``a`` keeps every field an integer when ``m b``
    is odd and ``a`` is a half-integer.
    """

    b: int
    c: int
    m: int

    def __post_init__(self):
        for name in ("b", "c", "m"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"{name} must be an int")
        if self.b <= 0:
            raise ValueError("b must be positive")
        if self.c <= 0:
            raise ValueError("a - (m/2) b must be positive")
        if self.m < 0:
            raise ValueError("m must be non-negative")

    @classmethod
    def from_abm(cls, a, b: int, m: int) -> "HirzebruchParams":
        """Build from ``(a, b, m)``; ``a - (m/2) b`` must be a positive integer."""
        a = Fraction(a)
        c = a - Fraction(m * b, 2)
        if c.denominator != 1:
            raise ValueError(f"a - (m/2) b = {c} is not an integer")
        return cls(int(b), int(c), int(m))

    @property
    def a(self) -> Fraction:
        return self.c + Fraction(self.m * self.b, 2)

    @property
    def abm(self) -> Tuple[Fraction, int, int]:
        return self.a, self.b, self.m

    @property
    def bottom_length(self) -> int:
        """``a + (m/2) b``, always an integer."""
        return self.c + self.m * self.b

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.m})"


def hirzebruch_trapezoid(p: HirzebruchParams) -> Polytope:
    """The trapezoid with vertices (0,0), (a+(m/2)b, 0), (a-(m/2)b, b), (0, b)."""
    return Polytope([(0, 0), (p.bottom_length, 0), (p.c, p.b), (0, p.b)])


def unit_simplex(dim: int = 2) -> Polytope:
    verts = [(0,) * dim] + [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    return Polytope(verts)


def unit_cube(dim: int = 2) -> Polytope:
    if dim == 2:
        return Polytope([(0, 0), (1, 0), (1, 1), (0, 1)])
    verts = [tuple((k >> j) & 1 for j in range(dim)) for k in range(2 ** dim)]
    return Polytope(verts)
