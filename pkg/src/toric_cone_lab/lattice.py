"""Exact integer linear algebra on lattice vectors and integer matrices.

Vectors are plain tuples of Python ints. Matrices act on column vectors.
Nothing in here touches floating point.
"""
from __future__ import annotations

import math
import operator
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

LatticeVector = Tuple[int, ...]


def as_vector(v: Iterable) -> LatticeVector:
    """Coerce an iterable of integer-likes to a tuple of ints (floats are rejected)."""
    return tuple(operator.index(x) for x in v)


class IntegerMatrix:
    """Immutable dense integer matrix, row-major.

    >>> IntegerMatrix([[1, 2], [3, 4]]) @ (1, 1)
    (3, 7)
    """

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(as_vector(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self._rows = rows

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntegerMatrix":
        return cls(zip(*columns))

    @property
    def rows(self) -> Tuple[LatticeVector, ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> Tuple[int, ...]:
        return tuple(x for r in self._rows for x in r)

    @property
    def columns(self) -> Tuple[LatticeVector, ...]:
        return tuple(zip(*self._rows))

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix(zip(*self._rows))

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns
            return IntegerMatrix(
                [sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows
            )
        v = as_vector(other)
        if len(v) != self.ncols:
            raise ValueError(f"shape mismatch {self.shape} @ vector of length {len(v)}")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._rows)

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix([[-x for x in r] for r in self._rows])

    def __mul__(self, k: int) -> "IntegerMatrix":
        k = operator.index(k)
        return IntegerMatrix([[k * x for x in r] for r in self._rows])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, IntegerMatrix):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.tolist()!r})"

    def det(self) -> int:
        return determinant(self)


def _as_matrix(M) -> IntegerMatrix:
    return M if isinstance(M, IntegerMatrix) else IntegerMatrix(M)


# --------------------------------------------------------------------------
# vectors

def vector_gcd(v: Sequence[int]) -> int:
    return math.gcd(*v) if v else 0


def is_primitive(v: Sequence[int]) -> bool:
    return vector_gcd(v) == 1


def primitive_part(v: Sequence[int]) -> Tuple[LatticeVector, int]:
    """Split ``v`` as ``g * w`` with ``g > 0`` the content and ``w`` primitive.

    The direction is preserved: ``primitive_part((0, -3)) == ((0, -1), 3)``.
    """
    v = as_vector(v)
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(x // g for x in v), g


def clear_denominators(v: Sequence) -> Tuple[LatticeVector, int]:
    """Return ``(w, d)`` with ``w = d * v`` integral and ``d`` the lcm of denominators."""
    fr = [Fraction(x) for x in v]
    d = math.lcm(*(x.denominator for x in fr)) if fr else 1
    return tuple(int(x * d) for x in fr), d


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def generalized_cross(vectors: Sequence[Sequence[int]], n: int) -> LatticeVector:
    """Integer vector orthogonal to ``n - 1`` vectors in dimension ``n``.

    Component ``i`` is the signed maximal minor obtained by deleting column
    ``i``; the result is zero exactly when the vectors are dependent.
    """
    if len(vectors) != n - 1:
        raise ValueError("need exactly n - 1 vectors")
    out = []
    for i in range(n):
        minor = [[row[j] for j in range(n) if j != i] for row in vectors]
        d = _det_rows(minor) if minor else 1
        out.append(d if i % 2 == 0 else -d)
    return tuple(out)


# --------------------------------------------------------------------------
# determinants and rank

def _det_rows(rows: Sequence[Sequence[int]]) -> int:
    # Bareiss fraction-free elimination; exact on ints.
    A = [list(r) for r in rows]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def determinant(M) -> int:
    M = _as_matrix(M)
    if not M.is_square():
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    return _det_rows(M.rows)


def is_unimodular(M) -> bool:
    M = _as_matrix(M)
    if not M.is_square():
        raise ValueError(f"unimodularity of non-square {M.shape} matrix")
    return determinant(M) in (1, -1)


def rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    H, _ = hermite_normal_form(IntegerMatrix(vectors))
    return sum(1 for r in H.rows if any(r))


def adjugate(M) -> IntegerMatrix:
    M = _as_matrix(M)
    n = M.nrows
    if n == 1:
        return IntegerMatrix([[1]])
    rows = M.rows
    cof = [
        [
            (-1) ** (i + j)
            * _det_rows([[rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i])
            for j in range(n)
        ]
        for i in range(n)
    ]
    return IntegerMatrix(cof).T


def inverse_unimodular(M) -> IntegerMatrix:
    M = _as_matrix(M)
    d = determinant(M)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return adjugate(M) * d


# --------------------------------------------------------------------------
# normal forms

def _row_addmul(A, dst, src, q):
    # row[dst] -= q * row[src]
    rd, rs = A[dst], A[src]
    for k in range(len(rd)):
        rd[k] -= q * rs[k]


def _col_addmul(A, dst, src, q):
    for row in A:
        row[dst] -= q * row[src]


def _col_swap(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def hermite_normal_form(M) -> Tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. ``H`` is upper
    echelon with positive pivots, and entries above each pivot lie in
    ``[0, pivot)``. Pivots are chosen by smallest absolute value.
    """
    M = _as_matrix(M)
    m, n = M.shape
    A = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][j] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][j]))
            A[r], A[p] = A[p], A[r]
            U[r], U[p] = U[p], U[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][j]:
                    q = A[i][j] // A[r][j]
                    _row_addmul(A, i, r, q)
                    _row_addmul(U, i, r, q)
                    clean = clean and A[i][j] == 0
            if clean:
                break
        if A[r][j] == 0:
            continue
        if A[r][j] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = A[i][j] // A[r][j]
            if q:
                _row_addmul(A, i, r, q)
                _row_addmul(U, i, r, q)
        r += 1
    return IntegerMatrix(A), IntegerMatrix(U)


def smith_normal_form(M) -> Tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Smith normal form ``(D, U, V)`` with ``U @ M @ V == D``.

    ``D`` has the shape of ``M``; its diagonal is non-negative and each
    entry divides the next.
    """
    M = _as_matrix(M)
    m, n = M.shape
    A = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = A[i][j]
                    if x and (best is None or abs(x) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return IntegerMatrix(A), IntegerMatrix(U), IntegerMatrix(V)
            i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
                U[t], U[i] = U[i], U[t]
            if j != t:
                _col_swap(A, t, j)
                _col_swap(V, t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    _row_addmul(A, i, t, q)
                    _row_addmul(U, i, t, q)
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    _col_addmul(A, j, t, q)
                    _col_addmul(V, j, t, q)
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            _row_addmul(A, t, bad, -1)
            _row_addmul(U, t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return IntegerMatrix(A), IntegerMatrix(U), IntegerMatrix(V)


def smith_invariants(M) -> Tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form."""
    D, _, _ = smith_normal_form(M)
    return tuple(d for d in (D[i, i] for i in range(min(D.shape))) if d)


def is_primitive_summand(vectors: Sequence[Sequence[int]], k: int) -> bool:
    """Do ``vectors`` generate a direct summand of rank exactly ``k``?"""
    if not vectors:
        raise ValueError("empty vector list")
    vecs = [as_vector(v) for v in vectors]
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise ValueError("vectors have unequal dimensions")
    if not 1 <= k <= n:
        raise ValueError(f"rank {k} outside 1..{n}")
    inv = smith_invariants(IntegerMatrix(vecs))
    return len(inv) == k and all(d == 1 for d in inv)


# --------------------------------------------------------------------------
# solving

class UnimodularSolver:
    """Solve ``T @ s_i == t_i`` for many target lists against fixed sources.

    The adjugate of the source matrix is computed once, so repeated solves
    cost one integer matrix product each.
    """

    def __init__(self, sources: Sequence[Sequence[int]]):
        S = IntegerMatrix.from_columns([as_vector(s) for s in sources])
        if not S.is_square():
            raise ValueError("sources do not span")
        self.det = determinant(S)
        if self.det == 0:
            raise ValueError("sources do not span")
        self.dim = S.nrows
        self._adj = adjugate(S)

    def solve(self, targets: Sequence[Sequence[int]]) -> Optional[IntegerMatrix]:
        if len(targets) != self.dim:
            raise ValueError("source and target counts differ")
        P = IntegerMatrix.from_columns([as_vector(t) for t in targets]) @ self._adj
        d = self.det
        if any(x % d for x in P.entries):
            return None
        T = IntegerMatrix([[x // d for x in r] for r in P.rows])
        return T if determinant(T) in (1, -1) else None


def solve_unimodular_map(
    sources: Sequence[Sequence[int]], targets: Sequence[Sequence[int]]
) -> Optional[IntegerMatrix]:
    """The unimodular ``T`` with ``T @ sources[i] == targets[i]``, or ``None``.

    ``sources`` must be ``dim`` linearly independent vectors.
    """
    if len(sources) != len(targets):
        raise ValueError("source and target counts differ")
    return UnimodularSolver(sources).solve(targets)


def solve_rational(columns: Sequence[Sequence[int]], b: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """Exact solution ``x`` of ``sum x_j * columns[j] == b``, or ``None`` if inconsistent.

    Assumes the columns are linearly independent.
    """
    n = len(b)
    s = len(columns)
    A = [[Fraction(columns[j][i]) for j in range(s)] + [Fraction(b[i])] for i in range(n)]
    r = 0
    pivots = []
    for j in range(s):
        p = next((i for i in range(r, n) if A[i][j] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][j]
        A[r] = [x / piv for x in A[r]]
        for i in range(n):
            if i != r and A[i][j] != 0:
                f = A[i][j]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
    if any(A[i][s] != 0 for i in range(r, n)):
        return None
    x = [Fraction(0)] * s
    for i, j in enumerate(pivots):
        x[j] = A[i][s]
    return tuple(x)


def in_cone_of(vector: Sequence[int], generators: Sequence[Sequence[int]]) -> bool:
    """Is ``vector`` a non-negative combination of ``generators``?

    Exact Carathéodory search: a point of a finitely generated cone lies in
    the cone of some linearly independent subset of the generators.
    """
    v = as_vector(vector)
    if not any(v):
        return True
    gens = [as_vector(g) for g in generators]
    n = len(v)
    for size in range(1, min(len(gens), n) + 1):
        for subset in combinations(gens, size):
            if rank(list(subset)) < size:
                continue
            x = solve_rational(subset, v)
            if x is not None and all(c >= 0 for c in x):
                return True
    return False
