"""Slow, independent reference computations used only by the tests.

None of these call into the library's elimination code.
"""
import itertools
import math
import random


def naive_det(M):
    M = [list(r) for r in M]
    if len(M) == 1:
        return M[0][0]
    return sum(
        (-1) ** j * M[0][j] * naive_det([row[:j] + row[j + 1:] for row in M[1:]])
        for j in range(len(M))
    )


def matmul(A, B):
    A, B = [list(r) for r in A], [list(r) for r in B]
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def determinantal_divisors(M):
    """``D_k`` = gcd of all k x k minors; Smith entries are ``D_k / D_{k-1}``."""
    M = [list(r) for r in M]
    m, n = len(M), len(M[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, naive_det([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


def smith_diagonal_oracle(M):
    D = determinantal_divisors(M)
    return [D[0]] + [D[i] // D[i - 1] for i in range(1, len(D))] if D else []


def naive_rank(vectors):
    if not vectors:
        return 0
    m, n = len(vectors), len(vectors[0])
    for k in range(min(m, n), 0, -1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                if naive_det([[vectors[i][j] for j in cols] for i in rows]):
                    return k
    return 0


def box(n, bound):
    return itertools.product(range(-bound, bound + 1), repeat=n)


def rays_by_enumeration(normals, bound):
    """Primitive extreme rays with entries in ``[-bound, bound]``."""
    n = len(normals[0])
    out = []
    for x in box(n, bound):
        if not any(x) or math.gcd(*x) != 1:
            continue
        vals = [sum(a * b for a, b in zip(u, x)) for u in normals]
        if min(vals) < 0:
            continue
        tight = [u for u, v in zip(normals, vals) if v == 0]
        if naive_rank(tight) == n - 1:
            out.append(tuple(x))
    return sorted(out)


def redundant_by_enumeration(normals, i, bound):
    """Is normal ``i`` implied by the others on the box? (sound only for small examples)"""
    n = len(normals[0])
    for x in box(n, bound):
        if all(sum(a * b for a, b in zip(u, x)) >= 0 for j, u in enumerate(normals) if j != i):
            if sum(a * b for a, b in zip(normals[i], x)) < 0:
                return False
    return True


def brute_force_equivalences(rays1, rays2, entries=(-1, 0, 1)):
    """All matrices with small entries mapping the ray set ``rays1`` onto ``rays2``."""
    n = len(rays1[0])
    target = set(map(tuple, rays2))
    found = []
    for flat in itertools.product(entries, repeat=n * n):
        T = [flat[i * n:(i + 1) * n] for i in range(n)]
        if naive_det(T) not in (1, -1):
            continue
        image = {tuple(sum(T[i][k] * r[k] for k in range(n)) for i in range(n)) for r in rays1}
        if image == target:
            found.append(T)
    return found


def random_unimodular(n, rng: random.Random, steps=10, bound=20):
    """Product of at most ``steps`` elementary matrices with entries bounded by ``bound``."""
    while True:
        T = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(rng.randint(1, steps)):
            kind = rng.choice(("add", "swap", "neg"))
            i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
            if kind == "add" and n > 1:
                q = rng.choice((-2, -1, 1, 2))
                T = [r[:] for r in T]
                T[i] = [a + q * b for a, b in zip(T[i], T[j])]
            elif kind == "swap" and n > 1:
                T[i], T[j] = T[j], T[i]
            else:
                T[i] = [-a for a in T[i]]
        if max(abs(x) for r in T for x in r) <= bound:
            return T
