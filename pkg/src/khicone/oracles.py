"""Brute-force reference computations.

Deliberately naive and self-contained: nothing here calls into the
elimination code of :mod:`khicone.linalg`, so these can be used to check it.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def naive_rank(m) -> int:
    """Rank by textbook Gaussian elimination over Fractions."""
    rows = [[Fraction(x) for x in row] for row in m]
    if not rows or not rows[0]:
        return 0
    n_cols = len(rows[0])
    rank = 0
    for c in range(n_cols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][c] != 0:
                factor = rows[i][c] / rows[rank][c]
                for j in range(c, n_cols):
                    rows[i][j] -= factor * rows[rank][j]
        rank += 1
    return rank


def naive_rank_mod2(m) -> int:
    rows = [[int(x) % 2 for x in row] for row in m]
    if not rows or not rows[0]:
        return 0
    rank = 0
    for c in range(len(rows[0])):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def explicit_cone_homology(matrix, dim_domain: int, dim_codomain: int) -> dict[int, int]:
    """Homology of the two-step cone complex, degree by degree.

    The cone of ``f: X -> Y`` is ``X`` in degree 1 and ``Y`` in degree 0 with
    total differential ``D = [[0, 0], [f, 0]]`` on ``X ⊕ Y``. Homology in each
    degree is computed as dim ker(D out of the degree) - rank(D into it).
    """
    n = dim_domain + dim_codomain
    d = [[Fraction(0)] * n for _ in range(n)]
    for r in range(dim_codomain):
        for c in range(dim_domain):
            d[dim_domain + r][c] = Fraction(matrix[r][c])
    # D squares to zero
    nz = [[k for k in range(n) if d[i][k]] for i in range(n)]
    for i in range(n):
        for j in range(n):
            assert sum(d[i][k] * d[k][j] for k in nz[i]) == 0
    deg1 = list(range(dim_domain))
    deg0 = list(range(dim_domain, n))
    out_of_1 = [[d[i][j] for j in deg1] for i in range(n)]
    out_of_0 = [[d[i][j] for j in deg0] for i in range(n)]
    into_0 = [[d[i][j] for j in deg1] for i in deg0]
    h1 = (len(deg1) - naive_rank(out_of_1)) - 0
    h0 = (len(deg0) - naive_rank(out_of_0)) - naive_rank(into_0)
    return {1: h1, 0: h0}


def triangle_exists(da: int, db: int, dc: int) -> bool:
    """Search ranks r1 (A->B), r2 (B->C), r3 (C->A) of an exact triangle."""
    bound = max(da, db, dc)
    for r1, r2, r3 in product(range(bound + 1), repeat=3):
        if da == r3 + r1 and db == r1 + r2 and dc == r2 + r3:
            return True
    return False


def same_column_space(a, b, length: int) -> bool:
    """Whether the columns of ``a`` and of ``b`` span the same subspace of Q^length."""
    def cols(m):
        if not m or not m[0]:
            return []
        return [list(c) for c in zip(*m)]
    ca, cb = cols(a), cols(b)
    ra = naive_rank(ca) if ca else 0
    rb = naive_rank(cb) if cb else 0
    both = ca + cb
    rab = naive_rank(both) if both else 0
    return ra == rb == rab


def kernel_basis_columns(m, n_cols: int):
    """Columns spanning ker m, via brute elimination on the augmented system."""
    rows = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    vectors = []
    for free in (c for c in range(n_cols) if c not in pivots):
        v = [Fraction(0)] * n_cols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        vectors.append(v)
    return [[v[i] for v in vectors] for i in range(n_cols)]


def zigzag_matrix(exponents) -> list[list[int]]:
    """Matrix of d1+ + d1- built straight from the exponent list.

    Written independently of the staircase builder: position i of the
    grading list is a source when i is even, and length-one gaps carry a
    unit entry from the source to its neighbouring sink.
    """
    grads = sorted(set(exponents) | {-n for n in exponents}, reverse=True)
    n = len(grads)
    m = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        if grads[i] - grads[i + 1] == 1:
            src, dst = (i, i + 1) if i % 2 == 0 else (i + 1, i)
            m[dst][src] = 1
    return m


def path_matching_rank(exponents) -> int:
    """Rank of the zig-zag matrix as a maximum matching in a union of paths.

    The retained arrows form disjoint paths in the bipartite source/sink
    graph; a path with e edges has a matching of size ceil(e/2).
    """
    grads = sorted(set(exponents) | {-n for n in exponents}, reverse=True)
    unit = [grads[i] - grads[i + 1] == 1 for i in range(len(grads) - 1)]
    total = 0
    run = 0
    for u in unit + [False]:
        if u:
            run += 1
        else:
            total += (run + 1) // 2
            run = 0
    return total


def has_unit_step(exponents) -> bool:
    return any(b - a == 1 for a, b in zip(exponents, exponents[1:]))
