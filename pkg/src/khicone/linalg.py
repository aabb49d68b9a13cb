"""Exact matrix routines over the rationals, the integers and GF(p).

Matrices are plain lists of rows. Entries may be ``int`` or ``Fraction``;
nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

Matrix = list[list]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    return rows, (len(m[0]) if rows else 0)


def transpose(m: Sequence[Sequence], cols: Optional[int] = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    n_inner = len(b)
    b_cols = len(b[0]) if b else 0
    if a and len(a[0]) != n_inner:
        raise ValueError(f"shape mismatch: {shape(a)} @ {shape(b)}")
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * b[k][j] for k, x in nz), 0) for j in range(b_cols)])
    return out


def add(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError(f"shape mismatch: {shape(a)} + {shape(b)}")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c, m: Sequence[Sequence]) -> Matrix:
    return [[c * x for x in row] for row in m]


def is_zero(m: Sequence[Sequence]) -> bool:
    return all(not x for row in m for x in row)


def kron(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            if a[i][j]:
                for k in range(rb):
                    for l in range(cb):
                        out[i * rb + k][j * cb + l] = a[i][j] * b[k][l]
    return out


def submatrix(m: Sequence[Sequence], rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[m[r][c] for c in cols] for r in rows]


def _integer_rows(m: Sequence[Sequence]) -> Matrix:
    # Row scaling by a nonzero constant preserves rank.
    out = []
    for row in m:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(m: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    a = _integer_rows(m)
    rows, cols = shape(a)
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            aic = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, cols):
                row_i[j] = (p * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r


def rank_mod(m: Sequence[Sequence], p: int) -> int:
    """Rank over GF(p); entries must be integers (or integral fractions)."""
    a = [[int(x) % p for x in row] for row in m]
    rows, cols = shape(a)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        lead = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace(m: Sequence[Sequence], cols: Optional[int] = None) -> list[list[Fraction]]:
    """Basis of {x : m x = 0} as a list of column vectors."""
    n = shape(m)[1] if m else (cols or 0)
    if not m:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    r, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -r[row_idx][f]
        basis.append(v)
    return basis


def columns_to_matrix(vectors: Sequence[Sequence], length: int) -> Matrix:
    """Stack column vectors into a ``length x len(vectors)`` matrix."""
    return [[v[i] for v in vectors] for i in range(length)]


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    """Solve a X = b for X, assuming a has full column rank and a solution exists."""
    rows, n = shape(a)
    k = shape(b)[1] if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(rows)]
    r, pivots = rref(aug)
    if len(pivots) < n or any(p >= n for p in pivots):
        raise ValueError("system is singular or inconsistent")
    return [r[i][n:n + k] for i in range(n)]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    return solve(a, identity(n))


def echelon_prefix_ranks(vectors: Sequence[Sequence], modulus: Optional[int] = None) -> list[int]:
    """Cumulative ranks of ``vectors[:1], vectors[:2], ...``.

    With ``modulus`` set the arithmetic is over GF(modulus), otherwise over Q.
    """
    basis: dict[int, list] = {}
    out = []
    count = 0
    for v in vectors:
        if modulus is None:
            w = [Fraction(x) for x in v]
        else:
            w = [int(x) % modulus for x in v]
        for lead, b in basis.items():
            if w[lead]:
                f = w[lead]
                if modulus is None:
                    w = [x - f * y for x, y in zip(w, b)]
                else:
                    w = [(x - f * y) % modulus for x, y in zip(w, b)]
        lead = next((i for i, x in enumerate(w) if x), None)
        if lead is not None:
            if modulus is None:
                inv = 1 / w[lead]
                w = [x * inv for x in w]
            else:
                inv = pow(w[lead], -1, modulus)
                w = [(x * inv) % modulus for x in w]
            # keep the basis fully reduced so each lead is a unit column
            for other_lead, b in basis.items():
                if b[lead]:
                    f = b[lead]
                    if modulus is None:
                        basis[other_lead] = [x - f * y for x, y in zip(b, w)]
                    else:
                        basis[other_lead] = [(x - f * y) % modulus for x, y in zip(b, w)]
            basis[lead] = w
            count += 1
        out.append(count)
    return out


def echelon_leads(vectors: Sequence[Sequence], order: Sequence[int],
                  modulus: Optional[int] = None) -> list[int]:
    """Leading coordinates of an echelon basis of span(vectors).

    Coordinates are scanned in the sequence ``order``; the returned list
    holds, for each basis vector, the first coordinate in that order where it
    is nonzero. For any suffix S of ``order`` the number of leads in S equals
    dim(span(vectors) ∩ span(e_i : i in S)).
    """
    permuted = [[v[i] for i in order] for v in vectors]
    basis: dict[int, list] = {}
    for v in permuted:
        if modulus is None:
            w = [Fraction(x) for x in v]
        else:
            w = [int(x) % modulus for x in v]
        for lead in sorted(basis):
            if w[lead]:
                f = w[lead]
                b = basis[lead]
                if modulus is None:
                    w = [x - f * y for x, y in zip(w, b)]
                else:
                    w = [(x - f * y) % modulus for x, y in zip(w, b)]
        lead = next((i for i, x in enumerate(w) if x), None)
        if lead is None:
            continue
        if modulus is None:
            inv = 1 / w[lead]
            w = [x * inv for x in w]
        else:
            inv = pow(w[lead], -1, modulus)
            w = [(x * inv) % modulus for x in w]
        basis[lead] = w
    return [order[lead] for lead in sorted(basis)]


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant over Q (Gaussian elimination)."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        out *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * out


def smith_normal_form(m: Sequence[Sequence]) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form of an integer matrix.

    Returns ``(divisors, U, V)`` with ``U @ m @ V`` diagonal, diagonal entries
    ``divisors`` (length ``min(rows, cols)``, non-negative, each dividing the
    next, zeros last) and ``U``, ``V`` unimodular.
    """
    a = [[int(x) for x in row] for row in m]
    if any(Fraction(x) != int(x) for row in m for x in row):
        raise ValueError("smith_normal_form needs integer entries")
    rows, cols = shape(a)
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            p = a[t][t]
            bad = next((i for i in range(t + 1, rows)
                        if any(a[i][j] % p for j in range(t + 1, cols))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        if not any(a[i][j] for i in range(t, rows) for j in range(t, cols)):
            break

    divisors = [a[i][i] for i in range(min(rows, cols))]
    return divisors, u, v
