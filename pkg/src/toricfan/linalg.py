"""Exact integer and rational linear algebra.

Vectors are tuples of ``int`` or :class:`fractions.Fraction`; matrices are
lists of row lists.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

IntMat = list[list[int]]
RatMat = list[list[Fraction]]


def _check_matrix(A: Sequence[Sequence]) -> tuple[int, int]:
    if not A or not A[0]:
        raise ValueError("matrix must have at least one row and one column")
    ncols = len(A[0])
    if any(len(row) != ncols for row in A):
        raise ValueError("ragged matrix")
    return len(A), ncols


def identity(n: int) -> IntMat:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(int(x) // g for x in v)


def integral_direction(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Primitive integer vector on the ray through a nonzero rational vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


# -- Hermite and Smith normal forms -----------------------------------------

def _combine_rows(M: list[list[int]], i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
    ri, rj = M[i], M[j]
    M[i] = [a * x + b * y for x, y in zip(ri, rj)]
    M[j] = [c * x + d * y for x, y in zip(ri, rj)]


def hnf(A: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ A``, ``U`` unimodular, ``H`` in row
    echelon form with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``.  Zero rows of ``H`` come last.
    """
    m, n = _check_matrix(A)
    H = [[int(x) for x in row] for row in A]
    U = identity(m)
    r = 0
    for col in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][col]
            if b == 0:
                continue
            a = H[r][col]
            g, s, t = xgcd(a, b)
            _combine_rows(H, r, i, s, t, -b // g, a // g)
            _combine_rows(U, r, i, s, t, -b // g, a // g)
        p = H[r][col]
        if p == 0:
            continue
        if p < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            p = -p
        for i in range(r):
            q = H[i][col] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def snf(A: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat, IntMat]:
    """Smith normal form ``S == U @ A @ V`` with ``d1 | d2 | ...`` and ``di >= 0``."""
    m, n = _check_matrix(A)
    D = [[int(x) for x in row] for row in A]
    U = identity(m)
    Vt = identity(n)  # rows of Vt are columns of V

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        Vt[i], Vt[j] = Vt[j], Vt[i]

    def add_row(dst, src, q):
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        Vt[dst] = [x + q * y for x, y in zip(Vt[dst], Vt[src])]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return D, U, transpose(Vt)


def invariant_factors(A: Sequence[Sequence[int]]) -> list[int]:
    S, _, _ = snf(A)
    return [S[i][i] for i in range(min(len(S), len(S[0])))]


def det(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m, n = _check_matrix(A)
    if m != n:
        raise ValueError(f"determinant of non-square {m}x{n} matrix")
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def kernel_basis_Z(A: Sequence[Sequence[int]]) -> IntMat:
    """Z-basis of ``{v in Z^c : A v = 0}``, returned in Hermite normal form.

    The HNF of a lattice basis is unique, so the result does not depend on
    the elimination path.
    """
    _, c = _check_matrix(A)
    H, U = hnf(transpose(A))
    rows = [U[i] for i in range(c) if not any(H[i])]
    if not rows:
        return []
    return [row for row in hnf(rows)[0] if any(row)]


def lattice_contains(B: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Is ``v`` an integer combination of the rows of ``B``?"""
    v = [int(x) for x in v]
    if not B:
        return not any(v)
    H, _ = hnf(B)
    for row in H:
        col = next((j for j, x in enumerate(row) if x), None)
        if col is None:
            break
        q, rem = divmod(v[col], row[col])
        if rem:
            return False
        v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def same_lattice(B1: Sequence[Sequence[int]], B2: Sequence[Sequence[int]]) -> bool:
    return (all(lattice_contains(B1, row) for row in B2)
            and all(lattice_contains(B2, row) for row in B1))


# -- rational elimination ---------------------------------------------------

def rref(A: Sequence[Sequence]) -> tuple[RatMat, list[int]]:
    """Reduced row echelon form over Q; returns ``(R, pivot_columns)``."""
    R = [[Fraction(x) for x in row] for row in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, m) if R[i][col]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        pv = R[r][col]
        if pv != 1:
            R[r] = [x / pv for x in R[r]]
        for i in range(m):
            if i != r and R[i][col]:
                f = R[i][col]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace_Q(A: Sequence[Sequence], ncols: Optional[int] = None) -> RatMat:
    """Basis of the rational null space, one vector per free column."""
    if not A:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(A)
    n = len(R[0])
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Some exact solution of ``A x = b`` (free variables set to zero), or None."""
    m, n = _check_matrix(A)
    if len(b) != m:
        raise ValueError("right-hand side length does not match the row count")
    R, pivots = rref([list(row) + [b_i] for row, b_i in zip(A, b)])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return tuple(x)


def inverse(A: Sequence[Sequence]) -> RatMat:
    m, n = _check_matrix(A)
    if m != n:
        raise ValueError("inverse of a non-square matrix")
    R, pivots = rref([list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)])
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in R]


def rational_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
