"""Exact integer linear algebra: echelon forms, Smith form, lattices in Z^n.

Everything works on plain Python ints (lists of lists), so entries never
overflow.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

Vector = list[int]
Matrix = list[list[int]]


def hnf_rows(vectors: Iterable[Sequence[int]], n: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by `vectors`.

    Rows are in echelon form with positive pivots, and every entry above a
    pivot is reduced into [0, pivot). Zero rows are dropped.
    """
    rows = [list(v) for v in vectors if any(v)]
    for v in rows:
        if len(v) != n:
            raise ValueError(f"vector of length {len(v)} in ambient rank {n}")
    basis: Matrix = []
    col = 0
    while rows and col < n:
        active = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not active:
            col += 1
            continue
        # Euclid down the column until a single row has a nonzero entry
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[col] != 0:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = rest
        col += 1
    return _reduce_above(basis)


def _reduce_above(basis: Matrix) -> Matrix:
    pivots = [pivot_col(r) for r in basis]
    for i in range(len(basis)):
        c = pivots[i]
        p = basis[i][c]
        for k in range(i):
            q = basis[k][c] // p
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return basis


def pivot_col(row: Sequence[int]) -> int:
    for j, a in enumerate(row):
        if a:
            return j
    raise ValueError("zero row has no pivot")


def solve_echelon(basis: Matrix, v: Sequence[int]) -> list[int] | None:
    """Integer coefficients c with c·basis = v, or None if v is not in the span."""
    v = list(v)
    coeffs = []
    for row in basis:
        c = pivot_col(row)
        if any(v[:c]):
            return None
        q, r = divmod(v[c], row[c])
        if r:
            return None
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs


class Lattice:
    """A subgroup of Z^n, stored by its Hermite basis (any rank)."""

    __slots__ = ("n", "basis")

    def __init__(self, n: int, generators: Iterable[Sequence[int]] = ()):
        self.n = n
        self.basis = hnf_rows(generators, n)

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, identity(n))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> int | None:
        """[Z^n : self], or None when the rank is deficient."""
        if self.rank < self.n:
            return None
        return prod(row[i] for i, row in enumerate(self.basis))

    def __contains__(self, v: Sequence[int]) -> bool:
        return solve_echelon(self.basis, v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(r in self for r in other.basis)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lattice) and self.n == other.n and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.n, tuple(map(tuple, self.basis))))

    def __repr__(self) -> str:
        return f"Lattice({self.n}, {self.basis})"

    def is_zero(self) -> bool:
        return not self.basis

    def scaled(self, k: int) -> "Lattice":
        return Lattice(self.n, [[k * a for a in r] for r in self.basis])


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence[int], m: Matrix) -> Vector:
    n = len(m[0]) if m else 0
    out = [0] * n
    for a, row in zip(v, m):
        if a:
            for j in range(n):
                out[j] += a * row[j]
    return out


def smith(a: Matrix) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form: returns (d, U, V) with U·a·V diagonal with entries d.

    U and V are unimodular; d lists the diagonal (length min(rows, cols)),
    each entry dividing the next, trailing zeros for rank deficiency.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(r) for r in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in A:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, q)
                    if A[i][t]:
                        done = False
                        if abs(A[i][t]) < abs(A[t][t]):
                            swap_rows(t, i)
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, q)
                    if A[t][j]:
                        done = False
                        if abs(A[t][j]) < abs(A[t][t]):
                            swap_cols(t, j)
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    d = [A[i][i] for i in range(min(m, n))]
    return d, U, V


def elementary_divisors(rows: Matrix) -> list[int]:
    if not rows:
        return []
    return [x for x in smith(rows)[0] if x]


def saturation(lat: Lattice) -> tuple[Lattice, int]:
    """Pure closure {x : kx ∈ lat for some k ≥ 1} and the finite index [sat : lat]."""
    if lat.is_zero():
        return Lattice(lat.n), 1
    d, _, V = smith(lat.basis)
    r = lat.rank
    # rows of V^{-1} give an adapted basis of Z^n; the first r span the saturation
    Vinv = inverse_unimodular(V)
    return Lattice(lat.n, Vinv[:r]), prod(d[:r])


def adapted_basis(lat: Lattice) -> Matrix:
    """Unimodular matrix whose last rank(lat) rows span the saturation of lat."""
    n, r = lat.n, lat.rank
    if r == 0:
        return identity(n)
    _, _, V = smith(lat.basis)
    Vinv = inverse_unimodular(V)
    return Vinv[r:] + Vinv[:r]


def det(a: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    M = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_rational(a: Matrix) -> list[list[Fraction]]:
    n = len(a)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def inverse_unimodular(a: Matrix) -> Matrix:
    inv = inverse_rational(a)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def rank_rational(rows: Sequence[Sequence[int]]) -> int:
    return len(hnf_rows(rows, len(rows[0]))) if rows else 0


def primitive(v: Sequence[int]) -> Vector:
    g = 0
    for a in v:
        g = gcd(g, a)
    return [a // g for a in v] if g > 1 else list(v)


def subgroup_order_mod(gens: Matrix, moduli: Sequence[int]) -> int:
    """Order of the subgroup of ⊕ Z/moduli[i] generated by the given vectors."""
    n = len(moduli)
    rows = [list(g) for g in gens] + [[m if i == j else 0 for j in range(n)]
                                       for i, m in enumerate(moduli)]
    lat = Lattice(n, rows)
    return prod(moduli) // lat.index
