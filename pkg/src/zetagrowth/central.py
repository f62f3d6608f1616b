"""Fast exact counts for Lie rings of nilpotency class 2.

Write L = L̄ ⊕ Z with Z the saturated commutator (central) and bracket
β: L̄ × L̄ → Z. A finite-index Λ ≤ L is the same thing as a triple
(B̄, C, gluing), where B̄ = (Λ+Z)/Z, C = Λ∩Z and the gluing is a
homomorphism B̄ → Z/C. Thus

    a_n = Σ_{n1·n2 = n} n2^r · inner(n1, n2),

where inner counts pairs (B̄, C) of indices (n1, n2) with β(B̄, B̄) ⊆ C for
subrings, or β(B̄, L̄) ⊆ C for ideals. The generic Hermite enumerator in
`sublattices` remains the reference; this module is cross-checked against it.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import prod

import numpy as np

from .algebra import StructureConstantAlgebra, central_adapted
from .intlinalg import smith, subgroup_order_mod
from .numtheory import divisors, factor, gaussian_binomial, lattice_count, ordered_factorizations
from .sublattices import ClosureKind


def hnf_rows_iter(h: int, n: int):
    """Raw Hermite bases (tuples of row tuples) of index n in Z^h; no validation."""
    for diag in ordered_factorizations(n, h):
        slots = [(i, j) for i in range(h) for j in range(i + 1, h)]
        for values in product(*(range(diag[j]) for _, j in slots)):
            m = [[0] * h for _ in range(h)]
            for i in range(h):
                m[i][i] = diag[i]
            for (i, j), v in zip(slots, values):
                m[i][j] = v
            yield tuple(map(tuple, m))


def _rank_mod_p(mat: list[list[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in mat]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def projective_points(e: int, p: int):
    """Representatives of the lines of F_p^e (first nonzero coordinate equal to 1)."""
    for lead in range(e):
        for tail in product(range(p), repeat=e - lead - 1):
            yield (0,) * lead + (1,) + tail


def isotropic_count(rho: int, r0: int, d: int, p: int) -> int:
    """Number of d-dimensional totally isotropic subspaces of an alternating form on
    F_p^(2ρ + r0) whose radical has dimension r0."""
    total = 0
    for j in range(0, min(rho, d) + 1):
        if d - j > r0:
            continue
        sym = gaussian_binomial(rho, j, p)
        for i in range(j):
            sym *= p ** (rho - i) + 1
        total += sym * gaussian_binomial(r0, d - j, p) * p ** (j * (r0 - d + j))
    return total


@lru_cache(maxsize=None)
def reduction_profile(r: int, n: int, p: int) -> tuple[int, ...]:
    """For each d, the number of index-n sublattices of Z^r whose image mod p is
    one fixed d-dimensional subspace W.

    Lattices with image inside W are the sublattices of the preimage of W, which
    is again free of rank r and has index p^(r−d); GL_r(Z) permutes the
    subspaces of each dimension transitively, so the exact-image counts follow
    by inverting a unitriangular system.
    """
    out: list[int] = []
    for d in range(r + 1):
        q = p ** (r - d)
        s = lattice_count(r, n // q) if n % q == 0 else 0
        s -= sum(gaussian_binomial(d, dp, p) * out[dp] for dp in range(d))
        out.append(s)
    return tuple(out)


class _Quotient:
    """Z^e/C as ⊕ Z/d_i, with a reduction map."""

    __slots__ = ("V", "moduli", "cols")

    def __init__(self, C_rows):
        d, _, V = smith([list(r) for r in C_rows])
        self.cols = [i for i, x in enumerate(d) if x != 1]
        self.moduli = [d[i] for i in self.cols]
        self.V = V

    def reduce(self, v) -> tuple[int, ...]:
        out = []
        for i, m in zip(self.cols, self.moduli):
            s = 0
            for a, row in zip(v, self.V):
                if a:
                    s += a * row[i]
            out.append(s % m)
        return tuple(out)

    @property
    def size(self) -> int:
        return prod(self.moduli)


class CentralCounter:
    """Subring and ideal counts of a class-2 Lie ring via its central decomposition."""

    def __init__(self, L: StructureConstantAlgebra):
        if L.kind != "lie":
            raise ValueError("central decomposition needs a Lie ring")
        La, e = central_adapted(L)
        r = La.rank - e
        beta = [[None] * r for _ in range(r)]
        for i in range(r):
            for j in range(r):
                v = La.basis_product(i, j)
                if any(v[:r]):
                    raise ValueError("ring is not of class 2")
                beta[i][j] = tuple(v[r:])
        self.L = L
        self.h, self.r, self.e = La.rank, r, e
        self.beta = beta
        self._inner: dict = {}
        self._quot: dict = {}

    # -- bilinear helpers ----------------------------------------------------
    def bracket(self, x, y) -> list[int]:
        out = [0] * self.e
        for i, a in enumerate(x):
            if not a:
                continue
            bi = self.beta[i]
            for j, b in enumerate(y):
                if b:
                    ab = a * b
                    for k, c in enumerate(bi[j]):
                        if c:
                            out[k] += ab * c
        return out

    def _lattices(self, dim: int, n: int) -> list:
        key = (dim, n)
        if key not in self._quot:
            self._quot[key] = list(hnf_rows_iter(dim, n))
        return self._quot[key]

    # -- public --------------------------------------------------------------
    def count(self, n: int, kind: ClosureKind | str = ClosureKind.SUBRING) -> int:
        kind = ClosureKind.parse(kind)
        if kind is ClosureKind.ORDER:
            raise ValueError("orders only make sense in unital rings")
        if kind is ClosureKind.SUBGROUP:
            return lattice_count(self.h, n)
        ideal = kind.is_ideal
        total = 0
        for n2 in divisors(n):
            n1 = n // n2
            total += n2 ** self.r * self.inner(n1, n2, ideal)
        return total

    def inner(self, n1: int, n2: int, ideal: bool) -> int:
        key = (n1, n2, ideal)
        if key not in self._inner:
            if n2 == 1:
                val = lattice_count(self.r, n1)
            elif ideal:
                val = self._inner_ideal(n1, n2)
            else:
                val = self._inner_subring(n1, n2)
            self._inner[key] = val
        return self._inner[key]

    # -- ideals --------------------------------------------------------------
    def _inner_ideal(self, n1: int, n2: int) -> int:
        r = self.r
        total = 0
        for C in self._lattices(self.e, n2):
            q = _Quotient(C)
            if not q.moduli:
                total += lattice_count(r, n1)
                continue
            # R_C = kernel of x ↦ (β(x, e_j) mod C)_j; its index is the image size
            gens = [sum((q.reduce(self.beta[i][j]) for j in range(r)), ()) for i in range(r)]
            idx = subgroup_order_mod(gens, q.moduli * r)
            if n1 % idx == 0:
                total += lattice_count(r, n1 // idx)
        return total

    # -- subrings ------------------------------------------------------------
    def _inner_subring(self, n1: int, n2: int) -> int:
        fac2 = factor(n2)
        if len(fac2) == 1 and next(iter(fac2.values())) == 1:
            return self._inner_isotropic(n1, n2)
        return self._inner_by_bbar(n1, n2)

    def _inner_isotropic(self, n1: int, p: int) -> int:
        """n2 = p prime: C ⊇ pZ^e is the kernel of a functional λ mod p, and
        β(B̄,B̄) ⊆ C iff the image of B̄ mod p is isotropic for λ∘β."""
        r = self.r
        prof = reduction_profile(r, n1, p)
        total = 0
        for lam in projective_points(self.e, p):
            omega = [[sum(l * b for l, b in zip(lam, self.beta[i][j])) % p for j in range(r)]
                     for i in range(r)]
            rk = _rank_mod_p(omega, p)
            rho, r0 = rk // 2, r - rk
            total += sum(isotropic_count(rho, r0, d, p) * prof[d] for d in range(r + 1))
        return total

    def _inner_by_bbar(self, n1: int, n2: int) -> int:
        """Enumerate every B̄ of index n1 (vectorized per diagonal shape) and test
        the brackets of its rows against every C of index n2."""
        r, e = self.r, self.e
        Cs = [np.array(C, dtype=np.int64) for C in self._lattices(e, n2)]
        beta = np.array(self.beta, dtype=np.int64)            # (r, r, e)
        iu, ju = np.triu_indices(r, 1)
        total = 0
        for B in _hnf_blocks(r, n1):
            T = np.einsum("nia,abk->nibk", B, beta)
            P = np.einsum("nibk,njb->nijk", T, B)[:, iu, ju, :]   # (N, pairs, e)
            for C in Cs:
                v = P.copy()
                ok = np.ones(v.shape[:2], dtype=bool)
                for k in range(e):
                    q, rem = np.divmod(v[..., k], C[k, k])
                    ok &= rem == 0
                    v -= q[..., None] * C[k]
                total += int(np.count_nonzero(ok.all(axis=1)))
        return total


def _hnf_blocks(h: int, n: int, chunk: int = 1 << 16):
    """Hermite bases of index n in Z^h as int64 arrays of shape (N, h, h), one
    diagonal shape (or a slice of one) at a time."""
    slots = [(i, j) for i in range(h) for j in range(i + 1, h)]
    for diag in ordered_factorizations(n, h):
        sizes = [diag[j] for _, j in slots]
        total = prod(sizes)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            B = np.zeros((len(idx), h, h), dtype=np.int64)
            for i in range(h):
                B[:, i, i] = diag[i]
            for (i, j), size in zip(reversed(slots), reversed(sizes)):
                B[:, i, j] = idx % size
                idx //= size
            yield B


_COUNTERS: dict = {}


def central_counter(L: StructureConstantAlgebra) -> CentralCounter:
    c = _COUNTERS.get(L)
    if c is None:
        c = _COUNTERS[L] = CentralCounter(L)
    return c
