"""Small number-theory helpers: factorizations, quadratic fields, Gaussian binomials."""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from itertools import product

from sympy import factorint, isprime, primerange
from sympy.functions.combinatorial.numbers import kronecker_symbol

__all__ = [
    "SplittingType", "splitting_type", "field_discriminant", "check_squarefree_field",
    "chi4", "divisors", "factor", "isprime", "primerange", "ordered_factorizations",
    "gaussian_binomial", "lattice_count", "split_primes", "kronecker_symbol",
]


class SplittingType(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def factor(n: int) -> dict[int, int]:
    return {int(p): int(e) for p, e in factorint(n).items()}


def is_squarefree(k: int) -> bool:
    return all(e == 1 for e in factor(abs(k)).values())


def check_squarefree_field(k: int) -> None:
    if k in (0, 1) or not is_squarefree(k):
        raise ValueError(f"k={k} does not define a quadratic field (need squarefree k ≠ 0, 1)")


def field_discriminant(k: int) -> int:
    check_squarefree_field(k)
    return k if k % 4 == 1 else 4 * k


def splitting_type(k: int, p: int) -> SplittingType:
    """How the prime p decomposes in Q(√k), from the Kronecker symbol (D/p)."""
    D = field_discriminant(k)
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    s = kronecker_symbol(D, p)
    if s == 0:
        return SplittingType.RAMIFIED
    return SplittingType.SPLIT if s == 1 else SplittingType.INERT


def split_primes(k: int, count: int) -> list[int]:
    out = []
    p = 2
    while len(out) < count:
        if isprime(p) and splitting_type(k, p) is SplittingType.SPLIT:
            out.append(p)
        p += 1
    return out


def chi4(n: int) -> int:
    """The non-trivial character mod 4."""
    r = n % 4
    return 1 if r == 1 else -1 if r == 3 else 0


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factor(n).items():
        ds = [d * p ** i for d in ds for i in range(e + 1)]
    return sorted(ds)


def ordered_factorizations(n: int, h: int) -> list[tuple[int, ...]]:
    """All (d_1, …, d_h) of positive integers with product n, in lexicographic order."""
    if h == 0:
        return [()] if n == 1 else []
    fac = factor(n)
    primes = sorted(fac)
    # distribute each prime's exponent among the h slots
    per_prime = []
    for p in primes:
        per_prime.append([c for c in _compositions(fac[p], h)])
    out = set()
    for combo in product(*per_prime):
        d = [1] * h
        for p, comp in zip(primes, combo):
            for i, a in enumerate(comp):
                d[i] *= p ** a
        out.add(tuple(d))
    return sorted(out)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def lattice_count(r: int, n: int) -> int:
    """Number of sublattices of index n in Z^r, counted as Hermite matrices.

    Each diagonal (d_1, …, d_r) carries ∏ d_j^(j−1) choices of off-diagonal
    residues.
    """
    total = 0
    for diag in ordered_factorizations(n, r):
        w = 1
        for j, d in enumerate(diag):
            w *= d ** j
        total += w
    return total
