"""Brute-force oracle: finite-index sublattices in Hermite form and their closure.

Lattices are row-generated upper-triangular matrices with 0 ≤ m_ij < m_jj for
i < j. Counts a_n(L) are exact Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .algebra import StructureConstantAlgebra, multiply, nilpotency_class, unit
from .intlinalg import solve_echelon
from .numtheory import lattice_count, ordered_factorizations


class ClosureKind(str, Enum):
    SUBGROUP = "subgroup"
    SUBRING = "subring"
    LEFT_IDEAL = "left-ideal"
    RIGHT_IDEAL = "right-ideal"
    IDEAL = "two-sided-ideal"
    ORDER = "order"

    @classmethod
    def parse(cls, value: "str | ClosureKind") -> "ClosureKind":
        if isinstance(value, cls):
            return value
        aliases = {"ideal": cls.IDEAL, "two-sided": cls.IDEAL}
        if value in aliases:
            return aliases[value]
        return cls(value)

    @property
    def is_ideal(self) -> bool:
        return self in (ClosureKind.LEFT_IDEAL, ClosureKind.RIGHT_IDEAL, ClosureKind.IDEAL)


@dataclass(frozen=True)
class HermiteMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        h = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != h:
                raise ValueError("Hermite matrix must be square")
            if any(row[:i]) or row[i] < 1:
                raise ValueError("Hermite matrix must be upper triangular with positive diagonal")
            for j in range(i + 1, h):
                if not 0 <= row[j] < self.rows[j][j]:
                    raise ValueError(f"entry ({i + 1},{j + 1}) not reduced modulo m_{j + 1}{j + 1}")

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(r[i] for i, r in enumerate(self.rows))

    @property
    def index(self) -> int:
        out = 1
        for d in self.diagonal:
            out *= d
        return out

    def __contains__(self, v: Sequence[int]) -> bool:
        return solve_echelon(self.rows, v) is not None

    @classmethod
    def from_lattice_basis(cls, basis) -> "HermiteMatrix":
        return cls(tuple(tuple(r) for r in basis))


def enumerate_hnf(h: int, n: int) -> Iterator[HermiteMatrix]:
    """Every index-n sublattice of Z^h exactly once.

    Order: diagonal vectors lexicographically, then off-diagonal entries
    row by row.
    """
    if h < 1 or n < 1:
        raise ValueError("need h ≥ 1 and n ≥ 1")
    for diag in ordered_factorizations(n, h):
        slots = [(i, j) for i in range(h) for j in range(i + 1, h)]
        ranges = [range(diag[j]) for (_, j) in slots]
        for values in product(*ranges):
            m = [[0] * h for _ in range(h)]
            for i in range(h):
                m[i][i] = diag[i]
            for (i, j), v in zip(slots, values):
                m[i][j] = v
            yield HermiteMatrix(tuple(map(tuple, m)))


def _products_to_check(L: StructureConstantAlgebra, kind: ClosureKind):
    """Pairs (left, right) of generator roles: 'r' = lattice row, 'e' = basis vector."""
    checks = []
    if kind is ClosureKind.SUBRING or kind is ClosureKind.ORDER:
        checks.append(("r", "r"))
    if kind in (ClosureKind.RIGHT_IDEAL, ClosureKind.IDEAL):
        checks.append(("r", "e"))
    if kind in (ClosureKind.LEFT_IDEAL, ClosureKind.IDEAL):
        checks.append(("e", "r"))
    return checks


def is_closed(L: StructureConstantAlgebra, M: HermiteMatrix | Sequence[Sequence[int]],
              kind: ClosureKind | str) -> bool:
    kind = ClosureKind.parse(kind)
    rows = M.rows if isinstance(M, HermiteMatrix) else tuple(map(tuple, M))
    h = L.rank
    if len(rows) != h:
        raise ValueError(f"matrix size {len(rows)} does not match rank {h}")
    if kind is ClosureKind.ORDER:
        if L.kind != "unital":
            raise ValueError("orders only make sense in unital rings")
        if solve_echelon(rows, L.identity) is None:
            return False
    if kind is ClosureKind.SUBGROUP:
        return True
    sym = L.kind == "lie" or L.is_commutative
    E = [unit(h, i) for i in range(h)]
    for left, right in _products_to_check(L, kind):
        if left == "r" and right == "r":
            pairs = [(rows[i], rows[j]) for i in range(h) for j in range(i if sym else 0, h)]
        elif left == "r":
            pairs = [(rows[i], E[j]) for i in range(h) for j in range(h)]
        else:
            pairs = [(E[j], rows[i]) for i in range(h) for j in range(h)]
        for x, y in pairs:
            if solve_echelon(rows, multiply(L, x, y)) is None:
                return False
    return True


def count_enumerate(L: StructureConstantAlgebra, n: int, kind: ClosureKind | str) -> int:
    return sum(1 for _ in iter_closed(L, n, kind))


def iter_closed(L: StructureConstantAlgebra, n: int, kind: ClosureKind | str
                ) -> Iterator[HermiteMatrix]:
    """Closed index-n sublattices, found bottom-up with partial closure pruning.

    Once rows i..h are fixed, any required product that already lies in
    span(e_i..e_h) must lie in the span of those rows; otherwise the branch
    is dead.
    """
    kind = ClosureKind.parse(kind)
    if kind is ClosureKind.ORDER and L.kind != "unital":
        raise ValueError("orders only make sense in unital rings")
    h = L.rank
    sym = L.kind == "lie" or L.is_commutative
    checks = _products_to_check(L, kind)
    E = [unit(h, i) for i in range(h)]

    def tail_ok(rows: list, i: int) -> bool:
        # rows[i:] are fixed; check products involving the new row i
        tail = rows[i:]
        new = rows[i]
        cands = []
        for left, right in checks:
            if left == "r" and right == "r":
                for j in range(i, h):
                    cands.append(multiply(L, new, rows[j]))
                    if not sym and j != i:
                        cands.append(multiply(L, rows[j], new))
            elif left == "r":
                cands.extend(multiply(L, new, E[j]) for j in range(h))
            else:
                cands.extend(multiply(L, E[j], new) for j in range(h))
        if kind is ClosureKind.ORDER and not any(L.identity[:i]):
            cands.append(list(L.identity))
        for v in cands:
            if any(v[:i]):
                continue
            if solve_echelon(tail, v) is None:
                return False
        return True

    def rec(rows: list, diag: tuple, i: int):
        if i < 0:
            if is_closed(L, rows, kind):
                yield HermiteMatrix(tuple(rows))
            return
        ranges = [range(diag[j]) for j in range(i + 1, h)]
        for values in product(*ranges):
            row = [0] * h
            row[i] = diag[i]
            for j, v in zip(range(i + 1, h), values):
                row[j] = v
            rows[i] = tuple(row)
            if tail_ok(rows, i):
                yield from rec(rows, diag, i - 1)
        rows[i] = None

    for diag in ordered_factorizations(n, h):
        yield from rec([None] * h, diag, h - 1)


def _is_class_two_lie(L: StructureConstantAlgebra) -> bool:
    if L.kind != "lie" or L.is_zero_product:
        return False
    try:
        return nilpotency_class(L) == 2
    except ValueError:
        return False


def count(L: StructureConstantAlgebra, n: int, kind: ClosureKind | str = ClosureKind.SUBRING,
          method: str = "auto") -> int:
    """a_n(L): number of index-n sublattices closed in the given sense.

    method: "auto", "enumerate" (plain Hermite enumeration) or "central"
    (class-2 Lie rings only).
    """
    kind = ClosureKind.parse(kind)
    if n < 1:
        raise ValueError("index must be positive")
    if kind is ClosureKind.ORDER and L.kind != "unital":
        raise ValueError("orders only make sense in unital rings")
    if method == "enumerate":
        return count_enumerate(L, n, kind)
    if kind is ClosureKind.SUBGROUP or (L.is_zero_product and kind is not ClosureKind.ORDER):
        return lattice_count(L.rank, n)
    if method == "central" or (method == "auto" and kind is not ClosureKind.ORDER
                               and _is_class_two_lie(L)):
        from .central import central_counter
        return central_counter(L).count(n, kind)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    return count_enumerate(L, n, kind)


def local_coefficients(L: StructureConstantAlgebra, p: int, kmax: int,
                       kind: ClosureKind | str = ClosureKind.SUBRING, method: str = "auto"
                       ) -> list[int]:
    """(a_1, a_p, …, a_{p^kmax}) for the local factor at p."""
    return [count(L, p ** k, kind, method) for k in range(kmax + 1)]


@lru_cache(maxsize=None)
def cached_count(L: StructureConstantAlgebra, n: int, kind: ClosureKind) -> int:
    return count(L, n, kind)
