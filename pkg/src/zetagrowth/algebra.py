"""Rings of finite additive rank given by integer structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .intlinalg import Lattice, adapted_basis, inverse_unimodular, saturation, vecmat

KINDS = ("lie", "associative", "unital")


class AlgebraError(ValueError):
    pass


class NotNilpotentError(AlgebraError):
    pass


@dataclass(frozen=True)
class StructureConstantAlgebra:
    """A ring on Z^rank with e_i·e_j = Σ_k constants[(i, j, k)] e_k (0-based keys).

    Only nonzero constants are stored. `identity` is required iff kind is
    "unital".
    """

    rank: int
    constants: Mapping[tuple[int, int, int], int]
    kind: str = "lie"
    identity: tuple[int, ...] | None = None
    name: str = ""
    _table: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise AlgebraError(f"unknown kind {self.kind!r}")
        if self.rank < 0:
            raise AlgebraError("rank must be non-negative")
        clean = {}
        for (i, j, k), c in self.constants.items():
            if not all(0 <= x < self.rank for x in (i, j, k)):
                raise AlgebraError(f"index {(i, j, k)} out of range for rank {self.rank}")
            if c:
                clean[(i, j, k)] = int(c)
        object.__setattr__(self, "constants", clean)
        if (self.kind == "unital") != (self.identity is not None):
            raise AlgebraError("identity vector is required exactly for unital algebras")
        if self.identity is not None:
            if len(self.identity) != self.rank:
                raise AlgebraError("identity vector has the wrong length")
            object.__setattr__(self, "identity", tuple(int(a) for a in self.identity))
        # dense table: table[i][j] = product vector e_i * e_j
        h = self.rank
        table = [[[0] * h for _ in range(h)] for _ in range(h)]
        for (i, j, k), c in clean.items():
            table[i][j][k] = c
        object.__setattr__(self, "_table", tuple(tuple(tuple(v) for v in row) for row in table))

    def __hash__(self):
        return hash((self.rank, self.kind, self.identity, tuple(sorted(self.constants.items()))))

    def __eq__(self, other):
        return (isinstance(other, StructureConstantAlgebra) and self.rank == other.rank
                and self.kind == other.kind and self.identity == other.identity
                and self.constants == other.constants)

    def basis_product(self, i: int, j: int) -> tuple[int, ...]:
        return self._table[i][j]

    @property
    def is_zero_product(self) -> bool:
        return not self.constants

    @property
    def is_commutative(self) -> bool:
        return all(self.constants.get((j, i, k), 0) == c for (i, j, k), c in self.constants.items())


def multiply(L: StructureConstantAlgebra, x: Sequence[int], y: Sequence[int]) -> list[int]:
    h = L.rank
    if len(x) != h or len(y) != h:
        raise AlgebraError(f"vectors must have length {h}")
    out = [0] * h
    for (i, j, k), c in L.constants.items():
        a = x[i]
        if a:
            b = y[j]
            if b:
                out[k] += c * a * b
    return out


def unit(h: int, i: int) -> list[int]:
    v = [0] * h
    v[i] = 1
    return v


def validate(L: StructureConstantAlgebra) -> list[str]:
    """List of violated identities; empty iff L satisfies its kind's axioms."""
    h = L.rank
    E = [unit(h, i) for i in range(h)]
    problems = []
    if L.kind == "lie":
        for i, j, k in product(range(h), repeat=3):
            if L.constants.get((i, j, k), 0) != -L.constants.get((j, i, k), 0):
                if i <= j:
                    problems.append(f"antisymmetry violated at ({i + 1},{j + 1},{k + 1})")
        for i, j, k in product(range(h), repeat=3):
            if not i < j < k:
                continue
            a = multiply(L, multiply(L, E[i], E[j]), E[k])
            b = multiply(L, multiply(L, E[j], E[k]), E[i])
            c = multiply(L, multiply(L, E[k], E[i]), E[j])
            if any(x + y + z for x, y, z in zip(a, b, c)):
                problems.append(f"Jacobi identity violated at ({i + 1},{j + 1},{k + 1})")
    else:
        for i, j, k in product(range(h), repeat=3):
            left = multiply(L, multiply(L, E[i], E[j]), E[k])
            right = multiply(L, E[i], multiply(L, E[j], E[k]))
            if left != right:
                problems.append(f"associativity violated at ({i + 1},{j + 1},{k + 1})")
        if L.kind == "unital":
            u = list(L.identity)
            for j in range(h):
                if multiply(L, u, E[j]) != E[j] or multiply(L, E[j], u) != E[j]:
                    problems.append(f"identity fails on e{j + 1}")
    return problems


def lie_span(L: StructureConstantAlgebra, left: Lattice, right: Lattice) -> Lattice:
    """Subgroup generated by products a·b for a, b running over the two lattices."""
    gens = [multiply(L, a, b) for a in left.basis for b in right.basis]
    return Lattice(L.rank, gens)


def lower_central_series(L: StructureConstantAlgebra, depth_cap: int | None = None
                         ) -> tuple[list[Lattice], int]:
    """Terms γ_1 = L, γ_2, …, γ_{c+1} = 0 and the nilpotency class c."""
    if L.kind != "lie":
        raise AlgebraError("lower central series needs a Lie ring")
    h = L.rank
    cap = h + 1 if depth_cap is None else depth_cap
    full = Lattice.full(h)
    series = [full]
    while not series[-1].is_zero():
        if len(series) > cap:
            raise NotNilpotentError(f"γ_{len(series)} is still nonzero (depth cap {cap})")
        series.append(lie_span(L, series[-1], full))
    return series, len(series) - 1


def nilpotency_class(L: StructureConstantAlgebra) -> int:
    return lower_central_series(L)[1]


@dataclass(frozen=True)
class CenterData:
    Z: Lattice          # saturation of γ_c(L)
    e: int              # rank of γ_c(L)
    k1: int             # [Z : γ_c(L)]
    gamma_c: Lattice
    c: int


def center_saturation(L: StructureConstantAlgebra) -> CenterData:
    series, c = lower_central_series(L)
    if c < 2:
        raise AlgebraError("center saturation needs a non-abelian nilpotent Lie ring")
    gc = series[c - 1]
    Z, k1 = saturation(gc)
    return CenterData(Z=Z, e=gc.rank, k1=k1, gamma_c=gc, c=c)


def change_basis(L: StructureConstantAlgebra, P: list[list[int]]) -> StructureConstantAlgebra:
    """Same ring written in the basis given by the rows of the unimodular matrix P."""
    h = L.rank
    Pinv = inverse_unimodular(P)
    consts = {}
    for i in range(h):
        for j in range(h):
            prod_old = multiply(L, P[i], P[j])
            coords = vecmat(prod_old, Pinv)
            for k, c in enumerate(coords):
                if c:
                    consts[(i, j, k)] = c
    ident = None
    if L.identity is not None:
        ident = tuple(vecmat(list(L.identity), Pinv))
    return StructureConstantAlgebra(h, consts, L.kind, ident, L.name)


def central_adapted(L: StructureConstantAlgebra) -> tuple[StructureConstantAlgebra, int]:
    """Rewrite L so that the saturated center Z of γ_c spans the last e basis vectors."""
    data = center_saturation(L)
    P = adapted_basis(data.gamma_c)
    return change_basis(L, P), data.Z.rank


def direct_product(L1: StructureConstantAlgebra, L2: StructureConstantAlgebra
                   ) -> StructureConstantAlgebra:
    if L1.kind != L2.kind:
        raise AlgebraError(f"kind mismatch: {L1.kind} vs {L2.kind}")
    h1 = L1.rank
    consts = dict(L1.constants)
    for (i, j, k), c in L2.constants.items():
        consts[(i + h1, j + h1, k + h1)] = c
    ident = None
    if L1.kind == "unital":
        ident = L1.identity + L2.identity
    name = f"{L1.name}x{L2.name}" if L1.name and L2.name else ""
    return StructureConstantAlgebra(h1 + L2.rank, consts, L1.kind, ident, name)


def tensor_with_order(L: StructureConstantAlgebra, O: StructureConstantAlgebra
                      ) -> StructureConstantAlgebra:
    """L ⊗_Z O on the basis e_i ⊗ w_a, ordered (i, a) ↦ i·d + a."""
    if O.kind != "unital" or not O.is_commutative or validate(O):
        raise AlgebraError("second factor must be a commutative associative unital ring")
    d = O.rank
    consts: dict[tuple[int, int, int], int] = {}
    for (i, j, k), c in L.constants.items():
        for (a, b, e), w in O.constants.items():
            key = (i * d + a, j * d + b, k * d + e)
            consts[key] = consts.get(key, 0) + c * w
    ident = None
    if L.kind == "unital":
        ident = tuple(x * y for x in L.identity for y in O.identity)
    name = f"{L.name}(x){O.name}" if L.name and O.name else ""
    return StructureConstantAlgebra(L.rank * d, consts, L.kind, ident, name)


# ---- reference rings -------------------------------------------------------

def abelian(h: int) -> StructureConstantAlgebra:
    return StructureConstantAlgebra(h, {}, "lie", name=f"Z^{h}")


def heisenberg(scale: int = 1) -> StructureConstantAlgebra:
    """⟨x, y, z⟩ with [x, y] = scale·z."""
    name = "H" if scale == 1 else f"H[{scale}]"
    return StructureConstantAlgebra(3, {(0, 1, 2): scale, (1, 0, 2): -scale}, "lie", name=name)


def central_heisenberg_product(m: int, r: int) -> StructureConstantAlgebra:
    """Lie ring of G(m, r): m Heisenberg copies sharing one center, times Z^r.

    Basis x_1..x_m, y_1..y_m, z, w_1..w_r with [x_i, y_i] = z.
    """
    if m < 1 or r < 0:
        raise AlgebraError("need m ≥ 1 and r ≥ 0")
    z = 2 * m
    consts = {}
    for i in range(m):
        consts[(i, m + i, z)] = 1
        consts[(m + i, i, z)] = -1
    return StructureConstantAlgebra(2 * m + 1 + r, consts, "lie", name=f"G({m},{r})")


def integers_ring() -> StructureConstantAlgebra:
    return StructureConstantAlgebra(1, {(0, 0, 0): 1}, "unital", (1,), name="Zring")


def quadratic_integers(k: int) -> StructureConstantAlgebra:
    """Ring of integers of Q(√k): basis {1, √k}, or {1, (1+√k)/2} when k ≡ 1 mod 4."""
    from .numtheory import check_squarefree_field
    check_squarefree_field(k)
    consts = {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}
    if k % 4 == 1:
        consts[(1, 1, 0)] = (k - 1) // 4
        consts[(1, 1, 1)] = 1
    else:
        consts[(1, 1, 0)] = k
    return StructureConstantAlgebra(2, consts, "unital", (1, 0), name=f"O(Q(sqrt{k}))")


def gaussian_integers() -> StructureConstantAlgebra:
    return quadratic_integers(-1)
