"""Rational polyhedral cones from monomial resolution data.

Covers the cone of valuation vectors, its extremal rays, the ray invariants
(A, B), a decomposition into relatively open simplicial cones, truncated
lattice-point series, and two independent evaluations of the local factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil
from typing import Mapping, Sequence

from .intlinalg import Lattice, hnf_rows, inverse_rational, primitive, rank_rational, saturation
from .rational import PadicRationalFunction


@dataclass(frozen=True)
class MonomialConeDatum:
    """Multiplicities N_ι(f_j), N_ι(g_j) for j = 0..l over an index set of size m, plus weights ν."""

    m: int
    f: tuple[tuple[int, ...], ...]
    g: tuple[tuple[int, ...], ...]
    nu: tuple[int, ...]

    def __post_init__(self):
        f = tuple(tuple(int(x) for x in row) for row in self.f)
        g = tuple(tuple(int(x) for x in row) for row in self.g)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "nu", tuple(int(x) for x in self.nu))
        if len(f) != len(g) or not f:
            raise ValueError("need matching f_j and g_j rows, starting with j = 0")
        for row in f + g + (self.nu,):
            if len(row) != self.m:
                raise ValueError(f"row {row} does not have length m = {self.m}")
            if any(x < 0 for x in row):
                raise ValueError("multiplicities must be non-negative")
        if any(x < 1 for x in self.nu):
            raise ValueError("weights ν must be at least 1")

    @property
    def l(self) -> int:
        return len(self.f) - 1


@dataclass(frozen=True)
class PolyhedralCone:
    """{u ∈ R^dim : row·u ≥ 0 for every row}."""

    dim: int
    inequalities: tuple[tuple[int, ...], ...]

    def contains(self, u: Sequence) -> bool:
        return all(sum(a * x for a, x in zip(row, u)) >= 0 for row in self.inequalities)

    def tight(self, u: Sequence) -> frozenset[int]:
        return frozenset(i for i, row in enumerate(self.inequalities)
                         if sum(a * x for a, x in zip(row, u)) == 0)


def cone_from_data(D: MonomialConeDatum) -> PolyhedralCone:
    """Orthant rows first, then Σ (N(g_j) − N(f_j))·u ≥ 0 for j = 1..l."""
    rows = [tuple(int(i == j) for j in range(D.m)) for i in range(D.m)]
    for j in range(1, D.l + 1):
        rows.append(tuple(b - a for a, b in zip(D.f[j], D.g[j])))
    return PolyhedralCone(D.m, tuple(rows))


def orthant_cone(Phi: Sequence[Sequence[int]], m: int) -> PolyhedralCone:
    rows = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    rows += [tuple(r) for r in Phi]
    return PolyhedralCone(m, tuple(rows))


# -- extremal rays -------------------------------------------------------------

def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def extremal_rays(cone: PolyhedralCone) -> list[tuple[int, ...]]:
    """Primitive generators of the extremal rays, in descending lexicographic order.

    Double description: start from the unit vectors (the cone is assumed to lie
    in the non-negative orthant) and cut by each remaining inequality, joining
    only combinatorially adjacent pairs.
    """
    n = cone.dim
    ineqs = list(cone.inequalities)
    unit_rows = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    extra = [r for r in ineqs if r not in unit_rows]
    rays = [tuple(u) for u in unit_rows]
    processed = list(unit_rows)

    def zero_set(r):
        return frozenset(i for i, a in enumerate(processed) if _dot(a, r) == 0)

    for a in extra:
        if not any(a):
            continue
        vals = {r: _dot(a, r) for r in rays}
        pos = [r for r in rays if vals[r] > 0]
        zer = [r for r in rays if vals[r] == 0]
        neg = [r for r in rays if vals[r] < 0]
        zs = {r: zero_set(r) for r in rays}
        new = []
        for rp in pos:
            for rn in neg:
                common = zs[rp] & zs[rn]
                if any(zs[r] >= common for r in rays if r != rp and r != rn):
                    continue
                v = [vals[rp] * y - vals[rn] * x for x, y in zip(rp, rn)]
                new.append(tuple(primitive(v)))
        rays = list(dict.fromkeys(pos + zer + new))
        processed.append(tuple(a))
    return sorted(rays, reverse=True)


@dataclass(frozen=True)
class RayInvariants:
    A: tuple[int, ...]
    B: tuple[int, ...]
    alpha: Fraction | None      # None when every A_k vanishes


def ray_invariants(rays: Sequence[Sequence[int]], D: MonomialConeDatum) -> RayInvariants:
    A = tuple(_dot(e, D.f[0]) for e in rays)
    B = tuple(sum(x * (g + v) for x, g, v in zip(e, D.g[0], D.nu)) for e in rays)
    cands = [Fraction(1 - b, a) for a, b in zip(A, B) if a]
    return RayInvariants(A, B, max(cands) if cands else None)


# -- decomposition ---------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """Relatively open simplicial cone spanned by rays[M]; I is the support of its interior."""

    M: tuple[int, ...]
    I: frozenset[int]


@dataclass(frozen=True)
class ConeDecomposition:
    cone: PolyhedralCone
    rays: tuple[tuple[int, ...], ...]
    pieces: tuple[Piece, ...]

    def piece_of(self, u: Sequence[int]) -> int | None:
        """Index of the piece containing the point u, or None outside the cone."""
        hits = [k for k, pc in enumerate(self.pieces) if piece_contains(self.rays, pc, u)]
        if len(hits) > 1:
            raise AssertionError(f"pieces overlap at {tuple(u)}")
        return hits[0] if hits else None


def piece_contains(rays, piece: Piece, u: Sequence[int]) -> bool:
    if not piece.M:
        return not any(u)
    E = [rays[j] for j in piece.M]
    lam = _coords_in_span(E, u)
    return lam is not None and all(x > 0 for x in lam)


def _coords_in_span(E: Sequence[Sequence[int]], u: Sequence[int]) -> list[Fraction] | None:
    """λ with λ·E = u for linearly independent rows E, or None."""
    d, n = len(E), len(u)
    # solve via the normal equations (E E^T) λ = E u, then verify
    G = [[_dot(E[i], E[j]) for j in range(d)] for i in range(d)]
    rhs = [_dot(E[i], u) for i in range(d)]
    Ginv = inverse_rational(G)
    lam = [sum(Ginv[i][j] * rhs[j] for j in range(d)) for i in range(d)]
    back = [sum(lam[i] * E[i][c] for i in range(d)) for c in range(n)]
    return lam if back == list(u) else None


def _face_rays(cone: PolyhedralCone, rays, S: frozenset[int]) -> list[frozenset[int]]:
    """Facets of the face spanned by rays[S], as ray-index sets."""
    dimS = rank_rational([rays[i] for i in S])
    out = set()
    for row in cone.inequalities:
        sub = frozenset(i for i in S if _dot(row, rays[i]) == 0)
        if sub != S and sub and rank_rational([rays[i] for i in sub]) == dimS - 1:
            out.add(sub)
    if dimS == 1:
        return []
    return sorted(out, key=sorted)


def _pulling(cone, rays, S: frozenset[int], order) -> list[frozenset[int]]:
    """Maximal simplices of a pulling triangulation of the face rays[S]."""
    dimS = rank_rational([rays[i] for i in S])
    if len(S) == dimS:
        return [S]
    v = min(S, key=order)
    out = []
    for F in _face_rays(cone, rays, S):
        if v in F:
            continue
        for sim in _pulling(cone, rays, F, order):
            out.append(sim | {v})
    return out


def simplicial_decomposition(cone: PolyhedralCone, rays: Sequence[Sequence[int]] | None = None,
                             reverse: bool = False) -> ConeDecomposition:
    """Relatively open pieces of a pulling triangulation: origin, rays, then larger cells.

    The apex of each pull is the lexicographically smallest available ray, or
    the largest when `reverse` is set.
    """
    if rays is None:
        rays = extremal_rays(cone)
    rays = tuple(tuple(r) for r in rays)
    if not rays:
        return ConeDecomposition(cone, rays, (Piece((), frozenset()),))
    key = (lambda i: rays[i]) if not reverse else (lambda i: tuple(-x for x in rays[i]))
    full = frozenset(range(len(rays)))
    maximal = _pulling(cone, rays, full, key)
    faces = set()
    for sim in maximal:
        items = sorted(sim)
        for k in range(1, len(items) + 1):
            faces.update(combinations(items, k))
    ordered = sorted(faces, key=lambda M: (len(M), M))
    pieces = [Piece((), frozenset())]
    for M in ordered:
        support = frozenset(i for j in M for i, x in enumerate(rays[j]) if x)
        pieces.append(Piece(tuple(M), support))
    return ConeDecomposition(cone, rays, tuple(pieces))


def parallelepiped_points(E: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Integer points Σ λ_j E_j with every λ_j ∈ (0, 1]; E has independent rows."""
    d = len(E)
    if d == 0:
        return [()]
    n = len(E[0])
    sat, index = saturation(Lattice(n, E))
    S = sat.basis
    # E = M·S with M integral (d × d)
    M = []
    for row in E:
        c = _coords_in_span(S, row)
        M.append([int(x) for x in c])
    Minv = inverse_rational(M)
    H = hnf_rows(M, d)
    pts = []
    for x in product(*(range(H[i][i]) for i in range(d))):
        lam = [sum(Fraction(x[i]) * Minv[i][j] for i in range(d)) for j in range(d)]
        lam = [q - ceil(q) + 1 for q in lam]
        y = [sum(lam[i] * M[i][j] for i in range(d)) for j in range(d)]
        pt = tuple(int(sum(y[i] * S[i][c] for i in range(d))) for c in range(n))
        pts.append(pt)
    if len(set(pts)) != index:
        raise AssertionError("parallelepiped enumeration inconsistent with the lattice index")
    return sorted(set(pts))


# -- Stanley series ----------------------------------------------------------------

@dataclass(frozen=True)
class StanleyResult:
    series: dict                     # exponent tuple → coefficient, total degree ≤ N
    rays: tuple[tuple[int, ...], ...]   # denominator ∏ (1 − X^e)
    numerator: dict                  # exact part of series × denominator
    truncation: int
    exact_bound: int                 # degrees ≤ this in the product are exact
    numerator_degree: int            # −1 for the zero series
    certified: bool

    @property
    def denominator_degree(self) -> int:
        return sum(sum(e) for e in self.rays)

    @property
    def is_empty(self) -> bool:
        return not self.series


def _compositions_upto(n_vars: int, N: int):
    if n_vars == 0:
        yield ()
        return
    for first in range(N + 1):
        for rest in _compositions_upto(n_vars - 1, N - first):
            yield (first,) + rest


def _mul_truncated(A: dict, B: dict, N: int) -> dict:
    out: dict = {}
    for ka, va in A.items():
        da = sum(ka)
        for kb, vb in B.items():
            if da + sum(kb) > N:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def stanley_series(Phi: Sequence[Sequence[int]], v: Sequence[int], N: int) -> StanleyResult:
    """Lattice points of {u ≥ 0 : Φu ≥ v} up to total degree N, with the ray denominator.

    The numerator is certified when the exact part of series × denominator has
    a run of at least deg(denominator) vanishing degrees at its top.
    """
    if not Phi or not Phi[0]:
        raise ValueError("need at least one variable")
    m = len(Phi[0])
    if len(v) != len(Phi):
        raise ValueError("v must have one entry per row of Φ")
    series = {}
    for u in _compositions_upto(m, N):
        if all(_dot(row, u) >= b for row, b in zip(Phi, v)):
            series[u] = 1
    rays = tuple(extremal_rays(orthant_cone(Phi, m)))
    den = {(0,) * m: 1}
    for e in rays:
        den = _mul_truncated(den, {(0,) * m: 1, tuple(e): -1}, N)
    deg = sum(sum(e) for e in rays)
    exact = N - deg
    prod_ = _mul_truncated(series, den, N)
    numerator = {k: c for k, c in prod_.items() if sum(k) <= exact}
    top = max((sum(k) for k in numerator), default=-1)
    certified = exact >= 0 and exact - top >= max(deg, 1)
    return StanleyResult(series, rays, numerator, N, exact, top, certified)


def certified_stanley(Phi: Sequence[Sequence[int]], v: Sequence[int],
                      max_truncation: int = 400) -> StanleyResult:
    """stanley_series at doubling truncations until the numerator is certified."""
    rays = extremal_rays(orthant_cone(Phi, len(Phi[0])))
    N = 2 * sum(sum(e) for e in rays) + 4
    while True:
        res = stanley_series(Phi, v, N)
        if res.certified:
            return res
        if N >= max_truncation:
            raise ValueError(f"numerator not certified up to truncation {N}")
        N = min(2 * N, max_truncation)


# -- evaluation ---------------------------------------------------------------------

@dataclass(frozen=True)
class GoodReductionCounts:
    p: int
    counts: Mapping[frozenset, int]

    def __post_init__(self):
        clean = {frozenset(k): int(c) for k, c in self.counts.items()}
        if any(c < 0 for c in clean.values()):
            raise ValueError("point counts must be non-negative")
        object.__setattr__(self, "counts", clean)

    def __getitem__(self, I) -> int:
        I = frozenset(I)
        if I not in self.counts:
            raise KeyError(f"missing count c_{{p,I}} for I = {sorted(i + 1 for i in I)}")
        return self.counts[I]


def coordinate_counts(m: int, p: int) -> GoodReductionCounts:
    """Counts for monomial data, where the divisors are the coordinate hyperplanes of
    A^m: a point of F_p^m lies on exactly the hyperplanes in I in (p−1)^(m−|I|) ways."""
    return GoodReductionCounts(p, {frozenset(I): (p - 1) ** (m - len(I))
                                   for k in range(m + 1) for I in combinations(range(m), k)})


def _weights(D: MonomialConeDatum, u) -> tuple[int, int]:
    """(t-exponent, p-exponent) of p^{-(s N(f0) + N(g0) + ν)·u}."""
    return _dot(D.f[0], u), -sum(x * (g + n) for x, g, n in zip(u, D.g[0], D.nu))


def _at_prime(num: dict, p: int, scale) -> dict:
    """Collapse {(t-exp, p-exp): c} to t-exponents only, summing collisions."""
    out: dict = {}
    for (i, j), c in num.items():
        out[(i, 0)] = out.get((i, 0), 0) + scale * c * Fraction(p) ** j
    return out


def good_prime_factor(dec: ConeDecomposition, counts: GoodReductionCounts, D: MonomialConeDatum,
                      m: int | None = None) -> PadicRationalFunction:
    """Σ_k (p−1)^{|I_k|} p^{−m} c_{p,I_k} · (lattice points of R_k weighted by p^{-(sA+B)}).

    For a non-unimodular simplex the usual ∏ x_j/(1 − x_j) is replaced by the
    half-open parallelepiped sum over the same denominator.
    """
    p = counts.p
    m = D.m if m is None else m
    total = PadicRationalFunction({}, (), p)
    for pc in dec.pieces:
        c = counts[pc.I]
        if c == 0:
            continue
        scale = Fraction(p - 1) ** len(pc.I) * Fraction(p) ** (-m) * c
        E = [dec.rays[j] for j in pc.M]
        num: dict = {}
        for w in parallelepiped_points(E):
            key = _weights(D, w) if w else (0, 0)
            num[key] = num.get(key, 0) + 1
        den = []
        for e in E:
            a, b = _weights(D, e)
            if a == 0:
                if b == 0:
                    raise ValueError("ray with zero weight: the series diverges")
                scale /= 1 - Fraction(p) ** b
            else:
                den.append((a, b))
        total = total + PadicRationalFunction(_at_prime(num, p, scale), tuple(den), p)
    return total.normalized()


def monomial_local_factor(D: MonomialConeDatum, p: int, max_truncation: int = 400
                          ) -> PadicRationalFunction:
    """∫ |f_0|^s |g_0| over the cone region for monomial data, via the Stanley series.

    Uses the certified lattice-point numerator of the cone and specializes
    X_ι ↦ t^{N_ι(f_0)} p^{−(N_ι(g_0)+ν_ι)}.
    """
    Phi = [tuple(b - a for a, b in zip(D.f[j], D.g[j])) for j in range(1, D.l + 1)]
    if not Phi:
        Phi = [(0,) * D.m]
    res = certified_stanley(Phi, [0] * len(Phi), max_truncation)
    scale = (1 - Fraction(1, p)) ** D.m
    num: dict = {}
    for w, c in res.numerator.items():
        key = _weights(D, w)
        num[key] = num.get(key, 0) + c
    den = []
    for e in res.rays:
        a, b = _weights(D, e)
        if a == 0:
            if b == 0:
                raise ValueError("specialization collision: a ray has zero weight")
            scale /= 1 - Fraction(p) ** b
        else:
            den.append((a, b))
    return PadicRationalFunction(_at_prime(num, p, scale), tuple(den), p).normalized()


def toy_datum() -> MonomialConeDatum:
    """T = {1, 2}; f_0 ↦ (1,0), g_0 ↦ (0,0), one condition u_1 ≤ u_2, ν = (1,1)."""
    return MonomialConeDatum(2, ((1, 0), (1, 0)), ((0, 0), (0, 1)), (1, 1))
