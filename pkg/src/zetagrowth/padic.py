"""Interval evaluation of cone integrals over Z_p^m by adaptive residue boxes.

A box fixes x_i mod p^{λ_i}. For a polynomial f the value mod p^μ, with μ the
smallest level among the variables f uses, is constant on the box, so
ord_p(f) is either pinned (residue ≠ 0 mod p^μ) or known to be ≥ μ. Boxes are
split one variable at a time until everything needed is pinned or the level
cap is hit; leftover mass widens the coefficient intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import StructureConstantAlgebra
from .sublattices import ClosureKind, local_coefficients
from .rational import PadicRationalFunction


class Polynomial:
    """Sparse integer polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "terms", "_vars")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e}")
            if c:
                clean[e] = clean.get(e, 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}
        self._vars = frozenset(i for e in self.terms for i, x in enumerate(e) if x)

    @classmethod
    def const(cls, nvars: int, c: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @property
    def variables(self) -> frozenset[int]:
        return self._vars

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def __call__(self, x: Sequence[int]) -> int:
        total = 0
        for e, c in self.terms.items():
            v = c
            for xi, k in zip(x, e):
                if k:
                    v *= xi ** k
            total += v
        return total

    def monomial_exponent(self) -> tuple[int, ...] | None:
        """Exponent vector if the polynomial is ± a single monomial."""
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if abs(c) == 1:
                return e
        return None

    def format(self) -> str:
        """Sparse syntax 'coef:e1,e2,...; ...', terms in sorted order."""
        return "; ".join(f"{c}:{','.join(map(str, e))}" for e, c in sorted(self.terms.items()))

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "Polynomial":
        terms = {}
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            coef, _, exps = chunk.partition(":")
            if not _:
                raise ValueError(f"term {chunk!r} lacks ':'")
            e = tuple(int(x) for x in exps.split(","))
            if nvars is None:
                nvars = len(e)
            terms[e] = terms.get(e, 0) + int(coef)
        if nvars is None:
            raise ValueError("empty polynomial")
        return cls(nvars, terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self.format()!r})"


def _ord(v: int, p: int) -> int:
    k = 0
    while v % p == 0:
        v //= p
        k += 1
    return k


@dataclass(frozen=True)
class ConeIntegralData:
    """(f_0, g_0, f_1, g_1, …, f_l, g_l) over Z_p^m."""

    m: int
    polys: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.polys) < 2 or len(self.polys) % 2:
            raise ValueError("need an even number of polynomials, starting with f_0, g_0")
        for P in self.polys:
            if P.nvars != self.m:
                raise ValueError("polynomial variable count differs from m")
            if P.is_zero():
                raise ValueError("cone integral polynomials must be nonzero")

    @property
    def f0(self) -> Polynomial:
        return self.polys[0]

    @property
    def g0(self) -> Polynomial:
        return self.polys[1]

    @property
    def conditions(self) -> list[tuple[Polynomial, Polynomial]]:
        return [(self.polys[i], self.polys[i + 1]) for i in range(2, len(self.polys), 2)]

    def format(self) -> str:
        return "\n".join(P.format() for P in self.polys) + "\n"

    @classmethod
    def parse(cls, text: str) -> "ConeIntegralData":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        polys = [Polynomial.parse(ln) for ln in lines]
        if not polys:
            raise ValueError("no polynomials")
        m = polys[0].nvars
        polys = [Polynomial.parse(ln, m) for ln in lines]
        return cls(m, tuple(polys))


@dataclass(frozen=True)
class TruncatedLocalIntegral:
    p: int
    level: int
    kmax: int
    lower: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]
    domain_mass: Fraction          # boxes fully resolved inside the domain
    fail_mass: Fraction            # boxes violating a condition
    irrelevant_mass: Fraction      # boxes with ord f_0 > kmax
    undetermined_mass: Fraction
    boxes: int

    @property
    def exhausted(self) -> bool:
        return self.undetermined_mass > 0

    @property
    def pinned(self) -> bool:
        return all(l == u for l, u in zip(self.lower, self.upper))

    def normalized(self) -> list[tuple[Fraction, Fraction]]:
        """Intervals for a_{p,k}/a_{p,0}."""
        lo0, hi0 = self.lower[0], self.upper[0]
        if lo0 <= 0:
            raise ZeroDivisionError("a_{p,0} is not bounded away from 0")
        return [(l / hi0, u / lo0) for l, u in zip(self.lower, self.upper)]


def truncated_integral(D: ConeIntegralData, p: int, kmax: int, level: int
                       ) -> TruncatedLocalIntegral:
    """Intervals for a_{p,0..kmax} of ∫ |f_0|^s |g_0| |dx| over {ord f_i ≤ ord g_i}.

    `level` caps every variable's residue precision at p^level.
    """
    if level < 1:
        raise ValueError("level must be at least 1")
    m = D.m
    polys = D.polys
    pvars = [tuple(sorted(P.variables)) for P in polys]
    conds = [(2 * i, 2 * i + 1) for i in range(1, len(polys) // 2)]
    lower = [Fraction(0)] * (kmax + 1)
    upper = [Fraction(0)] * (kmax + 1)
    mass = {"domain": Fraction(0), "fail": Fraction(0), "irr": Fraction(0), "undet": Fraction(0)}
    nboxes = 0
    f0vars = set(pvars[0])

    def info(idx, res, lev):
        """(pinned order or None, lower bound on the order)."""
        vs = pvars[idx]
        if not vs:
            v = polys[idx](res)
            o = _ord(v, p)
            return o, o
        mu = min(lev[i] for i in vs)
        if mu == 0:
            return None, 0
        v = polys[idx](res) % p ** mu
        if v:
            o = _ord(v, p)
            return o, o
        return None, mu

    stack = [((0,) * m, (0,) * m)]
    while stack:
        res, lev = stack.pop()
        nboxes += 1
        meas = Fraction(1, p ** sum(lev))
        blocking: set[int] = set()
        # f_0 first: a box beyond kmax is irrelevant whatever else happens
        of0, lb0 = info(0, res, lev)
        if of0 is None and lb0 > kmax or of0 is not None and of0 > kmax:
            mass["irr"] += meas
            continue
        failed = False
        for fi, gi in conds:
            of, lf = info(fi, res, lev)
            og, lg = info(gi, res, lev)
            if og is not None and lf > og:
                failed = True
                break
            if of is not None and lg >= of:
                continue
            blocking.update(pvars[fi])
            blocking.update(pvars[gi])
        if failed:
            mass["fail"] += meas
            continue
        og0, lg0 = info(1, res, lev)
        if of0 is None:
            blocking.update(pvars[0])
        if og0 is None:
            blocking.update(pvars[1])
        if not blocking:
            mass["domain"] += meas
            w = meas / p ** og0
            lower[of0] += w
            upper[of0] += w
            continue
        # pin f_0 first: deep boxes of f_0 are dropped as irrelevant early
        i = min(blocking, key=lambda j: (of0 is not None or j not in f0vars, lev[j], j))
        if lev[i] >= level:
            mass["undet"] += meas
            top = meas / p ** lg0
            ks = [of0] if of0 is not None else range(lb0, kmax + 1)
            for k in ks:
                upper[k] += top
            continue
        step = p ** lev[i]
        newlev = lev[:i] + (lev[i] + 1,) + lev[i + 1:]
        for d in range(p - 1, -1, -1):
            r = list(res)
            r[i] = res[i] + d * step
            stack.append((tuple(r), newlev))
    return TruncatedLocalIntegral(p, level, kmax, tuple(lower), tuple(upper), mass["domain"],
                                  mass["fail"], mass["irr"], mass["undet"], nboxes)


@dataclass(frozen=True)
class CoefficientCheck:
    k: int
    target: Fraction
    interval: tuple[Fraction, Fraction]
    status: str          # "pass", "indeterminate" or "fail"


def verify_against(D: ConeIntegralData, p: int, kmax: int, target: PadicRationalFunction,
                   normalization: Fraction | None = None, level: int | None = None
                   ) -> list[CoefficientCheck]:
    """Compare target coefficients with the integral's intervals.

    By default the integral is divided by a_{p,0}; an explicit normalization
    multiplies it instead.
    """
    if level is None:
        level = kmax + D.m + 2
    T = truncated_integral(D, p, kmax, level)
    if normalization is None:
        intervals = T.normalized()
    else:
        c = Fraction(normalization)
        intervals = [(l * c, u * c) if c >= 0 else (u * c, l * c) for l, u in zip(T.lower, T.upper)]
    want = target.series(p, kmax)
    out = []
    for k, ((lo, hi), w) in enumerate(zip(intervals, want)):
        if lo == hi == w:
            st = "pass"
        elif lo <= w <= hi:
            st = "indeterminate"
        else:
            st = "fail"
        out.append(CoefficientCheck(k, w, (lo, hi), st))
    return out


def remark_data() -> ConeIntegralData:
    """Variables (x11, x12, x22): f_0 = x11·x22, g_0 = x11 and three conditions."""
    x11, x12, x22 = (Polynomial.var(3, i) for i in range(3))
    return ConeIntegralData(3, (x11 * x22, x11, x11, x12, x11 * x22, x12 * x12 + x11 * x11,
                                x11, x22))


# -- triangular-matrix integrands ---------------------------------------------------

def _adjugate(M: list[list[Polynomial]], nv: int) -> list[list[Polynomial]]:
    h = len(M)

    def det(A):
        n = len(A)
        if n == 0:
            return Polynomial.const(nv, 1)
        if n == 1:
            return A[0][0]
        total = Polynomial(nv)
        for j in range(n):
            if A[0][j].is_zero():
                continue
            minor = [row[:j] + row[j + 1:] for row in A[1:]]
            term = A[0][j] * det(minor)
            total = total + (term if j % 2 == 0 else -term)
        return total

    adj = [[None] * h for _ in range(h)]
    for i in range(h):
        for j in range(h):
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(M) if k != j]
            c = det(minor)
            adj[i][j] = c if (i + j) % 2 == 0 else -c
    return adj


def lattice_integrand(L: StructureConstantAlgebra, kind: ClosureKind | str
                      ) -> tuple[ConeIntegralData, list[tuple[int, int]]]:
    """Cone data over upper-triangular matrices whose rows span a closed sublattice.

    Variables are m_ij (i ≤ j) in row-major order. f_0 = ∏ m_jj and
    g_0 = ∏ m_jj^{h−j}, so the integral at s − h carries the weights
    |m_jj|^{s−j}. Conditions say each required product, written as v·adj(M),
    is divisible by det M. Identically zero conditions are dropped.
    """
    kind = ClosureKind.parse(kind)
    h = L.rank
    slots = [(i, j) for i in range(h) for j in range(i, h)]
    nv = len(slots)
    zero = Polynomial(nv)
    M = [[zero] * h for _ in range(h)]
    for idx, (i, j) in enumerate(slots):
        M[i][j] = Polynomial.var(nv, idx)
    detM = Polynomial.const(nv, 1)
    g0 = Polynomial.const(nv, 1)
    for j in range(h):
        detM = detM * M[j][j]
        for _ in range(h - 1 - j):
            g0 = g0 * M[j][j]
    adj = _adjugate(M, nv)

    def product_vec(x, y):
        out = [zero] * h
        for (a, b, k), c in L.constants.items():
            if x[a].is_zero() or y[b].is_zero():
                continue
            out[k] = out[k] + x[a] * y[b] * c
        return out

    const_unit = [[Polynomial.const(nv, int(i == j)) for j in range(h)] for i in range(h)]
    vecs = []
    sym = L.kind == "lie" or L.is_commutative
    if kind in (ClosureKind.SUBRING, ClosureKind.ORDER):
        for i in range(h):
            for j in range(i if sym else 0, h):
                vecs.append(product_vec(M[i], M[j]))
    if kind in (ClosureKind.RIGHT_IDEAL, ClosureKind.IDEAL):
        vecs += [product_vec(M[i], const_unit[j]) for i in range(h) for j in range(h)]
    if kind in (ClosureKind.LEFT_IDEAL, ClosureKind.IDEAL):
        vecs += [product_vec(const_unit[j], M[i]) for i in range(h) for j in range(h)]
    if kind is ClosureKind.ORDER:
        if L.kind != "unital":
            raise ValueError("orders only make sense in unital rings")
        vecs.append([Polynomial.const(nv, u) for u in L.identity])
    conds = []
    seen = set()
    for v in vecs:
        for k in range(h):
            g = zero
            for t in range(h):
                if not v[t].is_zero() and not adj[t][k].is_zero():
                    g = g + v[t] * adj[t][k]
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            conds.append(g)
    polys = [detM, g0]
    for g in conds:
        polys += [detM, g]
    return ConeIntegralData(nv, tuple(polys)), slots


@dataclass(frozen=True)
class ConsistencyReport:
    oracle: tuple[int, ...]
    intervals: tuple[tuple[Fraction, Fraction], ...]   # raw a_k·p^{kh}
    candidates: dict                                  # label → per-k verdict list
    matching: tuple[str, ...]
    level: int

    def summary(self) -> str:
        lines = [f"level {self.level}", "k  oracle  interval(raw·p^(kh))"]
        for k, (o, (lo, hi)) in enumerate(zip(self.oracle, self.intervals)):
            lines.append(f"{k}  {o}  [{lo}, {hi}]")
        for name, verdicts in self.candidates.items():
            lines.append(f"{name}: {' '.join(verdicts)}")
        lines.append("matching: " + (", ".join(self.matching) or "none"))
        return "\n".join(lines)


NORMALIZATIONS = {
    "(1-p^-1)^-h": lambda p, h: 1 / (1 - Fraction(1, p)) ** h,
    "(1-p^-h)^-1": lambda p, h: 1 / (1 - Fraction(1, p ** h)),
}


def oracle_consistency(L: StructureConstantAlgebra, p: int, kmax: int,
                       kind: ClosureKind | str = ClosureKind.SUBRING,
                       level: int | None = None) -> ConsistencyReport:
    """Which normalization constant turns the triangular-matrix integral into oracle counts."""
    kind = ClosureKind.parse(kind)
    h = L.rank
    D, _ = lattice_integrand(L, kind)
    if level is None:
        level = kmax + h + 2
    T = truncated_integral(D, p, kmax, level)
    oracle = tuple(local_coefficients(L, p, kmax, kind))
    raw = tuple((lo * p ** (k * h), hi * p ** (k * h))
                for k, (lo, hi) in enumerate(zip(T.lower, T.upper)))
    cands = {}
    matching = []
    for name, fn in NORMALIZATIONS.items():
        C = fn(p, h)
        verdicts = []
        for o, (lo, hi) in zip(oracle, raw):
            if lo * C == hi * C == o:
                verdicts.append("match")
            elif lo * C <= o <= hi * C:
                verdicts.append("open")
            else:
                verdicts.append("mismatch")
        cands[name] = verdicts
        if all(v == "match" for v in verdicts):
            matching.append(name)
    return ConsistencyReport(oracle, raw, cands, tuple(matching), level)
