"""Closed-form Dirichlet series, local-factor fitting and the bound checks built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import StructureConstantAlgebra, multiply, quadratic_integers, unit
from .numtheory import (SplittingType, chi4, divisors, field_discriminant, isprime,
                        kronecker_symbol, lattice_count, splitting_type)
from .rational import LocalSeries, PadicRationalFunction, factor_poly, poly_mul
from .sublattices import ClosureKind, iter_closed, local_coefficients

FACTOR_KINDS = ("zeta", "dedekind", "L4")


@dataclass(frozen=True)
class ZetaFactor:
    """ζ(a·s − b), ζ_K(a·s − b) for K = Q(√k), or L(χ_4, a·s − b), raised to `power`."""

    kind: str
    a: int
    b: int
    power: int = 1
    k: int | None = None

    def __post_init__(self):
        if self.kind not in FACTOR_KINDS:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.a < 1:
            raise ValueError("factor needs a ≥ 1")
        if (self.kind == "dedekind") != (self.k is not None):
            raise ValueError("Dedekind factors (and only they) carry a field parameter k")
        if self.k is not None:
            field_discriminant(self.k)

    def base_coefficient(self, m: int) -> Fraction:
        """Coefficient at n = m^a of the un-powered factor."""
        w = Fraction(m) ** self.b
        if self.kind == "zeta":
            return w
        if self.kind == "L4":
            return chi4(m) * w
        D = field_discriminant(self.k)
        return sum(kronecker_symbol(D, d) for d in divisors(m)) * w

    def local_factor(self, p: int) -> PadicRationalFunction:
        a, b = self.a, self.b
        if self.kind == "zeta":
            F = PadicRationalFunction.from_factors([], [(a, b)], prime=p)
        elif self.kind == "L4":
            c = chi4(p)
            if c == 0:
                F = PadicRationalFunction.one(p)
            elif c == 1:
                F = PadicRationalFunction.from_factors([], [(a, b)], prime=p)
            else:
                F = PadicRationalFunction.from_factors([(a, b)], [(2 * a, 2 * b)], prime=p)
        else:
            st = splitting_type(self.k, p)
            if st is SplittingType.SPLIT:
                F = PadicRationalFunction.from_factors([], [(a, b), (a, b)], prime=p)
            elif st is SplittingType.INERT:
                F = PadicRationalFunction.from_factors([], [(2 * a, 2 * b)], prime=p)
            else:
                F = PadicRationalFunction.from_factors([], [(a, b)], prime=p)
        if self.power < 0:
            # F is 1/D or N/D with N a single factor; swap the roles
            F = PadicRationalFunction(_den_poly(F.den), _num_as_factors(F), p)
        out = PadicRationalFunction.one(p)
        for _ in range(abs(self.power)):
            out = out * F
        return out

    def __str__(self) -> str:
        name = {"zeta": "zeta", "L4": "L4", "dedekind": f"zetaK[{self.k}]"}[self.kind]
        arg = ("s" if self.a == 1 else f"{self.a}s")
        if self.b > 0:
            arg += f"-{self.b}"
        elif self.b < 0:
            arg += f"+{-self.b}"
        pw = "" if self.power == 1 else f"^{self.power}"
        return f"{name}({arg}){pw}"


def _den_poly(den) -> dict:
    P = {(0, 0): Fraction(1)}
    for f in den:
        P = poly_mul(P, factor_poly(*f))
    return P


def _num_as_factors(F: PadicRationalFunction) -> tuple:
    """Numerators produced by local_factor are 1 or a single (1 − p^b t^a) factor."""
    if F.num == {(0, 0): Fraction(1)}:
        return ()
    for (i, j) in F.num:
        if i > 0:
            a, b = i, j
            if F.num == factor_poly(a, b):
                return ((a, b),)
    raise ValueError("cannot invert a factor with a general numerator")


@dataclass(frozen=True)
class ZetaTerm:
    factors: tuple[ZetaFactor, ...]
    coefficient: Fraction = Fraction(1)
    shift: int = 1          # the scalar c in c^{-s}

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.shift < 1:
            raise ValueError("scalar c in c^{-s} must be a positive integer")


@dataclass(frozen=True)
class ZetaClosedForm:
    terms: tuple[ZetaTerm, ...]
    name: str = ""

    @classmethod
    def product(cls, *factors: ZetaFactor, name: str = "") -> "ZetaClosedForm":
        return cls((ZetaTerm(tuple(factors)),), name)

    @property
    def is_multiplicative(self) -> bool:
        return (len(self.terms) == 1 and self.terms[0].shift == 1
                and self.terms[0].coefficient == 1)

    def __str__(self) -> str:
        parts = []
        for t in self.terms:
            s = "*".join(str(f) for f in t.factors) or "1"
            if t.shift != 1:
                s = f"{t.shift}^(-s)*" + s
            if t.coefficient != 1:
                s = f"{t.coefficient}*" + s
            parts.append(s)
        return " + ".join(parts)


def zeta_shifts(h: int) -> ZetaClosedForm:
    """ζ(s)ζ(s−1)···ζ(s−h+1), the subgroup zeta function of Z^h."""
    return ZetaClosedForm.product(*(ZetaFactor("zeta", 1, i) for i in range(h)), name=f"Z^{h}")


# -- coefficient arithmetic ------------------------------------------------------

def dirichlet_mul(f: Sequence, g: Sequence) -> list:
    n = len(f) - 1
    out = [Fraction(0)] * (n + 1)
    for i in range(1, n + 1):
        if f[i]:
            for j in range(1, n // i + 1):
                if g[j]:
                    out[i * j] += f[i] * g[j]
    return out


def dirichlet_inverse(f: Sequence) -> list:
    n = len(f) - 1
    if f[1] == 0:
        raise ZeroDivisionError("series with a_1 = 0 has no Dirichlet inverse")
    g = [Fraction(0)] * (n + 1)
    g[1] = Fraction(1) / f[1]
    for m in range(2, n + 1):
        s = sum(f[m // d] * g[d] for d in divisors(m) if d < m)
        g[m] = -s / f[1]
    return g


def _factor_series(F: ZetaFactor, nmax: int) -> list:
    base = [Fraction(0)] * (nmax + 1)
    m = 1
    while m ** F.a <= nmax:
        base[m ** F.a] = F.base_coefficient(m)
        m += 1
    if F.power == 0:
        one = [Fraction(0)] * (nmax + 1)
        one[1] = Fraction(1)
        return one
    if F.power < 0:
        base = dirichlet_inverse(base)
    out = base
    for _ in range(abs(F.power) - 1):
        out = dirichlet_mul(out, base)
    return out


def closed_form_coefficients(F: ZetaClosedForm, nmax: int) -> list[Fraction]:
    """Exact a_1..a_nmax (returned as a list indexed from 1; entry 0 is unused)."""
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    total = [Fraction(0)] * (nmax + 1)
    for term in F.terms:
        series = [Fraction(0)] * (nmax + 1)
        series[1] = Fraction(1)
        for fac in term.factors:
            series = dirichlet_mul(series, _factor_series(fac, nmax))
        c = term.shift
        for n in range(1, nmax // c + 1):
            total[n * c] += term.coefficient * series[n]
    return total


def closed_form_local(F: ZetaClosedForm, p: int) -> PadicRationalFunction:
    if not F.is_multiplicative:
        raise ValueError("closed form is not a pure Euler product")
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    out = PadicRationalFunction.one(p)
    for fac in F.terms[0].factors:
        out = out * fac.local_factor(p)
    return out


def abscissa_of_closed_form(F: ZetaClosedForm) -> Fraction:
    """Largest pole-type edge (b+1)/a over positively powered factors, maximized over terms."""
    best = None
    for term in F.terms:
        for fac in term.factors:
            if fac.power > 0:
                x = Fraction(fac.b + 1, fac.a)
                best = x if best is None else max(best, x)
    if best is None:
        raise ValueError("closed form has no positively powered factor")
    return best


# -- fitting ----------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    function: PadicRationalFunction | None
    certified: bool
    held_out: int
    message: str

    def report(self) -> str:
        lines = [f"fit: {self.message}"]
        if self.function is not None:
            lines.append(f"function: {self.function}")
        lines.append(f"held-out coefficients checked: {self.held_out}")
        lines.append(f"certified: {'yes' if self.certified else 'no'}")
        return "\n".join(lines)


class FitError(ValueError):
    pass


def fit_rational_local(S: LocalSeries, denom_shape: Sequence[tuple[int, int]],
                       num_degree_cap: int, margin: int = 4) -> FitResult:
    """Numerator P = S·∏(1 − p^b t^a) truncated at the cap; coefficients cap+1..kmax must vanish.

    Raises FitError when the series is too short to certify, or when no
    numerator within the cap reproduces the series.
    """
    need = num_degree_cap + sum(a for a, _ in denom_shape) + margin
    if S.kmax < need:
        raise FitError(f"under-determined: need kmax ≥ {need}, have {S.kmax}")
    p = S.p
    coeffs = list(S.coefficients)
    Q = [Fraction(0)] * (S.kmax + 1)
    Q[0] = Fraction(1)
    for a, b in denom_shape:
        x = Fraction(p) ** b
        for k in range(S.kmax, a - 1, -1):
            Q[k] -= x * Q[k - a]
    P = [sum(coeffs[i] * Q[k - i] for i in range(k + 1)) for k in range(S.kmax + 1)]
    bad = [k for k in range(num_degree_cap + 1, S.kmax + 1) if P[k] != 0]
    if bad:
        raise FitError(f"no exact fit: coefficient t^{bad[0]} of series×denominator is {P[bad[0]]}")
    num = {(k, 0): P[k] for k in range(num_degree_cap + 1) if P[k]}
    F = PadicRationalFunction(num, tuple(denom_shape), p).normalized()
    held = S.kmax - num_degree_cap
    # round trip through expansion as an independent confirmation
    ok = F.series(p, S.kmax) == coeffs
    return FitResult(F, ok, held, "exact numerator found" if ok else "round trip failed")


def compare_locals(L1: StructureConstantAlgebra, L2: StructureConstantAlgebra, p: int,
                   kmax: int, kind: ClosureKind | str = ClosureKind.SUBRING) -> bool:
    if L1.rank != L2.rank:
        raise ValueError("ranks differ")
    return local_coefficients(L1, p, kmax, kind) == local_coefficients(L2, p, kmax, kind)


# -- bound checks ---------------------------------------------------------------

@dataclass(frozen=True)
class BoundCheck:
    label: str
    value: Fraction
    bound: Fraction
    passed: bool


def theoremA_bound_check(h: int, c: int, alpha_le, alpha_ideal) -> list[BoundCheck]:
    """Upper bounds for the subring and ideal abscissae of a class-c nilpotent Lie ring."""
    if c < 2:
        raise ValueError("nilpotency class must be at least 2")
    alpha_le, alpha_ideal = Fraction(alpha_le), Fraction(alpha_ideal)
    sub = Fraction(2 * h - 1, 2) if c == 2 else h - Fraction(1, c - 1)
    return [BoundCheck("subring", alpha_le, sub, alpha_le <= sub),
            BoundCheck("ideal", alpha_ideal, Fraction(h - 1), alpha_ideal <= h - 1)]


@dataclass(frozen=True)
class PartialSumReport:
    witness: float
    passed: bool
    ratios: tuple   # (N, ratio) samples at powers of two and at Nmax


def partial_sum_bound_check(e: int, delta, Nmax: int) -> PartialSumReport:
    """max_N (Σ_{n≤N} a_n(Z^e)/n^{e−δ}) / N^δ over N ≤ Nmax.

    Sums are exact when e − δ is an integer and floating point otherwise.
    The run passes when the dyadic maxima of the ratio level off: the last
    doubling raises the maximum by under 2% and by less than the doubling
    before it.
    """
    if not 0 < delta < e:
        raise ValueError("need 0 < delta < e")
    if Nmax < 8:
        raise ValueError("Nmax too small to judge boundedness")
    exact = float(e - delta).is_integer()
    expo = e - delta
    S = Fraction(0) if exact else 0.0
    best = 0.0
    block_max: list[float] = []
    samples = []
    nxt = 1
    cur = 0.0
    for N in range(1, Nmax + 1):
        a = lattice_count(e, N)
        if exact:
            S += Fraction(a, N ** int(expo))
            ratio = float(S) / N ** float(delta)
        else:
            S += a / N ** float(expo)
            ratio = S / N ** float(delta)
        best = max(best, ratio)
        cur = max(cur, ratio)
        if N == nxt or N == Nmax:
            block_max.append(cur)
            samples.append((N, ratio))
            cur = 0.0
            nxt *= 2
    env = [max(block_max[: i + 1]) for i in range(len(block_max))]
    inc = [(env[i + 1] - env[i]) / env[i] for i in range(len(env) - 1)]
    passed = len(inc) >= 2 and inc[-1] < 0.02 and inc[-1] <= inc[-2] + 1e-12
    return PartialSumReport(best, passed, tuple(samples))


# -- orders and discriminants --------------------------------------------------

def trace_form_discriminant(O: StructureConstantAlgebra, rows) -> int:
    """det(Tr(b_i b_j)) for a sublattice basis of the commutative ring O."""
    from .intlinalg import det
    h = O.rank

    def trace(x):
        return sum(multiply(O, x, unit(h, k))[k] for k in range(h))

    G = [[trace(multiply(O, list(bi), list(bj))) for bj in rows] for bi in rows]
    return det(G)


@dataclass(frozen=True)
class OrderCensus:
    k: int
    X: int
    N_K: int
    eta: dict            # |disc| → number of orders, from trace forms
    predicted: dict      # |disc| → a_f(order) at |disc| = f²·|d_K|
    consistent: bool


def order_discriminant_census(k: int, X: int) -> OrderCensus:
    """Orders of Q(√k) with |disc| ≤ X, counted directly and through the index series."""
    O = quadratic_integers(k)
    dK = abs(field_discriminant(k))
    eta: dict[int, int] = {}
    predicted: dict[int, int] = {}
    f = 1
    while f * f * dK <= X:
        n_orders = 0
        for M in iter_closed(O, f, ClosureKind.ORDER):
            D = abs(trace_form_discriminant(O, M.rows))
            eta[D] = eta.get(D, 0) + 1
            n_orders += 1
        predicted[f * f * dK] = n_orders
        f += 1
    consistent = eta == {d: c for d, c in predicted.items() if c}
    return OrderCensus(k, X, sum(eta.values()), eta, predicted, consistent)
