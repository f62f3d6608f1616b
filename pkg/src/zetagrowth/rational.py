"""Exact rational functions in t = p^{-s}, with p either symbolic or fixed.

A Laurent polynomial in (t, p) is a dict {(i, j): Fraction} standing for
Σ c·t^i·p^j. Denominators are products of factors (1 − p^b t^a), stored as a
sorted tuple of (a, b) pairs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Poly = dict  # {(t_exp, p_exp): Fraction}


def poly_clean(P: Mapping) -> Poly:
    return {k: Fraction(v) for k, v in P.items() if v}


def poly_add(P: Mapping, Q: Mapping, sign: int = 1) -> Poly:
    out = dict(P)
    for k, v in Q.items():
        out[k] = out.get(k, 0) + sign * v
    return poly_clean(out)


def poly_mul(P: Mapping, Q: Mapping) -> Poly:
    out: dict = {}
    for (i1, j1), a in P.items():
        for (i2, j2), b in Q.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + a * b
    return poly_clean(out)


def factor_poly(a: int, b: int) -> Poly:
    """1 − p^b t^a."""
    return poly_add({(0, 0): Fraction(1)}, {(a, b): Fraction(1)}, -1)


def poly_at(P: Mapping, p: int) -> dict[int, Fraction]:
    """Substitute a numeric p; result is {t_exp: Fraction}."""
    out: dict[int, Fraction] = {}
    for (i, j), c in P.items():
        out[i] = out.get(i, 0) + c * Fraction(p) ** j
    return {i: c for i, c in out.items() if c}


def _divide_by_factor(P: Mapping, a: int, b: int, c=1) -> Poly | None:
    """Exact quotient P / (1 − c·p^b t^a) in the Laurent ring, or None."""
    if not P:
        return {}
    lo = min(i for i, _ in P)
    hi = max(i for i, _ in P)
    # Q(m) = P(m) + Q(m − (a, b)), processed in increasing t
    Q: dict = {}
    for i in range(lo, hi - a + 1):
        js = {j for (ii, j) in P if ii == i} | {j + b for (ii, j) in Q if ii == i - a}
        for j in js:
            v = P.get((i, j), 0) + c * Q.get((i - a, j - b), 0)
            if v:
                Q[(i, j)] = Fraction(v)
    F = {(0, 0): Fraction(1), (a, b): -Fraction(c)}
    if poly_add(poly_mul(Q, F), P, -1):
        return None
    return Q


@dataclass(frozen=True)
class PadicRationalFunction:
    """num / ∏(1 − p^b t^a).

    When `prime` is set the function is only meaningful at that prime (its
    numerator may carry coefficients already evaluated there).
    """

    num: Mapping[tuple[int, int], Fraction]
    den: tuple[tuple[int, int], ...] = ()
    prime: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "num", poly_clean(self.num))
        for a, _ in self.den:
            if a < 1:
                raise ValueError("denominator factors need a positive t-exponent")
        object.__setattr__(self, "den", tuple(sorted(self.den)))

    # -- constructors --------------------------------------------------------
    @classmethod
    def one(cls, prime: int | None = None) -> "PadicRationalFunction":
        return cls({(0, 0): Fraction(1)}, (), prime)

    @classmethod
    def from_factors(cls, num_factors: Iterable[tuple[int, int]] = (),
                     den_factors: Iterable[tuple[int, int]] = (), scale=1,
                     prime: int | None = None) -> "PadicRationalFunction":
        P: Poly = {(0, 0): Fraction(scale)}
        for a, b in num_factors:
            P = poly_mul(P, factor_poly(a, b))
        return cls(P, tuple(den_factors), prime)

    # -- arithmetic ----------------------------------------------------------
    def _join_prime(self, other: "PadicRationalFunction") -> int | None:
        if self.prime is not None and other.prime is not None and self.prime != other.prime:
            raise ValueError("functions belong to different primes")
        return self.prime if self.prime is not None else other.prime

    def __mul__(self, other: "PadicRationalFunction") -> "PadicRationalFunction":
        return PadicRationalFunction(poly_mul(self.num, other.num), self.den + other.den,
                                     self._join_prime(other)).normalized()

    def __add__(self, other: "PadicRationalFunction") -> "PadicRationalFunction":
        c1, c2 = Counter(self.den), Counter(other.den)
        common = c1 | c2
        n1 = self.num
        for f, m in (common - c1).items():
            for _ in range(m):
                n1 = poly_mul(n1, factor_poly(*f))
        n2 = other.num
        for f, m in (common - c2).items():
            for _ in range(m):
                n2 = poly_mul(n2, factor_poly(*f))
        return PadicRationalFunction(poly_add(n1, n2), tuple(common.elements()),
                                     self._join_prime(other)).normalized()

    def scaled(self, c) -> "PadicRationalFunction":
        return PadicRationalFunction({k: v * c for k, v in self.num.items()}, self.den, self.prime)

    def normalized(self) -> "PadicRationalFunction":
        """Cancel denominator factors that divide the numerator."""
        if self.prime is not None:
            num = {(i, 0): c for i, c in poly_at(self.num, self.prime).items()}
        else:
            num = dict(self.num)
        num = poly_clean(num)
        if not num:
            return PadicRationalFunction({}, (), self.prime)
        den = list(self.den)
        changed = True
        while changed and num:
            changed = False
            for f in sorted(set(den)):
                if self.prime is None:
                    q = _divide_by_factor(num, *f)
                else:
                    q = _divide_by_factor(num, f[0], 0, Fraction(self.prime) ** f[1])
                if q is not None:
                    num = q
                    den.remove(f)
                    changed = True
                    break
        return PadicRationalFunction(num, tuple(den), self.prime)

    # -- evaluation ----------------------------------------------------------
    def series(self, p: int | None = None, kmax: int = 6) -> list[Fraction]:
        """Coefficients of t^0..t^kmax at the prime p."""
        if p is None:
            p = self.prime
        if p is None:
            raise ValueError("a prime is needed to expand a symbolic function")
        if self.prime is not None and p != self.prime:
            raise ValueError(f"function is only valid at p={self.prime}")
        num = poly_at(self.num, p)
        if any(i < 0 for i in num):
            raise ValueError("numerator has negative t-exponents")
        coeffs = [Fraction(0)] * (kmax + 1)
        for i, c in num.items():
            if i <= kmax:
                coeffs[i] += c
        for a, b in self.den:
            x = Fraction(p) ** b
            # multiply by 1/(1 − x t^a): c_k += x·c_{k−a}
            for k in range(a, kmax + 1):
                coeffs[k] += x * coeffs[k - a]
        return coeffs

    def at_prime(self, p: int) -> "PadicRationalFunction":
        if self.prime is not None and self.prime != p:
            raise ValueError(f"function is only valid at p={self.prime}")
        num = {(i, 0): c for i, c in poly_at(self.num, p).items()}
        return PadicRationalFunction(num, self.den, p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PadicRationalFunction):
            return NotImplemented
        p = self.prime if self.prime is not None else other.prime
        if self.prime is not None and other.prime is not None and self.prime != other.prime:
            return False
        left = self.num
        for f in other.den:
            left = poly_mul(left, factor_poly(*f))
        right = other.num
        for f in self.den:
            right = poly_mul(right, factor_poly(*f))
        if p is None:
            return poly_add(left, right, -1) == {}
        return poly_at(left, p) == poly_at(right, p)

    def __hash__(self):
        return hash(self.den)

    def __str__(self) -> str:
        return f"({format_poly(self.num)}) / {format_den(self.den)}"


def format_poly(P: Mapping) -> str:
    if not P:
        return "0"
    parts = []
    for (i, j), c in sorted(P.items()):
        mono = []
        if j:
            mono.append("p" if j == 1 else f"p^{j}")
        if i:
            mono.append("t" if i == 1 else f"t^{i}")
        body = "*".join(mono)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


def format_den(den: Sequence[tuple[int, int]]) -> str:
    if not den:
        return "1"
    out = []
    for a, b in den:
        mono = "*".join(x for x in (("p" if b == 1 else f"p^{b}") if b else "",
                                    ("t" if a == 1 else f"t^{a}")) if x)
        out.append(f"(1 - {mono})")
    return "".join(out)


@dataclass(frozen=True)
class LocalSeries:
    p: int
    coefficients: tuple[Fraction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        if any(c < 0 for c in self.coefficients):
            raise ValueError("local coefficients must be non-negative")

    @property
    def kmax(self) -> int:
        return len(self.coefficients) - 1

    def normalized(self) -> "LocalSeries":
        a0 = self.coefficients[0]
        if a0 <= 0:
            raise ValueError("cannot normalize a series with a_0 = 0")
        return LocalSeries(self.p, tuple(c / a0 for c in self.coefficients))
