"""Reference rings with known zeta functions, and the agreement checks run on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (StructureConstantAlgebra, abelian, central_heisenberg_product,
                      direct_product, gaussian_integers, heisenberg, integers_ring,
                      quadratic_integers, tensor_with_order)
from .dirichlet import (ZetaClosedForm, ZetaFactor, ZetaTerm, abscissa_of_closed_form,
                        closed_form_coefficients, closed_form_local, zeta_shifts)
from .numtheory import isprime
from .sublattices import ClosureKind, count

DEPTHS = {"quick": 30, "standard": 100, "full": 200}


@dataclass(frozen=True)
class CatalogEntry:
    """A ring, a closed form, or both.

    `closed_forms` and `abscissae` are keyed by closure kind value. Abscissae
    listed explicitly are literature values used where no closed form is
    stored; the rest are read off the closed forms.
    """

    name: str
    algebra: StructureConstantAlgebra | None = None
    closed_forms: dict = field(default_factory=dict)
    abscissae: dict = field(default_factory=dict)
    note: str = ""

    def abscissa(self, kind: ClosureKind | str) -> Fraction | None:
        kind = ClosureKind.parse(kind).value
        if kind in self.abscissae:
            return Fraction(self.abscissae[kind])
        if kind in self.closed_forms:
            return abscissa_of_closed_form(self.closed_forms[kind])
        return None


def _z(a, b, power=1):
    return ZetaFactor("zeta", a, b, power)


def _dedekind(k):
    return ZetaClosedForm.product(ZetaFactor("dedekind", 1, 0, k=k), name=f"zetaK[{k}]")


_SUB, _IDEAL, _ORDER = (ClosureKind.SUBRING.value, ClosureKind.IDEAL.value,
                        ClosureKind.ORDER.value)


def _build() -> dict[str, CatalogEntry]:
    out: dict[str, CatalogEntry] = {}

    def add(e: CatalogEntry):
        out[e.name] = e

    for h in range(1, 5):
        Z = zeta_shifts(h)
        add(CatalogEntry(f"Z^{h}", abelian(h), {_SUB: Z, _IDEAL: Z},
                         note="free abelian; every sublattice is an ideal"))
    H = heisenberg()
    add(CatalogEntry(
        "H", H,
        {_SUB: ZetaClosedForm.product(_z(1, 0), _z(1, 1), _z(2, 2), _z(2, 3), _z(3, 3, -1),
                                      name="H subring"),
         _IDEAL: ZetaClosedForm.product(_z(1, 0), _z(1, 1), _z(3, 2), name="H ideal")},
        note="classical Heisenberg formulas, rechecked against the enumerator"))
    add(CatalogEntry("G(1,0)", central_heisenberg_product(1, 0), abscissae={_IDEAL: 2},
                     note="ideal abscissa h-1 for the central Heisenberg products"))
    add(CatalogEntry("HxZ", direct_product(H, abelian(1)), note="class 2, rank 4"))
    add(CatalogEntry("HxH", direct_product(H, H), abscissae={_SUB: 4, _IDEAL: 4},
                     note="literature abscissa 4 for both kinds"))
    for k in (-1, 2, 5):
        add(CatalogEntry(f"L{k}", tensor_with_order(H, quadratic_integers(k)),
                         abscissae={_SUB: 4, _IDEAL: 4},
                         note="base change of H; same abscissae as HxH"))
    one = ZetaClosedForm.product(_z(1, 0), name="zeta")
    add(CatalogEntry("Zring", integers_ring(),
                     {_SUB: one, _IDEAL: one, _ORDER: ZetaClosedForm.product(name="1")}))
    for k, alg in ((-1, gaussian_integers()), (5, quadratic_integers(5)),
                   (-3, quadratic_integers(-3))):
        add(CatalogEntry(f"O(Q(sqrt{k}))", alg, {_IDEAL: _dedekind(k), _ORDER: one},
                         note="ideals: Dedekind zeta; orders: Z + fO_K for each f"))
    add(CatalogEntry(
        "virtually-abelian",
        closed_forms={_SUB: ZetaClosedForm((ZetaTerm((_z(1, 0),), shift=2),
                                            ZetaTerm((_z(1, 1),))),
                                           name="2^-s zeta(s) + zeta(s-1)")},
        note="subgroup zeta function of a virtually abelian group; closed form only"))
    add(CatalogEntry(
        "cone-remark",
        closed_forms={_SUB: ZetaClosedForm.product(_z(1, -2), ZetaFactor("L4", 1, -2),
                                                   name="zeta(s+2) L4(s+2)")},
        note="cone integral with no ring behind it; closed form only"))
    return out


CATALOG: dict[str, CatalogEntry] = _build()


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None


@dataclass(frozen=True)
class CatalogCheck:
    entry: str
    kind: str
    check: str
    nmax: int
    passed: bool
    detail: str = ""


def _euler_check(F: ZetaClosedForm, nmax: int) -> tuple[bool, str]:
    """Coefficients of the global product agree with the product of local expansions."""
    coeffs = closed_form_coefficients(F, nmax)
    local: dict[int, list] = {}
    for p in (q for q in range(2, nmax + 1) if isprime(q)):
        kmax = 0
        while p ** (kmax + 1) <= nmax:
            kmax += 1
        local[p] = closed_form_local(F, p).series(p, kmax)
    for n in range(1, nmax + 1):
        val = Fraction(1)
        m = n
        for p, ser in local.items():
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            val *= ser[k]
            if m == 1:
                break
        if val != coeffs[n]:
            return False, f"n={n}: global {coeffs[n]} vs local product {val}"
    return True, ""


def verify_catalog(depth: str | int = "standard", names=None) -> list[CatalogCheck]:
    nmax = DEPTHS[depth] if isinstance(depth, str) else int(depth)
    results = []
    for name in names or CATALOG:
        e = get_entry(name)
        for kind, F in sorted(e.closed_forms.items()):
            if F.is_multiplicative and F.terms[0].factors:
                ok, detail = _euler_check(F, nmax)
                results.append(CatalogCheck(name, kind, "euler", nmax, ok, detail))
            if e.algebra is None:
                continue
            want = closed_form_coefficients(F, nmax)
            bad = next((n for n in range(1, nmax + 1)
                        if count(e.algebra, n, kind) != want[n]), None)
            detail = "" if bad is None else (
                f"n={bad}: oracle {count(e.algebra, bad, kind)} vs closed form {want[bad]}")
            results.append(CatalogCheck(name, kind, "oracle", nmax, bad is None, detail))
    return results
