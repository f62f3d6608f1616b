"""`zg`: batch verification runs over rings, cone data and cone integrals.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 on usage or parse errors. Failures are listed on stderr, one per line,
as tab-separated `FAIL<TAB>check<TAB>detail` records.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from .algebra import AlgebraError, StructureConstantAlgebra, nilpotency_class
from .cones import (cone_from_data, coordinate_counts, extremal_rays, good_prime_factor,
                    monomial_local_factor, ray_invariants, simplicial_decomposition,
                    stanley_series)
from .dirichlet import (FitError, closed_form_local, fit_rational_local,
                        order_discriminant_census, partial_sum_bound_check,
                        theoremA_bound_check)
from .formats import ParseError, emit_ring, load
from .numtheory import isprime, split_primes
from .padic import remark_data, truncated_integral, verify_against
from .rational import LocalSeries
from .sublattices import ClosureKind, count, local_coefficients

COUNT_HEADER = ("n", "count", "kind", "ring")
LOCAL_HEADER = ("p", "k", "coefficient", "source")


@dataclass(frozen=True)
class Defaults:
    """Flag defaults; pass a modified copy to build_parser to change them."""

    nmax: int = 100
    kmax: int = 3
    margin: int = 4
    split_count: int = 2
    catalog_depth: str = "standard"
    stanley_N: int = 20
    partial_sum_N: int = 5000
    census_X: int = 200
    census_fmax: int = 40


class UsageError(Exception):
    pass


class Run:
    """Collects outputs and failures of one command."""

    def __init__(self, out_dir: str | None):
        self.out = Path(out_dir) if out_dir else None
        self.failures: list[tuple[str, str]] = []

    def fail(self, check: str, detail: str = "") -> None:
        self.failures.append((check, detail))

    def check(self, ok: bool, check: str, detail: str = "") -> bool:
        if not ok:
            self.fail(check, detail)
        return ok

    def emit(self, filename: str, text: str) -> None:
        if self.out is None:
            sys.stdout.write(text)
            return
        self.out.mkdir(parents=True, exist_ok=True)
        (self.out / filename).write_text(text)
        print(self.out / filename)

    def finish(self) -> int:
        for check, detail in self.failures:
            print(f"FAIL\t{check}\t{detail}", file=sys.stderr)
        return 1 if self.failures else 0


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _workers() -> int:
    raw = os.environ.get("ZG_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"ZG_WORKERS must be an integer, got {raw!r}") from None
    return max(1, n)


# -- resolving inputs -------------------------------------------------------------

def _ring(args) -> tuple[StructureConstantAlgebra, str]:
    if args.ring and args.catalog:
        raise UsageError("give either --ring or --catalog, not both")
    if args.ring:
        L = load(args.ring)
        if not isinstance(L, StructureConstantAlgebra):
            raise UsageError(f"{args.ring} is not a ring file")
        return L, L.name or Path(args.ring).stem
    if args.catalog:
        e = cat.get_entry(args.catalog)
        if e.algebra is None:
            raise UsageError(f"catalog entry {args.catalog!r} has no ring")
        return e.algebra, e.name
    raise UsageError("a ring is required (--ring FILE or --catalog NAME)")


def _entries_for(L: StructureConstantAlgebra) -> list:
    return [e for e in cat.CATALOG.values() if e.algebra == L]


def _closed_form(L, kind: ClosureKind):
    for e in _entries_for(L):
        if kind.value in e.closed_forms:
            return e.closed_forms[kind.value]
    return None


def _primes(args) -> list[int]:
    ps = list(args.p or [])
    if getattr(args, "split_field", None) is not None:
        ps += split_primes(args.split_field, args.split_count)
    if not ps:
        raise UsageError("at least one prime is required (--p)")
    for p in ps:
        if not isprime(p):
            raise UsageError(f"{p} is not prime")
    return ps


def _kinds(value: str) -> list[ClosureKind]:
    if value == "both":
        return [ClosureKind.SUBRING, ClosureKind.IDEAL]
    return [ClosureKind.parse(value)]


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


# -- commands -----------------------------------------------------------------------

def _count_one(job):
    L, n, kind, method = job
    return count(L, n, kind, method)


def cmd_count(args, run: Run) -> None:
    L, name = _ring(args)
    rows = []
    for kind in _kinds(args.kind):
        jobs = [(L, n, kind, args.method) for n in range(1, args.nmax + 1)]
        workers = _workers()
        if workers > 1:
            with ProcessPoolExecutor(workers) as ex:
                values = list(ex.map(_count_one, jobs, chunksize=8))
        else:
            values = [_count_one(j) for j in jobs]
        rows += [(n, v, kind.value, name) for n, v in zip(range(1, args.nmax + 1), values)]
    run.emit(f"counts_{name}.csv", _csv(COUNT_HEADER, rows))


def cmd_local(args, run: Run) -> None:
    L, name = _ring(args)
    kind = ClosureKind.parse(args.kind)
    F = _closed_form(L, kind) if args.source != "oracle" else None
    if args.source != "oracle" and F is None:
        raise UsageError(f"no closed form known for {name} ({kind.value})")
    rows = []
    for p in _primes(args):
        oracle = local_coefficients(L, p, args.kmax, kind) if args.source != "closed-form" else None
        closed = closed_form_local(F, p).series(p, args.kmax) if F is not None else None
        for k in range(args.kmax + 1):
            if oracle is not None:
                rows.append((p, k, oracle[k], "oracle"))
            if closed is not None:
                rows.append((p, k, _frac(closed[k]), "closed-form"))
        if oracle is not None and closed is not None:
            run.check(list(oracle) == list(closed), f"local:{name}:p={p}",
                      f"oracle {list(oracle)} vs closed form {[_frac(c) for c in closed]}")
    run.emit(f"local_{name}.csv", _csv(LOCAL_HEADER, rows))


def _parse_shape(text: str) -> list[tuple[int, int]]:
    try:
        pairs = [tuple(int(x) for x in item.split(",")) for item in text.split()]
    except ValueError:
        raise UsageError(f"bad denominator shape {text!r}") from None
    if not pairs or any(len(q) != 2 or q[0] < 1 for q in pairs):
        raise UsageError("denominator shape is a list of 'a,b' pairs with a ≥ 1")
    return pairs


def cmd_fit(args, run: Run) -> None:
    L, name = _ring(args)
    kind = ClosureKind.parse(args.kind)
    shape = _parse_shape(args.denom)
    lines = []
    rows = []
    for p in _primes(args):
        coeffs = local_coefficients(L, p, args.kmax, kind)
        lines.append(f"[{name} {kind.value} p={p} kmax={args.kmax}]")
        lines.append("denominator shape: " + " ".join(f"({a},{b})" for a, b in shape))
        lines.append(f"numerator degree cap: {args.num_cap}; margin: {args.margin}")
        try:
            res = fit_rational_local(LocalSeries(p, tuple(coeffs)), shape, args.num_cap,
                                     args.margin)
        except FitError as exc:
            lines.append(f"fit: {exc}")
            run.fail(f"fit:{name}:p={p}", str(exc))
            continue
        lines.append(res.report())
        run.check(res.certified, f"fit:{name}:p={p}", res.message)
        for k, c in enumerate(res.function.series(p, args.kmax)):
            rows.append((p, k, _frac(c), "fit"))
        F = _closed_form(L, kind)
        if F is not None:
            same = closed_form_local(F, p) == res.function
            lines.append(f"closed form {F}: {'agrees' if same else 'DISAGREES'}")
            run.check(same, f"fit-vs-closed-form:{name}:p={p}")
        lines.append("")
    run.emit(f"fit_{name}.txt", "\n".join(lines) + "\n")
    if rows:
        run.emit(f"fit_{name}.csv", _csv(LOCAL_HEADER, rows))


def _ring_by_ref(ref: str) -> tuple[StructureConstantAlgebra, str]:
    if ref.endswith(".ring"):
        L = load(ref)
        return L, L.name or Path(ref).stem
    e = cat.get_entry(ref)
    if e.algebra is None:
        raise UsageError(f"catalog entry {ref!r} has no ring")
    return e.algebra, e.name


def cmd_compare(args, run: Run) -> None:
    (L1, n1), (L2, n2) = _ring_by_ref(args.left), _ring_by_ref(args.right)
    if L1.rank != L2.rank:
        raise UsageError("rings of different rank")
    lines = ["p,k,kind," + n1 + "," + n2 + ",status"]
    for kind in _kinds(args.kind):
        for p in _primes(args):
            a = local_coefficients(L1, p, args.kmax, kind)
            b = local_coefficients(L2, p, args.kmax, kind)
            for k in range(args.kmax + 1):
                ok = a[k] == b[k]
                lines.append(f"{p},{k},{kind.value},{a[k]},{b[k]},{'equal' if ok else 'differ'}")
            run.check(a == b, f"compare:{kind.value}:p={p}", f"{list(a)} vs {list(b)}")
    run.emit(f"compare_{n1}_{n2}.csv", "\n".join(lines) + "\n")


def cmd_cone(args, run: Run) -> None:
    D = load(args.cone)
    cone = cone_from_data(D)
    rays = extremal_rays(cone)
    inv = ray_invariants(rays, D)
    dec = simplicial_decomposition(cone, rays, reverse=args.reverse)
    lines = [f"cone in R^{D.m} with {D.l} condition(s)",
             "inequalities (c·u ≥ 0):"]
    lines += ["  " + " ".join(map(str, row)) for row in cone.inequalities]
    lines.append("rays:")
    for e, a, b in zip(rays, inv.A, inv.B):
        lines.append(f"  {e}  A={a}  B={b}")
    lines.append(f"alpha_D: {inv.alpha if inv.alpha is not None else 'undefined (all A = 0)'}")
    lines.append("pieces (M ; I), 1-based:")
    for pc in dec.pieces:
        lines.append(f"  {{{','.join(str(j + 1) for j in pc.M)}}} ; "
                     f"{{{','.join(str(i + 1) for i in sorted(pc.I))}}}")
    counts = [load(f) for f in (args.grc or [])]
    counts += [coordinate_counts(D.m, p) for p in (args.p or [])]
    for G in counts:
        gp = good_prime_factor(dec, G, D)
        lines.append(f"good-prime factor p={G.p}: {gp}")
        if args.p and G.p in args.p:
            try:
                ml = monomial_local_factor(D, G.p)
            except ValueError as exc:
                run.fail(f"monomial:p={G.p}", str(exc))
                continue
            same = ml == gp
            lines.append(f"monomial route p={G.p}: {ml} ({'agrees' if same else 'DISAGREES'})")
            run.check(same, f"cone-routes:p={G.p}", f"{gp} vs {ml}")
    run.emit(f"cone_{Path(args.cone).stem}.txt", "\n".join(lines) + "\n")


def _int_rows(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError:
        raise UsageError(f"bad integer rows {text!r}") from None


def cmd_stanley(args, run: Run) -> None:
    if args.cone:
        D = load(args.cone)
        Phi = [[b - a for a, b in zip(D.f[j], D.g[j])] for j in range(1, D.l + 1)] or [[0] * D.m]
        v = [0] * len(Phi)
    elif args.phi:
        Phi = _int_rows(args.phi)
        v = _int_rows(args.v)[0] if args.v else [0] * len(Phi)
    else:
        raise UsageError("need --cone FILE or --phi ROWS")
    if len({len(r) for r in Phi}) != 1 or len(v) != len(Phi):
        raise UsageError("Φ rows must have equal length and v one entry per row")
    res = stanley_series(Phi, v, args.N)
    lines = [f"rays: {list(res.rays)}",
             f"denominator degree: {res.denominator_degree}",
             f"lattice points of degree ≤ {args.N}: {len(res.series)}",
             f"exact through degree {res.exact_bound}; numerator degree {res.numerator_degree}",
             "numerator: " + (" + ".join(f"{c}*X^{k}" for k, c in sorted(res.numerator.items()))
                              or "0"),
             f"certified: {'yes' if res.certified else 'no'}"]
    run.check(res.certified, "stanley", "series × denominator not certified polynomial")
    run.emit("stanley.txt", "\n".join(lines) + "\n")


def cmd_integrate(args, run: Run) -> None:
    if args.cint:
        D = load(args.cint)
        label = Path(args.cint).stem
    else:
        D, label = remark_data(), "remark"
    level = args.depth_cap if args.depth_cap is not None else args.kmax + D.m + 2
    F = cat.get_entry(args.target).closed_forms["subring"] if args.target else None
    rows = []
    for p in _primes(args):
        if F is not None:
            checks = verify_against(D, p, args.kmax, closed_form_local(F, p), level=level)
            for c in checks:
                lo, hi = c.interval
                rows.append((p, c.k, _frac(lo) if lo == hi else f"{_frac(lo)}..{_frac(hi)}",
                             "integral"))
                rows.append((p, c.k, _frac(c.target), "closed-form"))
                run.check(c.status == "pass", f"integrate:p={p}:k={c.k}",
                          f"{c.status}: interval [{_frac(lo)}, {_frac(hi)}] target {_frac(c.target)}")
        else:
            T = truncated_integral(D, p, args.kmax, level)
            for k, (lo, hi) in enumerate(zip(T.lower, T.upper)):
                rows.append((p, k, _frac(lo) if lo == hi else f"{_frac(lo)}..{_frac(hi)}",
                             "integral"))
            run.check(T.pinned, f"integrate:p={p}", "intervals not pinned at this depth cap")
    run.emit(f"integrate_{label}.csv", _csv(LOCAL_HEADER, rows))


def cmd_census(args, run: Run) -> None:
    from .algebra import quadratic_integers
    lines = []
    for k in args.k:
        O = quadratic_integers(k)
        bad = [f for f in range(1, args.fmax + 1) if count(O, f, ClosureKind.ORDER) != 1]
        run.check(not bad, f"orders:k={k}", f"a_f != 1 at f = {bad[:5]}")
        C = order_discriminant_census(k, args.X)
        lines.append(f"Q(sqrt{k}): one order per index f ≤ {args.fmax}: {'yes' if not bad else 'no'}")
        lines.append(f"  orders with |disc| ≤ {args.X}: {C.N_K}")
        lines.append("  |disc|: " + ", ".join(f"{d}:{c}" for d, c in sorted(C.eta.items())))
        lines.append(f"  matches index series at 2s: {'yes' if C.consistent else 'no'}")
        run.check(C.consistent, f"census:k={k}")
    run.emit("census.txt", "\n".join(lines) + "\n")


def cmd_verify_catalog(args, run: Run) -> None:
    depth = int(args.depth) if args.depth.isdigit() else args.depth
    if isinstance(depth, str) and depth not in cat.DEPTHS:
        raise UsageError(f"depth must be one of {', '.join(cat.DEPTHS)} or an integer")
    rows = []
    for r in cat.verify_catalog(depth):
        rows.append((r.entry, r.kind, r.check, r.nmax, "pass" if r.passed else "fail", r.detail))
        run.check(r.passed, f"catalog:{r.entry}:{r.kind}:{r.check}", r.detail)
    run.emit("catalog.csv", _csv(("entry", "kind", "check", "nmax", "status", "detail"), rows))


def cmd_bounds(args, run: Run) -> None:
    lines = []
    if args.ring or args.catalog:
        L, name = _ring(args)
        if L.kind != "lie":
            raise UsageError("upper bounds apply to nilpotent Lie rings")
        try:
            c = nilpotency_class(L)
        except AlgebraError as exc:
            raise UsageError(str(exc)) from None
        alpha = {}
        for e in _entries_for(L) + ([cat.get_entry(args.catalog)] if args.catalog else []):
            for kind in ("subring", "two-sided-ideal"):
                a = e.abscissa(kind)
                if a is not None:
                    alpha.setdefault(kind, a)
        if c < 2:
            lines.append(f"{name}: abelian; both abscissae equal h = {L.rank}")
        elif len(alpha) < 2:
            run.fail(f"bounds:{name}", "no known abscissae for this ring")
        else:
            lines.append(f"{name}: h={L.rank}, class {c}")
            for b in theoremA_bound_check(L.rank, c, alpha["subring"], alpha["two-sided-ideal"]):
                lines.append(f"  {b.label}: alpha = {b.value} ≤ {b.bound}: "
                             f"{'pass' if b.passed else 'FAIL'}")
                run.check(b.passed, f"bounds:{name}:{b.label}", f"{b.value} > {b.bound}")
    if args.partial_sum:
        e, delta = args.partial_sum
        delta = Fraction(delta)
        if delta.denominator == 1:
            delta = int(delta)
        R = partial_sum_bound_check(int(e), delta, args.N)
        lines.append(f"partial sums Z^{int(e)}, delta={delta}, N ≤ {args.N}: "
                     f"witness {R.witness:.6f} ({'bounded' if R.passed else 'not settled'})")
        for N, ratio in R.ratios:
            lines.append(f"  N={N}: {ratio:.6f}")
        run.check(R.passed, "partial-sums", f"witness {R.witness}")
    if not lines and not run.failures:
        raise UsageError("nothing to check: give a ring or --partial-sum")
    run.emit("bounds.txt", "\n".join(lines) + "\n")


def cmd_emit_ring(args, run: Run) -> None:
    L, name = _ring(args)
    run.emit(f"{name}.ring", emit_ring(L))


# -- argument parsing ---------------------------------------------------------------

def _add_ring(p):
    p.add_argument("--ring", help="ring definition file (.ring)")
    p.add_argument("--catalog", help="catalog entry name")


def build_parser(d: Defaults = Defaults()) -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="zg", description=__doc__.splitlines()[0])
    top.add_argument("--out", help="output directory (default: stdout)")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="a_n for n ≤ nmax")
    _add_ring(p)
    p.add_argument("--kind", default="subring")
    p.add_argument("--nmax", type=int, default=d.nmax)
    p.add_argument("--method", default="auto", choices=["auto", "enumerate", "central"])
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("local", help="local coefficients a_{p^k}")
    _add_ring(p)
    p.add_argument("--kind", default="subring")
    p.add_argument("--p", type=int, action="append")
    p.add_argument("--kmax", type=int, default=d.kmax)
    p.add_argument("--source", default="oracle", choices=["oracle", "closed-form", "both"])
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("fit", help="fit and certify a rational local factor")
    _add_ring(p)
    p.add_argument("--kind", default="subring")
    p.add_argument("--p", type=int, action="append")
    p.add_argument("--kmax", type=int, default=d.kmax)
    p.add_argument("--denom", required=True, help="denominator shape, e.g. '1,0 1,1 2,2'")
    p.add_argument("--num-cap", type=int, required=True)
    p.add_argument("--margin", type=int, default=d.margin)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("compare", help="compare local coefficients of two rings")
    p.add_argument("left", help=".ring file or catalog name")
    p.add_argument("right", help=".ring file or catalog name")
    p.add_argument("--kind", default="both")
    p.add_argument("--p", type=int, action="append")
    p.add_argument("--split-field", type=int, help="add the first split primes of Q(sqrt k)")
    p.add_argument("--split-count", type=int, default=d.split_count)
    p.add_argument("--kmax", type=int, default=d.kmax)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("cone", help="rays, invariants, decomposition, good-prime factors")
    p.add_argument("--cone", required=True)
    p.add_argument("--grc", action="append", help="good-reduction counts file")
    p.add_argument("--p", type=int, action="append",
                   help="monomial data: evaluate at p with coordinate counts and cross-check")
    p.add_argument("--reverse", action="store_true", help="pull from the largest ray first")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("stanley", help="lattice-point series of a cone")
    p.add_argument("--cone")
    p.add_argument("--phi", help="rows of Φ, e.g. '1,-1;0,1'")
    p.add_argument("--v", help="shift vector, e.g. '0,1'")
    p.add_argument("--N", type=int, default=d.stanley_N)
    p.set_defaults(func=cmd_stanley)

    p = sub.add_parser("integrate", help="truncated p-adic cone integral")
    p.add_argument("--cint", help="cone-integral file (default: built-in remark data)")
    p.add_argument("--p", type=int, action="append")
    p.add_argument("--kmax", type=int, default=d.kmax)
    p.add_argument("--depth-cap", type=int, help="residue depth per variable (default kmax+m+2)")
    p.add_argument("--target", help="catalog closed form to check against, e.g. cone-remark")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("census", help="orders of quadratic fields and their discriminants")
    p.add_argument("--k", type=int, action="append", required=True)
    p.add_argument("--X", type=int, default=d.census_X)
    p.add_argument("--fmax", type=int, default=d.census_fmax)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify-catalog", help="oracle and Euler checks on the catalog")
    p.add_argument("--depth", default=d.catalog_depth)
    p.set_defaults(func=cmd_verify_catalog)

    p = sub.add_parser("bounds", help="abscissa upper bounds and partial-sum growth")
    _add_ring(p)
    p.add_argument("--partial-sum", nargs=2, metavar=("E", "DELTA"))
    p.add_argument("--N", type=int, default=d.partial_sum_N)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("emit-ring", help="write a ring in canonical .ring form")
    _add_ring(p)
    p.set_defaults(func=cmd_emit_ring)
    return top


def main(argv=None, defaults: Defaults = Defaults()) -> int:
    parser = build_parser(defaults)
    args = parser.parse_args(argv)
    run = Run(args.out)
    try:
        args.func(args, run)
    except (UsageError, ParseError, KeyError, FileNotFoundError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    return run.finish()


if __name__ == "__main__":
    sys.exit(main())
