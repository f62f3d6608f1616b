"""Which constant turns the triangular-matrix cone integral into sublattice counts.

Evaluates the integral for small rings and compares the rescaled intervals
with oracle counts under each candidate normalization.

    python scripts/normalization_probe.py --kmax 2 --p 2 3
"""

import argparse
import time

from zetagrowth.catalog import get_entry
from zetagrowth.padic import oracle_consistency


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rings", nargs="+", default=["Z^1", "Z^2", "Z^3", "H"])
    ap.add_argument("--kind", default="subring")
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--kmax", type=int, default=2)
    args = ap.parse_args()
    for name in args.rings:
        L = get_entry(name).algebra
        for p in args.p:
            t0 = time.perf_counter()
            R = oracle_consistency(L, p, args.kmax, args.kind)
            print(f"== {name} {args.kind} p={p} ({time.perf_counter() - t0:.1f}s)")
            print(R.summary())


if __name__ == "__main__":
    main()
