"""Local coefficients of H ⊗ O_k next to H × H at split, inert and ramified primes.

    python scripts/split_prime_evidence.py --k -1 2 5 --kmax 2 --pmax 13
"""

import argparse

from zetagrowth.algebra import direct_product, heisenberg, quadratic_integers, tensor_with_order
from zetagrowth.numtheory import primerange, splitting_type
from zetagrowth.sublattices import local_coefficients


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[-1, 2, 5])
    ap.add_argument("--kmax", type=int, default=2)
    ap.add_argument("--pmax", type=int, default=13)
    ap.add_argument("--kind", default="subring")
    args = ap.parse_args()
    HH = direct_product(heisenberg(), heisenberg())
    print("k,p,behaviour,kind,H(x)O_k,HxH,equal")
    for k in args.k:
        Lk = tensor_with_order(heisenberg(), quadratic_integers(k))
        for p in primerange(2, args.pmax + 1):
            a = local_coefficients(Lk, p, args.kmax, args.kind)
            b = local_coefficients(HH, p, args.kmax, args.kind)
            how = splitting_type(k, p).value
            print(f"{k},{p},{how},{args.kind},{' '.join(map(str, a))},"
                  f"{' '.join(map(str, b))},{a == b}")


if __name__ == "__main__":
    main()
