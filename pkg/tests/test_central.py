from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetagrowth.algebra import (abelian, central_heisenberg_product, direct_product,
                                gaussian_integers, heisenberg, tensor_with_order)
from zetagrowth.central import (_hnf_blocks, central_counter, hnf_rows_iter, isotropic_count,
                                projective_points, reduction_profile)
from zetagrowth.sublattices import count


def _span(vectors, p, n):
    out = {(0,) * n}
    for v in vectors:
        out = {tuple((a + c * b) % p for a, b in zip(w, v)) for w in out for c in range(p)}
    return frozenset(out)


def _form(rho, r0):
    n = 2 * rho + r0
    w = [[0] * n for _ in range(n)]
    for i in range(rho):
        w[i][rho + i], w[rho + i][i] = 1, -1
    return w


def brute_isotropic(rho, r0, d, p):
    n = 2 * rho + r0
    w = _form(rho, r0)
    vecs = list(product(range(p), repeat=n))
    found = set()
    for tup in product(vecs, repeat=d):
        S = _span(tup, p, n)
        if len(S) != p ** d:
            continue
        if all(sum(x[i] * w[i][j] * y[j] for i in range(n) for j in range(n)) % p == 0
               for x in tup for y in tup):
            found.add(S)
    return len(found)


@pytest.mark.parametrize("rho,r0,d,p", [(1, 0, 1, 2), (1, 0, 2, 2), (1, 1, 1, 2), (1, 1, 2, 2),
                                        (1, 0, 1, 3), (1, 1, 2, 3), (2, 0, 2, 2), (0, 2, 1, 3),
                                        (1, 2, 2, 2)])
def test_isotropic_count_brute_force(rho, r0, d, p):
    assert isotropic_count(rho, r0, d, p) == brute_isotropic(rho, r0, d, p)


@pytest.mark.parametrize("r,n,p", [(2, 4, 2), (2, 6, 3), (3, 4, 2), (3, 12, 2), (2, 18, 3),
                                   (3, 9, 3)])
def test_reduction_profile_brute_force(r, n, p):
    prof = reduction_profile(r, n, p)
    for d in range(r + 1):
        W = _span([tuple(int(i == j) for j in range(r)) for i in range(d)], p, r)
        hits = sum(1 for M in hnf_rows_iter(r, n) if _span(M, p, r) == W)
        assert prof[d] == hits


@given(st.integers(1, 4), st.sampled_from([2, 3, 5]))
def test_projective_points_count(e, p):
    pts = list(projective_points(e, p))
    assert len(pts) == (p ** e - 1) // (p - 1)
    assert len(set(pts)) == len(pts)


@given(st.integers(1, 4), st.integers(1, 24))
def test_vectorized_hermite_blocks(h, n):
    rows = sorted(tuple(map(tuple, B.tolist())) for blk in _hnf_blocks(h, n, chunk=7) for B in blk)
    assert rows == sorted(hnf_rows_iter(h, n))


RINGS = {
    "H": (heisenberg(), 24),
    "HxZ": (direct_product(heisenberg(), abelian(1)), 12),
    "HxH": (direct_product(heisenberg(), heisenberg()), 8),
    "H[2]": (heisenberg(2), 16),
    "G(2,0)": (central_heisenberg_product(2, 0), 8),
    "L-1": (tensor_with_order(heisenberg(), gaussian_integers()), 8),
}


@pytest.mark.parametrize("name", list(RINGS))
@pytest.mark.parametrize("kind", ["subring", "ideal"])
def test_fast_path_matches_enumerator(name, kind):
    L, N = RINGS[name]
    for n in range(1, N + 1):
        assert count(L, n, kind, "central") == count(L, n, kind, "enumerate"), n


@given(st.sampled_from([2, 3]), st.integers(0, 3))
def test_fast_path_prime_powers(p, k):
    L = direct_product(heisenberg(), abelian(1))
    n = p ** k
    if n <= 27:
        assert count(L, n, "subring", "central") == count(L, n, "subring", "enumerate")


def test_central_counter_cached_and_rejects_non_lie():
    H = heisenberg()
    assert central_counter(H) is central_counter(H)
    with pytest.raises(ValueError):
        central_counter(gaussian_integers())
