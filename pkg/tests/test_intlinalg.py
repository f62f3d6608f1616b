import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from zetagrowth.intlinalg import (Lattice, det, hnf_rows, inverse_unimodular, matmul, saturation,
                                  smith, solve_echelon, subgroup_order_mod)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4), lo=-6, hi=6):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(st.integers(lo, hi), min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                       min_size=n, max_size=n))


@given(square)
def test_det_matches_sympy(a):
    assert det(a) == sympy.Matrix(a).det()


@given(matrices())
def test_smith_factorization(a):
    d, U, V = smith(a)
    D = matmul(matmul(U, a), V)
    m, n = len(a), len(a[0])
    assert all(D[i][j] == (d[i] if i == j else 0) for i in range(m) for j in range(n))
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


@given(matrices())
def test_smith_invariants_match_sympy(a):
    ours = sorted(abs(x) for x in smith(a)[0] if x)
    S = smith_normal_form(sympy.Matrix(a), domain=sympy.ZZ)
    theirs = sorted(abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0)
    assert ours == theirs


@given(matrices(cols=st.just(3)))
def test_hnf_spans_same_group(a):
    H = hnf_rows(a, 3)
    for row in a:
        assert solve_echelon(H, row) is not None
    # each Hermite row is an integer combination of the inputs
    for row in H:
        coeffs = sympy.Matrix(a).T.gauss_jordan_solve(sympy.Matrix(row))[0]
        assert coeffs is not None
    piv = [next(j for j, x in enumerate(r) if x) for r in H]
    assert piv == sorted(piv) and len(set(piv)) == len(piv)


@given(square)
def test_full_rank_index_is_abs_det(a):
    L = Lattice(len(a), a)
    D = abs(det(a))
    assert L.index == (D if D else None)


@given(matrices(cols=st.just(3)))
def test_saturation_is_pure(a):
    L = Lattice(3, a)
    S, k = saturation(L)
    assert S.contains_lattice(L)
    assert S.rank == L.rank
    if L.rank:
        # index of L in its saturation from the elementary divisors
        assert k == abs(sympy.prod([x for x in smith(L.basis)[0] if x]))
        # pure: the quotient Z^3/S is torsion free, i.e. elementary divisors all 1
        assert all(x == 1 for x in smith(S.basis)[0] if x)


@given(st.lists(st.lists(st.integers(0, 11), min_size=2, max_size=2), max_size=3))
def test_subgroup_order_mod_by_enumeration(gens):
    moduli = [4, 6]
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = ((x[0] + g[0]) % 4, (x[1] + g[1]) % 6)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    assert subgroup_order_mod(gens, moduli) == len(seen)


def test_inverse_unimodular():
    a = [[2, 1], [1, 1]]
    assert matmul(a, inverse_unimodular(a)) == [[1, 0], [0, 1]]
