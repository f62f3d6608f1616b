import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetagrowth.algebra import (AlgebraError, NotNilpotentError, StructureConstantAlgebra,
                                abelian, center_saturation, central_adapted,
                                central_heisenberg_product, change_basis, direct_product,
                                gaussian_integers, heisenberg, lower_central_series, multiply,
                                nilpotency_class, quadratic_integers, tensor_with_order, validate)
from zetagrowth.catalog import CATALOG
from zetagrowth.intlinalg import Lattice, det
from zetagrowth.sublattices import count


@pytest.mark.parametrize("name", [n for n, e in CATALOG.items() if e.algebra is not None])
def test_catalog_rings_are_valid(name):
    assert validate(CATALOG[name].algebra) == []


def test_heisenberg_bracket():
    H = heisenberg()
    assert multiply(H, [1, 0, 0], [0, 1, 0]) == [0, 0, 1]
    assert multiply(H, [0, 1, 0], [1, 0, 0]) == [0, 0, -1]


def test_jacobi_violation_reported():
    bad = StructureConstantAlgebra(3, {(0, 1, 2): 1, (1, 0, 2): -1, (0, 2, 0): 1, (2, 0, 0): -1})
    assert any("Jacobi" in msg and "(1,2,3)" in msg for msg in validate(bad))


def test_antisymmetry_violation_reported():
    bad = StructureConstantAlgebra(2, {(0, 1, 0): 1})
    assert any("antisymmetry" in msg for msg in validate(bad))


def test_gaussian_integers_table():
    Zi = gaussian_integers()
    assert validate(Zi) == []
    assert multiply(Zi, [0, 1], [0, 1]) == [-1, 0]


def test_unital_requires_identity():
    with pytest.raises(AlgebraError):
        StructureConstantAlgebra(1, {(0, 0, 0): 1}, "unital")


@pytest.mark.parametrize("L,c", [(abelian(3), 1), (heisenberg(), 2),
                                 (direct_product(heisenberg(), abelian(1)), 2),
                                 (central_heisenberg_product(2, 1), 2),
                                 (tensor_with_order(heisenberg(), quadratic_integers(5)), 2)])
def test_nilpotency_class(L, c):
    assert nilpotency_class(L) == c


def test_filiform_class_three():
    # [e1,e2]=e3, [e1,e3]=e4
    F = StructureConstantAlgebra(4, {(0, 1, 2): 1, (1, 0, 2): -1, (0, 2, 3): 1, (2, 0, 3): -1})
    series, c = lower_central_series(F)
    assert c == 3
    assert [s.rank for s in series] == [4, 2, 1, 0]


def test_non_nilpotent_detected():
    sl2 = StructureConstantAlgebra(3, {(0, 1, 0): 2, (1, 0, 0): -2, (0, 2, 2): -2, (2, 0, 2): 2,
                                       (1, 2, 0): 1, (2, 1, 0): -1})
    with pytest.raises(NotNilpotentError):
        nilpotency_class(sl2)


def test_center_saturation_index():
    d = center_saturation(heisenberg(2))
    assert (d.e, d.k1, d.c) == (1, 2, 2)
    assert d.Z == Lattice(3, [[0, 0, 1]])


def test_central_adapted_puts_center_last():
    L = tensor_with_order(heisenberg(), quadratic_integers(2))
    La, e = central_adapted(L)
    assert e == 2
    h = La.rank
    for (i, j, k) in La.constants:
        assert k >= h - e


unimodular = st.lists(st.integers(-2, 2), min_size=3, max_size=3).map(
    lambda v: [[1, v[0], v[1]], [0, 1, v[2]], [0, 0, 1]])


@given(unimodular, st.permutations([0, 1, 2]))
def test_change_basis_preserves_counts(U, perm):
    P = [U[i] for i in perm]
    assert abs(det(P)) == 1
    H = heisenberg()
    H2 = change_basis(H, P)
    assert validate(H2) == []
    for n in (2, 4, 6):
        assert count(H2, n, "subring", "enumerate") == count(H, n, "subring", "enumerate")
        assert count(H2, n, "ideal", "enumerate") == count(H, n, "ideal", "enumerate")


def test_direct_product_kinds_must_match():
    with pytest.raises(AlgebraError):
        direct_product(heisenberg(), gaussian_integers())


def test_tensor_rank_and_identity():
    Zi = gaussian_integers()
    T = tensor_with_order(Zi, quadratic_integers(5))
    assert T.rank == 4 and validate(T) == []
    assert T.identity == (1, 0, 0, 0)
