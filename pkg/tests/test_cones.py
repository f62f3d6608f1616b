from fractions import Fraction
from itertools import product
from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from zetagrowth.cones import (GoodReductionCounts, MonomialConeDatum, certified_stanley,
                              cone_from_data, coordinate_counts, extremal_rays, good_prime_factor,
                              monomial_local_factor, orthant_cone, parallelepiped_points,
                              ray_invariants, simplicial_decomposition, stanley_series,
                              toy_datum)
from zetagrowth.rational import PadicRationalFunction


@st.composite
def cone_data(draw, max_m=3, max_l=3):
    m = draw(st.integers(1, max_m))
    l = draw(st.integers(0, max_l))
    row = st.lists(st.integers(0, 3), min_size=m, max_size=m)
    f = [draw(row) for _ in range(l + 1)]
    g = [draw(row) for _ in range(l + 1)]
    nu = draw(st.lists(st.integers(1, 3), min_size=m, max_size=m))
    return MonomialConeDatum(m, f, g, nu)


def _rank(rows):
    return sympy.Matrix(rows).rank() if rows else 0


def _is_extreme(cone, u):
    tight = [cone.inequalities[i] for i in cone.tight(u)]
    return cone.contains(u) and any(u) and _rank(tight) == len(u) - 1


# -- toy datum ------------------------------------------------------------------

def test_toy_cone_and_rays():
    D = toy_datum()
    cone = cone_from_data(D)
    assert cone.contains((1, 2)) and not cone.contains((2, 1))
    rays = extremal_rays(cone)
    assert set(rays) == {(1, 1), (0, 1)}
    inv = ray_invariants(rays, D)
    assert {(a, b) for a, b in zip(inv.A, inv.B)} == {(1, 2), (0, 1)}
    assert inv.alpha == -1


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_toy_two_routes(p):
    D = toy_datum()
    dec = simplicial_decomposition(cone_from_data(D))
    want = PadicRationalFunction({(0, 0): 1 - Fraction(1, p)}, ((1, -2),), p)
    gp = good_prime_factor(dec, coordinate_counts(2, p), D)
    assert gp == want
    assert monomial_local_factor(D, p) == want


def test_contradictory_condition_gives_face():
    D = MonomialConeDatum(2, [(0, 0), (1, 0)], [(0, 0), (0, 0)], (1, 1))
    assert extremal_rays(cone_from_data(D)) == [(0, 1)]


def test_no_conditions_gives_orthant():
    D = MonomialConeDatum(3, [(1, 1, 1)], [(0, 0, 0)], (1, 1, 1))
    assert sorted(extremal_rays(cone_from_data(D))) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_bad_datum_rejected():
    with pytest.raises(ValueError):
        MonomialConeDatum(2, [(1, 0)], [(0, 0)], (0, 1))
    with pytest.raises(ValueError):
        MonomialConeDatum(2, [(1, -1)], [(0, 0)], (1, 1))


# -- rays and invariants ----------------------------------------------------------

@given(cone_data())
def test_rays_primitive_extreme_and_complete(D):
    cone = cone_from_data(D)
    rays = extremal_rays(cone)
    assert rays == sorted(rays, reverse=True)
    assert len(set(rays)) == len(rays)
    for e in rays:
        g = 0
        for x in e:
            g = gcd(g, x)
        assert g == 1
        assert _is_extreme(cone, e)
    # every small primitive extreme vector is among the rays
    for u in product(range(5), repeat=D.m):
        g = 0
        for x in u:
            g = gcd(g, x)
        if g == 1 and _is_extreme(cone, u):
            assert u in rays


@given(cone_data())
def test_b_at_least_one(D):
    rays = extremal_rays(cone_from_data(D))
    inv = ray_invariants(rays, D)
    assert all(b >= 1 for b in inv.B)
    assert all(a >= 0 for a in inv.A)


# -- decomposition ----------------------------------------------------------------

@given(cone_data(), st.booleans())
def test_decomposition_partitions_lattice_points(D, reverse):
    cone = cone_from_data(D)
    dec = simplicial_decomposition(cone, reverse=reverse)
    assert dec.pieces[0].M == () and dec.pieces[0].I == frozenset()
    for u in product(range(5), repeat=D.m):
        if sum(u) > 8:
            continue
        k = dec.piece_of(u)          # raises on overlap
        assert (k is not None) == cone.contains(u)
        if k is not None:
            assert dec.pieces[k].I == frozenset(i for i, x in enumerate(u) if x)


def test_non_simplicial_cone_covered():
    # square cone over 4 rays in R^3
    D = MonomialConeDatum(3, [(1, 1, 1), (1, 0, 0), (0, 1, 0)], [(0, 0, 0), (0, 0, 1), (0, 0, 1)],
                          (1, 1, 1))
    cone = cone_from_data(D)
    assert len(extremal_rays(cone)) == 4
    for reverse in (False, True):
        dec = simplicial_decomposition(cone, reverse=reverse)
        assert max(len(pc.M) for pc in dec.pieces) == 3
        for u in product(range(6), repeat=3):
            assert (dec.piece_of(u) is not None) == cone.contains(u)


@given(cone_data(max_m=3, max_l=2), st.sampled_from([2, 3, 5]), st.data())
def test_good_prime_factor_independent_of_triangulation(D, p, data):
    cone = cone_from_data(D)
    rays = extremal_rays(cone)
    inv = ray_invariants(rays, D)
    if any(a == 0 and b == 0 for a, b in zip(inv.A, inv.B)):
        return
    subsets = {pc.I for pc in simplicial_decomposition(cone).pieces}
    counts = GoodReductionCounts(p, {I: data.draw(st.integers(0, 9)) for I in subsets})
    a = good_prime_factor(simplicial_decomposition(cone, rays), counts, D)
    b = good_prime_factor(simplicial_decomposition(cone, rays, reverse=True), counts, D)
    assert a == b


@given(cone_data(max_m=3, max_l=2), st.sampled_from([2, 3]))
def test_good_prime_factor_equals_monomial_route(D, p):
    try:
        want = monomial_local_factor(D, p)
    except ValueError:
        return
    dec = simplicial_decomposition(cone_from_data(D))
    assert good_prime_factor(dec, coordinate_counts(D.m, p), D) == want


def test_parallelepiped_size_is_determinant():
    E = [(2, 1), (0, 3)]
    pts = parallelepiped_points(E)
    # half-open box: coefficients in (0, 1], so the apex is out and the far corner in
    assert len(pts) == 6 and (0, 0) not in pts and (2, 4) in pts


# -- Stanley series -----------------------------------------------------------------

@st.composite
def stanley_cases(draw):
    m = draw(st.integers(1, 3))
    l = draw(st.integers(1, 3))
    Phi = [draw(st.lists(st.integers(-3, 3), min_size=m, max_size=m)) for _ in range(l)]
    v = draw(st.lists(st.integers(-3, 3), min_size=l, max_size=l))
    return Phi, v


def _expand(numerator, rays, N):
    """numerator / ∏(1 − X^e) up to total degree N."""
    series = dict(numerator)
    for e in rays:
        if not any(e):
            continue
        out = {}
        for k, c in series.items():
            j = 0
            while sum(k) + j * sum(e) <= N:
                key = tuple(a + j * b for a, b in zip(k, e))
                out[key] = out.get(key, 0) + c
                j += 1
        series = out
    return {k: c for k, c in series.items() if c and sum(k) <= N}


@given(stanley_cases())
def test_stanley_certified_and_reexpands(case):
    Phi, v = case
    res = certified_stanley(Phi, v, 96)
    assert res.certified
    # the certified numerator reproduces every lattice point through the exact range
    back = _expand(res.numerator, res.rays, res.exact_bound)
    pts = {k: 1 for k in res.series if sum(k) <= res.exact_bound}
    assert back == pts


def test_stanley_orthant():
    res = stanley_series([[1, 0]], [0], 10)
    assert res.numerator == {(0, 0): 1}
    assert set(res.rays) == {(1, 0), (0, 1)}


def test_orthant_cone_matches_cone_from_data():
    D = toy_datum()
    Phi = [[b - a for a, b in zip(D.f[1], D.g[1])]]
    assert set(extremal_rays(orthant_cone(Phi, 2))) == set(extremal_rays(cone_from_data(D)))
