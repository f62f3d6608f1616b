from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetagrowth.algebra import direct_product, gaussian_integers, heisenberg, quadratic_integers
from zetagrowth.cones import GoodReductionCounts, MonomialConeDatum
from zetagrowth.formats import (ParseError, emit_cint, emit_cone, emit_grc, emit_ring, load,
                                parse_cint_file, parse_cone_file, parse_grc_file, parse_ring_file)
from zetagrowth.padic import remark_data

DATA = Path(__file__).resolve().parent.parent / "data"


def test_heisenberg_file():
    L = parse_ring_file("name: H\nrank: 3\nkind: lie\n1 2 3 1\n2 1 3 -1\n")
    assert L.constants == heisenberg().constants and L.kind == "lie"


def test_gaussian_file_with_comments():
    text = """# Z[i] on the basis 1, i
    rank: 2
    kind: unital
    identity: 1 0
    1 1 1 1
    1 2 2 1   # 1 * i = i
    2 1 2 1
    2 2 1 -1  # i * i = -1
    """
    L = parse_ring_file(text)
    assert L.constants == gaussian_integers().constants
    assert L.identity == (1, 0)


def test_jacobi_violation_reports_triple():
    # [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = 0 is antisymmetric but not Lie
    text = "rank: 3\nkind: lie\n1 2 3 1\n2 1 3 -1\n2 3 1 1\n3 2 1 -1\n1 3 1 1\n3 1 1 -1\n"
    with pytest.raises(ParseError, match="Jacobi"):
        parse_ring_file(text)


@pytest.mark.parametrize("text,line", [
    ("rank: 2\ncolour: red\n", 2),
    ("rank: 2\nrank: 3\n", 2),
    ("rank: 2\nkind: lie\n1 2 x 1\n", 3),
    ("rank: 2\nkind: lie\n1 2 1\n", 3),
    ("rank: 2\nkind: lie\n1 2 2 1\n1 2 2 1\n", 4),
    ("rank: two\n", 1),
])
def test_ring_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_ring_file(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_ring_errors_without_line():
    with pytest.raises(ParseError, match="rank"):
        parse_ring_file("kind: lie\n")
    with pytest.raises(ParseError, match="outside"):
        parse_ring_file("rank: 2\n1 2 3 1\n")


@pytest.mark.parametrize("L", [heisenberg(), gaussian_integers(), quadratic_integers(5),
                               direct_product(heisenberg(), heisenberg())])
def test_ring_round_trip(L):
    text = emit_ring(L)
    again = parse_ring_file(text)
    assert again.constants == L.constants and again.identity == L.identity
    assert emit_ring(again) == text


@st.composite
def cone_data(draw):
    m = draw(st.integers(1, 4))
    l = draw(st.integers(0, 3))
    row = st.lists(st.integers(0, 5), min_size=m, max_size=m)
    return MonomialConeDatum(m, [draw(row) for _ in range(l + 1)],
                             [draw(row) for _ in range(l + 1)],
                             draw(st.lists(st.integers(1, 4), min_size=m, max_size=m)))


@given(cone_data())
def test_cone_round_trip(D):
    text = emit_cone(D)
    assert parse_cone_file(text) == D
    assert emit_cone(parse_cone_file(text)) == text


@pytest.mark.parametrize("text", [
    "T 2 1\nN f_0 : 1 0\n",
    "T 2 0\nN f_0 : 1 0\nN g_0 : 0 0 0\nnu : 1 1\n",
    "S 2 0\n",
])
def test_cone_errors(text):
    with pytest.raises(ParseError):
        parse_cone_file(text)


@given(st.sampled_from([2, 3, 5, 7]),
       st.dictionaries(st.frozensets(st.integers(0, 4)), st.integers(0, 50), max_size=8))
def test_grc_round_trip(p, counts):
    G = GoodReductionCounts(p, counts)
    text = emit_grc(G)
    assert parse_grc_file(text) == G
    assert emit_grc(parse_grc_file(text)) == text


def test_grc_accepts_binary_literals_and_rejects_duplicates():
    G = parse_grc_file("p 3\n0b101 7\n")
    assert G.counts == {frozenset({0, 2}): 7}
    with pytest.raises(ParseError) as info:
        parse_grc_file("p 3\n5 1\n0b101 2\n")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        parse_grc_file("0 1\n")


def test_cint_round_trip():
    text = emit_cint(remark_data())
    assert parse_cint_file(text) == remark_data()
    assert emit_cint(parse_cint_file(text)) == text


@pytest.mark.parametrize("path", sorted(DATA.iterdir()), ids=lambda p: p.name)
def test_shipped_files_are_canonical(path):
    obj = load(path)
    emit = {".ring": emit_ring, ".cone": emit_cone, ".cint": emit_cint, ".grc": emit_grc}
    assert emit[path.suffix](obj) == path.read_text()


def test_unknown_extension(tmp_path):
    f = tmp_path / "x.txt"
    f.write_text("")
    with pytest.raises(ParseError):
        load(f)
