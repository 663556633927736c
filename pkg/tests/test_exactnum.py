from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpw.errors import DimensionMismatch, DivisionByZero, ParseError
from cpw.exactnum import (
    I,
    ONE,
    ZERO,
    ExactMatrix,
    GaussianRational as G,
    SparseEchelon,
    gr_arith,
    gr_format,
    gr_parse,
    rref,
    solve_membership,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
gaussians = st.builds(G, rationals, rationals)
nonzero = st.builds(G, rationals.filter(bool), rationals)


def test_spec_arithmetic():
    assert gr_arith("add", G(Fraction(1, 2)), G(Fraction(1, 2))) == ONE
    assert gr_arith("mul", G("3/5+4/5i"), G("3/5-4/5i")) == ONE
    assert gr_arith("div", I, I) == ONE
    assert gr_arith("sub", I, I) == ZERO


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        gr_arith("div", ONE, ZERO)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_parse_and_format():
    assert gr_parse("3/5+4/5i") == G(Fraction(3, 5), Fraction(4, 5))
    assert gr_parse("-2") == G(-2)
    assert gr_format(G(Fraction(1, 2), Fraction(-1, 3))) == "1/2-1/3i"
    assert gr_format(I) == "i"
    assert gr_format(-I) == "-i"
    assert gr_format(G(0, 2)) == "2i"
    assert gr_parse("(2/4)") == G(Fraction(1, 2))
    assert gr_parse("-i") == -I


def test_canonical_lowest_terms():
    x = G(Fraction(2, 4), Fraction(6, 8))
    assert (x.re, x.im) == (Fraction(1, 2), Fraction(3, 4))
    assert gr_format(G(Fraction(4, 2))) == "2"


@pytest.mark.parametrize("text, pos", [("", 0), ("1/", 2), ("1/0", 2), ("3/5+", 4), ("1+2", 3), ("x", 0), ("(1", 2)])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as err:
        gr_parse(text)
    assert err.value.position == pos


@given(gaussians)
def test_format_parse_roundtrip(x):
    assert gr_parse(gr_format(x)) == x


@given(gaussians, gaussians, gaussians)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + ZERO == x and x * ONE == x
    assert x - x == ZERO


@given(nonzero)
def test_inverse(x):
    assert x * x.inverse() == ONE
    assert x.norm2() == (x * x.conjugate()).re


@given(gaussians, gaussians)
def test_equality_matches_hash(x, y):
    if x == y:
        assert hash(x) == hash(y)
    assert G(x.re, x.im) == x


def test_rref_examples():
    r, piv, _ = rref(ExactMatrix.identity(2))
    assert r == ExactMatrix.identity(2) and piv == [0, 1]
    r, piv, _ = rref(ExactMatrix.zeros(2, 2))
    assert r == ExactMatrix.zeros(2, 2) and piv == []
    r, piv, _ = rref(ExactMatrix.from_rows([[1, I], [I, -1]]))
    assert r == ExactMatrix.from_rows([[1, I], [0, 0]]) and piv == [0]


def test_solve_membership_examples():
    assert solve_membership(ExactMatrix.from_rows([[1, 0]]), [2, 0]) == [G(2)]
    assert solve_membership(ExactMatrix.from_rows([[1, 0]]), [0, 1]) is None
    assert solve_membership(ExactMatrix.from_rows([[1, 1], [0, 1]]), [1, 0]) == [ONE, -ONE]
    with pytest.raises(DimensionMismatch):
        solve_membership(ExactMatrix.from_rows([[1, 0]]), [1, 0, 0])


small = st.sampled_from([G(0), G(0), G(1), G(-1), G(0, 1), G(Fraction(1, 2)), G(2, -1)])
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150)
@given(matrices)
def test_rref_properties(rows):
    m = ExactMatrix.from_rows(rows)
    r, piv, t = rref(m)
    assert t @ m == r
    for i, p in enumerate(piv):
        assert r[i, p] == ONE
        assert all(r[k, p] == ZERO for k in range(r.rows) if k != i)
        assert all(r[i, c] == ZERO for c in range(p))
    assert all(not any(r.row(i)) for i in range(len(piv), r.rows))


@settings(max_examples=150)
@given(matrices)
def test_sparse_echelon_matches_dense_rref(rows):
    m = ExactMatrix.from_rows(rows)
    dense, piv, _ = rref(m)
    ech = SparseEchelon()
    for i, row in enumerate(rows):
        ech.insert({c: v for c, v in enumerate(row) if v}, i)
    assert sorted(ech.pivots()) == piv
    assert ech.to_matrix(m.cols).to_rows() == dense.to_rows()[: len(piv)]
    # membership certificates reproduce the reduced vector from the input rows
    for vec in ech.basis_rows():
        residual, combo = ech.reduce(vec)
        assert not residual
        total = {}
        for label, c in combo.items():
            for col, v in enumerate(rows[label]):
                total[col] = total.get(col, ZERO) + c * v
        assert {k: v for k, v in total.items() if v} == vec
