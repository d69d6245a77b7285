import random
from fractions import Fraction
from math import comb

import pytest

from qscaling import (
    DimensionGuardError,
    IndexSet,
    MatrixParseError,
    RationalMatrix,
    cofactor_determinant,
    compound,
    determinant,
    index_sets,
    mat_mul,
    matrix_from_dict,
    matrix_to_dict,
    minor,
    parse_matrix,
    parse_rational,
    render_matrix,
    zero_rows_outside,
)

from helpers import random_rational_matrix
from oracles import brute_force_minor, leibniz_determinant, two_by_two_determinant

A_REF = RationalMatrix(((1, 2), (-1, 5)))
M_335 = RationalMatrix(((1, 2, 3), (4, 5, 6), (7, 8, 10)))


# -- rational tokens ---------------------------------------------------------


@pytest.mark.parametrize(
    "token,value",
    [("7", Fraction(7)), ("-3", Fraction(-3)), ("1/2", Fraction(1, 2)), ("-9/6", Fraction(-3, 2)), ("0", Fraction(0))],
)
def test_parse_rational(token, value):
    assert parse_rational(token) == value


@pytest.mark.parametrize("token", ["", "3/-4", "1.5", "+-2", "a", "3/0", "1e3", "2 /3"])
def test_parse_rational_rejects(token):
    with pytest.raises(ValueError):
        parse_rational(token)


# -- index sets --------------------------------------------------------------


def test_index_set_validation():
    with pytest.raises(ValueError):
        IndexSet(3, (2, 2))
    with pytest.raises(ValueError):
        IndexSet(3, (3, 1))
    with pytest.raises(ValueError):
        IndexSet(3, (4,))
    assert IndexSet.of(4, 3, 1).members == (1, 3)


def test_index_set_rank_matches_lexicographic_enumeration():
    for n in range(1, 7):
        for k in range(0, n + 1):
            sets = list(index_sets(n, k))
            for position, s in enumerate(sets, start=1):
                assert s.rank() == position
            assert len(sets) == comb(n, k)


def test_index_set_complement():
    assert IndexSet(5, (2, 4)).complement().members == (1, 3, 5)


# -- minors and determinants -------------------------------------------------


def test_minor_reference_values():
    assert minor(A_REF, IndexSet.of(2, 1, 2), IndexSet.of(2, 1, 2)) == 7
    identity = RationalMatrix.identity(3)
    assert minor(identity, IndexSet.of(3, 1, 3), IndexSet.of(3, 1, 3)) == 1


def test_minor_against_two_by_two_oracle():
    # rows {1,2} x cols {2,3} of M_335 is [[2,3],[5,6]]
    expected = two_by_two_determinant([[Fraction(2), Fraction(3)], [Fraction(5), Fraction(6)]])
    assert expected == Fraction(-3)
    assert minor(M_335, IndexSet.of(3, 1, 2), IndexSet.of(3, 2, 3)) == expected


def test_minor_order_zero_convention():
    empty = IndexSet(2, ())
    assert minor(A_REF, empty, empty) == 1


def test_minor_errors():
    with pytest.raises(ValueError):
        minor(A_REF, IndexSet.of(2, 1), IndexSet.of(2, 1, 2))
    with pytest.raises(ValueError):
        minor(A_REF, IndexSet.of(5, 1, 3), IndexSet.of(5, 1, 3))


def test_determinant_reference_values():
    assert determinant(A_REF) == 7
    assert determinant(RationalMatrix.identity(6)) == 1
    expected = leibniz_determinant([list(row) for row in M_335.rows])
    assert expected == Fraction(-3)
    assert determinant(M_335) == expected


def test_determinant_matches_cofactor_and_leibniz():
    rng = random.Random(1001)
    for n in range(1, 6):
        for _ in range(8):
            m = random_rational_matrix(rng, n)
            d = determinant(m)
            assert d == cofactor_determinant(m)
            assert d == leibniz_determinant([list(row) for row in m.rows])


def test_determinant_singular():
    singular = RationalMatrix(((1, 2), (2, 4)))
    assert determinant(singular) == 0


# -- compound matrices ---------------------------------------------------------


def test_compound_reference_values():
    top = compound(A_REF, 2)
    assert top.entries.rows == ((Fraction(7),),)
    identity = RationalMatrix.identity(4)
    for j in range(1, 5):
        assert compound(identity, j).entries == RationalMatrix.identity(comb(4, j))


def test_compound_entries_match_minor_oracle():
    rng = random.Random(2002)
    m = random_rational_matrix(rng, 3)
    c = compound(m, 2)
    rows = [list(row) for row in m.rows]
    sets = list(index_sets(3, 2))
    for a, alpha in enumerate(sets):
        for b, beta in enumerate(sets):
            expected = brute_force_minor(rows, alpha.zero_based(), beta.zero_based())
            assert c.entries.rows[a][b] == expected
            assert c.minor_at(alpha, beta) == expected
            assert minor(m, alpha, beta) == expected


def test_compound_edge_orders():
    rng = random.Random(2003)
    for n in range(1, 5):
        m = random_rational_matrix(rng, n)
        assert compound(m, 1).entries == m
        assert compound(m, n).entries.rows == ((determinant(m),),)


def test_compound_multiplicativity():
    rng = random.Random(2004)
    for n in range(2, 5):
        for _ in range(5):
            a = random_rational_matrix(rng, n)
            b = random_rational_matrix(rng, n)
            ab = mat_mul(a, b)
            for k in range(1, n + 1):
                left = compound(ab, k).entries
                right = mat_mul(compound(a, k).entries, compound(b, k).entries)
                assert left == right


def test_sylvester_franke():
    rng = random.Random(2005)
    for n in range(2, 6):
        m = random_rational_matrix(rng, n)
        d = determinant(m)
        for k in range(1, n + 1):
            assert determinant(compound(m, k).entries) == d ** comb(n - 1, k - 1)


def test_compound_guard():
    with pytest.raises(ValueError):
        compound(A_REF, 3)
    big = RationalMatrix.identity(13)
    with pytest.raises(DimensionGuardError):
        compound(big, 2)
    # the guard is configurable
    assert compound(big, 1, max_dim=13).entries == big


# -- products and row truncation ------------------------------------------------


def test_mat_mul_reference_values():
    assert mat_mul(A_REF, A_REF) == RationalMatrix(((-1, 12), (-6, 23)))
    identity = RationalMatrix.identity(3)
    m = RationalMatrix(((1, 2, 3), (4, 5, 6), (7, 8, 9)))
    assert mat_mul(identity, m) == m
    scaled = A_REF.scale_rows((Fraction(2), Fraction(3)))
    assert scaled == RationalMatrix(((2, 4), (-3, 15)))
    assert scaled == mat_mul(RationalMatrix.diagonal((2, 3)), A_REF)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(ValueError):
        mat_mul(A_REF, RationalMatrix.identity(3))


def test_zero_rows_outside():
    rng = random.Random(2006)
    m = random_rational_matrix(rng, 3)
    truncated = zero_rows_outside(m, IndexSet.of(3, 1, 2))
    assert truncated.rows[0] == m.rows[0]
    assert truncated.rows[1] == m.rows[1]
    assert all(e == 0 for e in truncated.rows[2])

    assert zero_rows_outside(m, IndexSet.of(3, 1, 2, 3)) == m
    assert zero_rows_outside(RationalMatrix.identity(3), IndexSet.of(3, 1)) == RationalMatrix.diagonal((1, 0, 0))
    with pytest.raises(ValueError):
        zero_rows_outside(m, IndexSet(3, ()))


# -- matrix formats ---------------------------------------------------------------


def test_parse_matrix_reference():
    text = "2\n1 2\n-1 5\n"
    assert parse_matrix(text) == A_REF
    assert render_matrix(A_REF) == text


def test_text_round_trip_bit_exact():
    rng = random.Random(3007)
    for n in (1, 2, 4):
        for _ in range(10):
            m = random_rational_matrix(rng, n, num_bound=50, den_bound=7)
            assert parse_matrix(render_matrix(m)) == m


def test_dict_round_trip_bit_exact():
    rng = random.Random(3008)
    for n in (1, 3, 5):
        m = random_rational_matrix(rng, n, num_bound=50, den_bound=7)
        doc = matrix_to_dict(m)
        assert matrix_from_dict(doc) == m


def test_parse_matrix_errors_carry_positions():
    with pytest.raises(MatrixParseError) as err:
        parse_matrix("2\n1 2\n-1\n")
    assert err.value.line == 3

    with pytest.raises(MatrixParseError) as err:
        parse_matrix("2\n1 x\n-1 5\n")
    assert err.value.line == 2
    assert err.value.column == 3

    with pytest.raises(MatrixParseError):
        parse_matrix("")
    with pytest.raises(MatrixParseError):
        parse_matrix("zero\n")
    with pytest.raises(MatrixParseError):
        parse_matrix("1\n5\nextra\n")


def test_matrix_from_dict_errors():
    with pytest.raises(MatrixParseError):
        matrix_from_dict({"n": 2, "rows": [["1", "2"]]})
    with pytest.raises(MatrixParseError):
        matrix_from_dict({"n": 1, "rows": [[1]]})


def test_matrix_rejects_floats_and_ragged_rows():
    with pytest.raises(TypeError):
        RationalMatrix(((0.5, 1), (1, 1)))
    with pytest.raises(ValueError):
        RationalMatrix(((1, 2), (3,)))
