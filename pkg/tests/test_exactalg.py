from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kapparing.exactalg import (LabeledMatrix, LabeledVector, LabelMismatchError,
                                in_span, is_triangular, rank, solve_linear)


def naive_rank(rows):
    """Oracle: plain rational Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, n_rows):
            f = m[i][c] / m[r][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    return r


def matrix_from(rows):
    n, m = len(rows), len(rows[0]) if rows else 0
    return LabeledMatrix(["r%d" % i for i in range(n)],
                         ["c%d" % j for j in range(m)], rows)


rationals = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@st.composite
def matrices(draw, max_size=12):
    n = draw(st.integers(min_value=1, max_value=max_size))
    m = draw(st.integers(min_value=1, max_value=max_size))
    rows = draw(st.lists(st.lists(rationals, min_size=m, max_size=m),
                         min_size=n, max_size=n))
    return rows


class TestRank:
    def test_identity(self):
        assert rank(matrix_from([[1, 0], [0, 1]])) == 2

    def test_zero(self):
        assert rank(matrix_from([[0, 0], [0, 0]])) == 0

    def test_rank_one(self):
        assert rank(matrix_from([[1, 2], [2, 4]])) == 1

    def test_rational_entries(self):
        rows = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1, 1)]]
        assert rank(matrix_from(rows)) == naive_rank(rows)

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_matches_naive_oracle(self, rows):
        assert rank(matrix_from(rows)) == naive_rank(rows)

    @settings(max_examples=60, deadline=None)
    @given(matrices(max_size=7))
    def test_transpose_invariant(self, rows):
        m = matrix_from(rows)
        assert rank(m) == rank(m.transpose())


class TestTriangular:
    def test_identity_any_order(self):
        m = matrix_from([[1, 0], [0, 1]])
        for order in (["r0", "r1"], ["r1", "r0"]):
            cols = ["c" + lab[1] for lab in order]
            rep = is_triangular(m, order, cols, "upper")
            assert rep == (True, True)

    def test_lower(self):
        m = matrix_from([[1, 0], [5, 1]])
        assert is_triangular(m, ["r0", "r1"], ["c0", "c1"], "lower") == (True, True)

    def test_antidiagonal_fails_both(self):
        m = matrix_from([[0, 1], [1, 0]])
        assert not is_triangular(m, ["r0", "r1"], ["c0", "c1"], "upper").triangular
        assert not is_triangular(m, ["r0", "r1"], ["c0", "c1"], "lower").triangular

    def test_order_sensitivity(self):
        # designed witness: upper triangular in one order, not in the reverse
        m = matrix_from([[1, 1], [0, 1]])
        assert is_triangular(m, ["r0", "r1"], ["c0", "c1"], "upper").triangular
        assert not is_triangular(m, ["r1", "r0"], ["c1", "c0"], "upper").triangular

    def test_not_square(self):
        m = matrix_from([[1, 0, 0], [0, 1, 0]])
        with pytest.raises(LabelMismatchError):
            is_triangular(m, ["r0", "r1"], ["c0", "c1", "c2"], "upper")

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            is_triangular(matrix_from([[1]]), ["r0"], ["c0"], "diagonal")


class TestSpan:
    def test_member_of_basis(self):
        v = LabeledVector("ab", [1, 2])
        assert in_span(v, [v])

    def test_zero_vector(self):
        z = LabeledVector("ab", [0, 0])
        assert in_span(z, [LabeledVector("ab", [1, 2])])
        assert in_span(z, [])

    def test_outside(self):
        v = LabeledVector("ab", [1, 0])
        w = LabeledVector("ab", [0, 1])
        assert not in_span(v, [w])

    def test_combination(self):
        basis = [LabeledVector("abc", [1, 1, 0]), LabeledVector("abc", [0, 1, 1])]
        v = LabeledVector("abc", [2, 5, 3])
        assert in_span(v, basis)
        assert not in_span(LabeledVector("abc", [1, 0, 0]), basis)

    def test_label_mismatch(self):
        with pytest.raises(LabelMismatchError):
            in_span(LabeledVector("ab", [1, 2]), [LabeledVector("ax", [1, 2])])


class TestSolve:
    def test_unique_solution(self):
        m = matrix_from([[2, 1], [1, 3]])
        rhs = LabeledVector(m.row_labels, [5, 10])
        sol = solve_linear(m, rhs)
        assert sol == {"c0": Fraction(1), "c1": Fraction(3)}

    def test_inconsistent(self):
        m = matrix_from([[1, 1], [2, 2]])
        rhs = LabeledVector(m.row_labels, [1, 3])
        assert solve_linear(m, rhs) is None

    @settings(max_examples=40, deadline=None)
    @given(matrices(max_size=5),
           st.lists(rationals, min_size=5, max_size=5))
    def test_solution_satisfies_system(self, rows, coeffs):
        m = matrix_from(rows)
        x = coeffs[:len(m.col_labels)]
        rhs = LabeledVector(m.row_labels,
                            [sum(r[j] * x[j] for j in range(len(x))) for r in rows])
        sol = solve_linear(m, rhs)
        assert sol is not None
        for i, r in enumerate(rows):
            assert sum(r[j] * sol["c%d" % j] for j in range(len(x))) == rhs.values[i]


class TestValidation:
    def test_duplicate_labels(self):
        with pytest.raises(ValueError):
            LabeledMatrix(["a", "a"], ["c"], [[1], [2]])

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            LabeledMatrix(["a"], ["c", "d"], [[1]])

    def test_entry_lookup(self):
        m = LabeledMatrix(["a", "b"], ["x", "y"], [[1, 2], [3, 4]])
        assert m.entry("b", "x") == 3
        assert m.submatrix(["b"], ["y"]).rows() == ((Fraction(4),),)
