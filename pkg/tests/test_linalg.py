from fractions import Fraction

import pytest

from qnca.errors import InfeasibleSystem, UniquenessViolation
from qnca.linalg import (RationalFunction, diagonalize_integer, integral_or_raise,
                         solve_integer, solve_laurent, solve_rational,
                         solve_unique_rational)
from qnca.scalars import LaurentScalar


def test_unique_solve():
    sol = solve_unique_rational([[2, 1], [1, -1]], [5, 1])
    assert sol == [Fraction(2), Fraction(1)]


def test_overdetermined_consistent():
    sol = solve_unique_rational([[1, 0], [0, 1], [1, 1]], [2, 3, 5])
    assert sol == [Fraction(2), Fraction(3)]


def test_inconsistent_raises():
    with pytest.raises(InfeasibleSystem):
        solve_unique_rational([[1, 0], [1, 0]], [1, 2])


def test_underdetermined_raises():
    with pytest.raises(UniquenessViolation):
        solve_unique_rational([[1, 1]], [1])


def test_free_columns_reported():
    solution, free = solve_rational([[1, 1, 0]], [4])
    assert free == [1, 2]
    assert solution[0] == 4


def test_integrality_guard():
    with pytest.raises(InfeasibleSystem):
        integral_or_raise([Fraction(1, 2)])
    assert integral_or_raise([Fraction(4), Fraction(-2)]) == [4, -2]


def test_diagonalization_is_unimodular_change():
    a = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    u, d, v = diagonalize_integer(a)
    m, n = 3, 3
    for i in range(m):
        for j in range(n):
            got = sum(u[i][p] * a[p][q] * v[q][j] for p in range(m) for q in range(n))
            want = d[i][j] if i == j else 0
            assert got == want
            if i != j:
                assert d[i][j] == 0


def test_integer_solve_with_kernel():
    result = solve_integer([[2, 4], [1, 2]], [6, 3])
    assert result is not None
    x, kernel = result
    assert 2 * x[0] + 4 * x[1] == 6
    assert len(kernel) == 1
    u = kernel[0]
    assert 2 * u[0] + 4 * u[1] == 0 and u != [0, 0]


def test_integer_solve_infeasible():
    assert solve_integer([[2]], [3]) is None
    assert solve_integer([[0]], [1]) is None


def test_integer_solve_empty_system():
    x, kernel = solve_integer([], [])
    assert x == [] and kernel == []


def test_rational_function_normal_form():
    one = LaurentScalar.one()
    v2m1 = LaurentScalar({2: Fraction(1), 0: Fraction(-1)})
    f = RationalFunction(v2m1, v2m1)
    assert f == RationalFunction.one()
    g = RationalFunction(one, LaurentScalar.v_power(3, Fraction(2)))
    # unit denominators normalize away entirely
    assert g.is_laurent()
    assert g.to_laurent() == LaurentScalar.v_power(-3, Fraction(1, 2))


def test_rational_function_field_ops():
    v = LaurentScalar.v_power(1)
    f = RationalFunction(LaurentScalar.one(), LaurentScalar({0: Fraction(-1), 2: Fraction(1)}))
    g = RationalFunction(v)
    total = f + g
    assert total - g == f
    assert (f * g) / g == f
    assert (f / f) == RationalFunction.one()


def test_laurent_system_forces_q_value():
    # alpha * (1 - q^-2) = q - q^-1 has the single solution alpha = q.
    lhs = LaurentScalar({0: Fraction(1), -4: Fraction(-1)})
    rhs = LaurentScalar({2: Fraction(1), -2: Fraction(-1)})
    solution, free = solve_laurent([[lhs]], [rhs])
    assert not free
    assert solution[0].to_laurent() == LaurentScalar.v_power(2)


def test_laurent_system_inconsistency():
    one = LaurentScalar.one()
    assert solve_laurent([[one], [one]], [one, LaurentScalar.v_power(2)]) is None
