"""Exact linear solvers.

Three flavors are needed:

* rational elimination over Q (Fractions) with uniqueness certification,
  for the exchange-matrix system;
* integer systems via unimodular diagonalization, for torus elements of
  the reverse-presentation action;
* elimination over the fraction field of Q[v, v^-1], for the correction
  terms of the prime-element recursion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleSystem, NonLaurentSolution, UniquenessViolation
from .scalars import LaurentScalar, laurent_exact_div, laurent_gcd

Matrix = Sequence[Sequence]


# -- generic Gauss-Jordan over a field ------------------------------------


def gauss_solve(matrix: Matrix, rhs: Sequence, zero, one):
    """Full row reduction of [matrix | rhs] over any exact field.

    Returns (particular_solution, free_columns) with free variables set to
    zero, or None when the system is inconsistent.
    """
    rows = [list(row) + [r] for row, r in zip(matrix, rhs, strict=True)]
    nrows = len(rows)
    ncols = len(matrix[0]) if nrows else len(rhs)
    pivots: list[int] = []
    pr = 0
    for pc in range(ncols):
        pivot_row = None
        for r in range(pr, nrows):
            if rows[r][pc] != zero:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        inv = one / rows[pr][pc]
        rows[pr] = [x * inv for x in rows[pr]]
        for r in range(nrows):
            if r != pr and rows[r][pc] != zero:
                f = rows[r][pc]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    for r in range(pr, nrows):
        if rows[r][ncols] != zero:
            return None
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    solution = [zero] * ncols
    for idx, col in enumerate(pivots):
        solution[col] = rows[idx][ncols]
    return solution, free


def solve_rational(matrix: Matrix, rhs: Sequence):
    """Rational solve with free variables set to zero; None if inconsistent."""
    mat = [[Fraction(x) for x in row] for row in matrix]
    b = [Fraction(x) for x in rhs]
    return gauss_solve(mat, b, Fraction(0), Fraction(1))

def solve_unique_rational(matrix: Matrix, rhs: Sequence) -> list[Fraction]:
    """Solve with a full-column-rank certificate.

    Raises InfeasibleSystem when no solution exists and UniquenessViolation
    when the solution space is positive-dimensional.
    """
    result = solve_rational(matrix, rhs)
    if result is None:
        raise InfeasibleSystem("linear system has no rational solution")
    solution, free = result
    if free:
        raise UniquenessViolation(
            "linear system is underdetermined (free columns %s)" % (free,))
    return solution


def integral_or_raise(values: Sequence[Fraction]) -> list[int]:
    out = []
    for x in values:
        if x.denominator != 1:
            raise InfeasibleSystem("solution is not integral: %s" % (list(values),))
        out.append(int(x))
    return out


# -- integer systems via unimodular diagonalization ------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def diagonalize_integer(matrix: Matrix):
    """U * A * V = D with U, V unimodular and D diagonal (not necessarily
    with the divisibility chain, which solving does not need)."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    d = [[int(x) for x in row] for row in matrix]
    u = _identity(m)
    v = _identity(n)
    for t in range(min(m, n)):
        while True:
            pick = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    val = abs(d[i][j])
                    if val and (best is None or val < best):
                        best, pick = val, (i, j)
            if pick is None:
                return u, d, v
            i0, j0 = pick
            if i0 != t:
                d[t], d[i0] = d[i0], d[t]
                u[t], u[i0] = u[i0], u[t]
            if j0 != t:
                for row in d:
                    row[t], row[j0] = row[j0], row[t]
                for row in v:
                    row[t], row[j0] = row[j0], row[t]
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                u[t] = [-x for x in u[t]]
            clean = True
            for i in range(t + 1, m):
                q = d[i][t] // d[t][t]
                if q:
                    d[i] = [x - q * y for x, y in zip(d[i], d[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                if d[i][t]:
                    clean = False
            if not clean:
                continue
            for j in range(t + 1, n):
                q = d[t][j] // d[t][t]
                if q:
                    for row in d:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                if d[t][j]:
                    clean = False
            if clean:
                break
    return u, d, v


def solve_integer(matrix: Matrix, rhs: Sequence[int]):
    """Integer solutions of A x = b.

    Returns (particular_solution, kernel_basis) or None when no integer
    solution exists.  The kernel basis spans all integer solutions of the
    homogeneous system.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if m == 0:
        return [0] * n, [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    u, d, v = diagonalize_integer(matrix)
    c = [sum(u[i][k] * int(rhs[k]) for k in range(m)) for i in range(m)]
    z = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di:
            if c[i] % di:
                return None
            z[i] = c[i] // di
        elif c[i]:
            return None
    particular = [sum(v[i][j] * z[j] for j in range(n)) for i in range(n)]
    kernel = []
    for j in range(n):
        if j >= m or d[j][j] == 0:
            kernel.append([v[i][j] for i in range(n)])
    return particular, kernel


# -- the fraction field of Q[v, v^-1] --------------------------------------


class RationalFunction:
    """num/den with both parts in Q[v, v^-1], kept reduced and with a
    canonical denominator (lowest exponent zero, leading coefficient one).

    With that normalization the element lies in Q[v, v^-1] itself exactly
    when den == 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentScalar, den: LaurentScalar | None = None):
        if den is None:
            den = LaurentScalar.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = LaurentScalar.zero()
            self.den = LaurentScalar.one()
            return
        g = laurent_gcd(num, den)
        if not g.is_one():
            num = laurent_exact_div(num, g)
            den = laurent_exact_div(den, g)
        shift = -den.min_exp()
        lead = den.coeff(den.max_exp())
        self.num = num.shift(shift).scale(1 / lead)
        self.den = den.shift(shift).scale(1 / lead)

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(LaurentScalar.zero())

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(LaurentScalar.one())

    @classmethod
    def from_scalar(cls, s: LaurentScalar) -> "RationalFunction":
        return cls(s)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def to_laurent(self) -> LaurentScalar:
        if not self.den.is_one():
            raise NonLaurentSolution("value %s has a true denominator" % self)
        return self.num

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return "RationalFunction(%s)" % self.num
        return "RationalFunction((%s)/(%s))" % (self.num, self.den)


def solve_laurent(matrix: Sequence[Sequence[LaurentScalar]],
                  rhs: Sequence[LaurentScalar]):
    """Solve over Frac(Q[v, v^-1]).

    Returns (solution, free_columns) with entries as RationalFunction, or
    None when inconsistent."""
    mat = [[RationalFunction.from_scalar(x) for x in row] for row in matrix]
    b = [RationalFunction.from_scalar(x) for x in rhs]
    return gauss_solve(mat, b, RationalFunction.zero(), RationalFunction.one())
