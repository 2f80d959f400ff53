"""Small exact helpers for integer exponent vectors and matrices.

Exponent vectors are plain tuples of ints; matrices are tuples of row
tuples.  Everything stays in arbitrary-precision integers (or Fractions,
in the solvers) -- no floating point.
"""

from __future__ import annotations

from typing import Sequence


def zero_vec(n: int) -> tuple[int, ...]:
    return (0,) * n


def unit_vec(n: int, k: int) -> tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(n))


def vec_add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_neg(a: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in a)


def vec_scale(a: Sequence[int], c: int) -> tuple[int, ...]:
    return tuple(c * x for x in a)


def vec_dot(a: Sequence[int], b: Sequence[int]):
    return sum(x * y for x, y in zip(a, b, strict=True))


def rl_lex_key(a: Sequence[int]) -> tuple[int, ...]:
    """Sort key for the right-to-left lexicographic order.

    Vectors are compared at the largest index where they differ, so the
    reversed tuple compares in ordinary lexicographic order.
    """
    return tuple(reversed(a))


def bilinear(f: Sequence[int], mat: Sequence[Sequence[int]], g: Sequence[int]):
    """f^T * mat * g with exact arithmetic."""
    total = 0
    for i, fi in enumerate(f):
        if fi:
            row = mat[i]
            total += fi * sum(row[j] * gj for j, gj in enumerate(g) if gj)
    return total


def mat_vec(mat: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(vec_dot(row, v) for row in mat)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    cols = list(zip(*b))
    return tuple(tuple(vec_dot(row, col) for col in cols) for row in a)


def transpose(mat: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*mat))


def is_antisymmetric(mat: Sequence[Sequence[int]]) -> bool:
    n = len(mat)
    return all(mat[i][j] == -mat[j][i] for i in range(n) for j in range(i, n))
