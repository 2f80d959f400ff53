"""Quantum torus elements based at a seed's frame.

An element is a finite sum of frame values, sum_f c_f M(f) over lattice
vectors f.  The frame satisfies the symmetric product rule

    M(f) M(g) = v^{(f^T L g)/2} M(f+g),

where L is the commutation-exponent matrix of the seed (entries are even,
so the half is integral: that is exactly what the square-root condition
provides in the v-exponent encoding).  Consequently M(f)^{-1} = M(-f) and
the frame rule M(f+g) = v^{-(f^T L g)/2} M(f) M(g) holds.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import NotExactlyDivisible
from .lattice import bilinear, rl_lex_key, vec_add, vec_neg
from .scalars import LaurentScalar


class TorusElement:
    """Finite support map from Z^N to scalars; immutable by convention."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], LaurentScalar] | None = None):
        self.n = n
        clean: dict[tuple[int, ...], LaurentScalar] = {}
        if terms:
            for vec, coeff in terms.items():
                if len(vec) != n:
                    raise ValueError("lattice vector %r has length != %d" % (vec, n))
                if not coeff.is_zero():
                    clean[tuple(vec)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, n: int) -> "TorusElement":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "TorusElement":
        return cls(n, {(0,) * n: LaurentScalar.one()})

    @classmethod
    def monomial(cls, n: int, vec: Sequence[int],
                 coeff: LaurentScalar | None = None) -> "TorusElement":
        return cls(n, {tuple(vec): LaurentScalar.one() if coeff is None else coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[tuple[int, ...], LaurentScalar]]:
        return sorted(self.terms.items(), key=lambda kv: rl_lex_key(kv[0]))

    def leading(self) -> tuple[tuple[int, ...], LaurentScalar]:
        if not self.terms:
            raise ValueError("zero torus element has no leading term")
        vec = max(self.terms, key=rl_lex_key)
        return vec, self.terms[vec]

    def coeff(self, vec: Sequence[int]) -> LaurentScalar:
        return self.terms.get(tuple(vec), LaurentScalar.zero())

    def __add__(self, other: "TorusElement") -> "TorusElement":
        if self.n != other.n:
            raise ValueError("mixed lattice ranks")
        terms = dict(self.terms)
        for vec, c in other.terms.items():
            s = terms.get(vec)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(vec, None)
            else:
                terms[vec] = s
        return _raw(self.n, terms)

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def __neg__(self) -> "TorusElement":
        return _raw(self.n, {v: -c for v, c in self.terms.items()})

    def scalar_mul(self, s: LaurentScalar) -> "TorusElement":
        if s.is_zero():
            return TorusElement.zero(self.n)
        return _raw(self.n, {v: c * s for v, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def normalized(self) -> "TorusElement":
        """Canonical representative up to unit scalars: the leading
        coefficient's dominant unit is divided out."""
        if not self.terms:
            return self
        _, lead = self.leading()
        exp = lead.max_exp()
        unit = LaurentScalar.v_power(-exp, 1 / lead.coeff(exp))
        return self.scalar_mul(unit)

    def key(self) -> tuple:
        """Hashable canonical form (after normalization)."""
        return tuple((vec, tuple(coeff.items())) for vec, coeff in self.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "TorusElement(0)"
        bits = ["(%s)*M%s" % (coeff, list(vec)) for vec, coeff in self.items()]
        return "TorusElement(%s)" % " + ".join(bits)


def _raw(n: int, terms: dict[tuple[int, ...], LaurentScalar]) -> TorusElement:
    out = object.__new__(TorusElement)
    out.n = n
    out.terms = terms
    return out


def _twist(f: Sequence[int], lam, g: Sequence[int]) -> int:
    value = bilinear(f, lam, g)
    if value % 2:
        raise ValueError("odd commutation pairing %d; matrix is not even" % value)
    return value // 2


def multiply(a: TorusElement, b: TorusElement, lam) -> TorusElement:
    """Product with respect to the commutation matrix lam (v-exponents)."""
    if a.n != b.n:
        raise ValueError("mixed lattice ranks")
    terms: dict[tuple[int, ...], LaurentScalar] = {}
    for f, cf in a.terms.items():
        for g, cg in b.terms.items():
            vec = vec_add(f, g)
            coeff = cf * cg * LaurentScalar.v_power(_twist(f, lam, g))
            s = terms.get(vec)
            s = coeff if s is None else s + coeff
            if s.is_zero():
                terms.pop(vec, None)
            else:
                terms[vec] = s
    return _raw(a.n, terms)


def invert_monomial(a: TorusElement) -> TorusElement:
    """Inverse of a single-term element; M(f)^{-1} = M(-f) up to the unit."""
    [(vec, coeff)] = a.terms.items()
    return TorusElement.monomial(a.n, vec_neg(vec), coeff.inverse())


def power(a: TorusElement, exponent: int, lam) -> TorusElement:
    if exponent < 0:
        return power(invert_monomial(a), -exponent, lam)
    out = TorusElement.one(a.n)
    for _ in range(exponent):
        out = multiply(out, a, lam)
    return out


def divide_right(z: TorusElement, d: TorusElement, lam,
                 max_steps: int = 100000) -> TorusElement:
    """The exact quotient w with w * d == z.

    Leading-term division: each step cancels the current leading term of
    the remainder, which strictly decreases in the term order, so exact
    divisions finish in as many steps as the quotient has terms.  A step
    cap guards the non-divisible case.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero torus element")
    g, c = d.leading()
    if not c.is_unit():
        raise NotExactlyDivisible(
            "divisor has non-invertible leading coefficient %s" % c)
    c_inv = c.inverse()
    quotient = TorusElement.zero(z.n)
    remainder = z
    steps = 0
    while not remainder.is_zero():
        if steps >= max_steps:
            raise NotExactlyDivisible("division exceeded %d steps" % max_steps)
        fz, cz = remainder.leading()
        w = tuple(x - y for x, y in zip(fz, g))
        coeff = cz * c_inv * LaurentScalar.v_power(-_twist(w, lam, g))
        term = TorusElement.monomial(z.n, w, coeff)
        quotient = quotient + term
        remainder = remainder - multiply(term, d, lam)
        steps += 1
    return quotient


def divide_left(d: TorusElement, z: TorusElement, lam,
                max_steps: int = 100000) -> TorusElement:
    """The exact quotient w with d * w == z."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero torus element")
    g, c = d.leading()
    if not c.is_unit():
        raise NotExactlyDivisible(
            "divisor has non-invertible leading coefficient %s" % c)
    c_inv = c.inverse()
    quotient = TorusElement.zero(z.n)
    remainder = z
    steps = 0
    while not remainder.is_zero():
        if steps >= max_steps:
            raise NotExactlyDivisible("division exceeded %d steps" % max_steps)
        fz, cz = remainder.leading()
        w = tuple(x - y for x, y in zip(fz, g))
        coeff = cz * c_inv * LaurentScalar.v_power(-_twist(g, lam, w))
        term = TorusElement.monomial(z.n, w, coeff)
        quotient = quotient + term
        remainder = remainder - multiply(d, term, lam)
        steps += 1
    return quotient


def frame_monomial(variables: Sequence[TorusElement], seed_lam, f: Sequence[int],
                   base_lam) -> TorusElement:
    """Evaluate the frame of a seed at the lattice vector f.

    The seed's variables are given over the base torus; the Weyl twist uses
    the seed's own commutation matrix, while all actual products happen in
    the base torus.  Negative powers of multi-term variables are resolved
    by exact division.
    """
    n = len(variables)
    twist = 0
    for i in range(n):
        if f[i]:
            for j in range(i + 1, n):
                if f[j]:
                    twist += f[i] * seed_lam[i][j] * f[j]
    if twist % 2:
        raise ValueError("odd frame twist; commutation matrix is not even")
    acc = TorusElement.monomial(n, (0,) * n, LaurentScalar.v_power(-twist // 2))
    for i in range(n):
        fi = f[i]
        if fi == 0:
            continue
        var = variables[i]
        if fi > 0:
            for _ in range(fi):
                acc = multiply(acc, var, base_lam)
        elif len(var.terms) == 1:
            inv = invert_monomial(var)
            for _ in range(-fi):
                acc = multiply(acc, inv, base_lam)
        else:
            for _ in range(-fi):
                acc = divide_right(acc, var, base_lam)
    return acc
