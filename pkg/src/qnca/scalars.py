"""Exact arithmetic in the coefficient ring Q[v, v^-1], where v^2 = q.

All commutation constants in this package are powers of v, and all other
scalars are Laurent polynomials in v with rational coefficients.  Working
with v instead of q means that square roots of q-powers always exist in
the ring, so no field extensions are ever needed downstream.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentScalar:
    """A Laurent polynomial in v with exact rational coefficients.

    Values are immutable and canonical: zero coefficients are never stored,
    so equality is plain term-map equality.  Arithmetic is exact; there is
    no floating point anywhere.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if c != 0:
                    prev = clean.get(exp)
                    c = c if prev is None else prev + c
                    if c == 0:
                        clean.pop(exp, None)
                    else:
                        clean[exp] = c
        object.__setattr__(self, "_terms", clean)

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentScalar":
        return cls()

    @classmethod
    def one(cls) -> "LaurentScalar":
        return cls({0: Fraction(1)})

    @classmethod
    def rational(cls, value) -> "LaurentScalar":
        return cls({0: Fraction(value)})

    @classmethod
    def v_power(cls, exp: int, coeff=1) -> "LaurentScalar":
        return cls({int(exp): Fraction(coeff)})

    @classmethod
    def q_power(cls, exp: int, coeff=1) -> "LaurentScalar":
        return cls({2 * int(exp): Fraction(coeff)})

    # -- inspection ----------------------------------------------------

    def items(self) -> list[tuple[int, Fraction]]:
        """Terms as (v-exponent, coefficient), ascending in the exponent."""
        return sorted(self._terms.items())

    def coeff(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: Fraction(1)}

    def is_unit(self) -> bool:
        """Units of Q[v, v^-1] are the single-term scalars c*v^k."""
        return len(self._terms) == 1

    def unit_parts(self) -> tuple[int, Fraction]:
        """Decompose a unit as (k, c) with self == c*v^k."""
        if len(self._terms) != 1:
            raise ValueError("scalar %s is not a unit" % self)
        [(exp, coeff)] = self._terms.items()
        return exp, coeff

    def is_v_power(self) -> bool:
        """True when the scalar is exactly v^k (coefficient one)."""
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero scalar has no exponents")
        return min(self._terms)

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero scalar has no exponents")
        return max(self._terms)

    # -- ring operations -----------------------------------------------

    def __add__(self, other: "LaurentScalar") -> "LaurentScalar":
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        terms = dict(self._terms)
        for exp, c in other._terms.items():
            s = terms.get(exp, _ZERO_FRACTION) + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return _raw(terms)

    def __sub__(self, other: "LaurentScalar") -> "LaurentScalar":
        return self + (-other)

    def __neg__(self) -> "LaurentScalar":
        return _raw({e: -c for e, c in self._terms.items()})

    def __mul__(self, other: "LaurentScalar") -> "LaurentScalar":
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        terms: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = terms.get(e, _ZERO_FRACTION) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return _raw(terms)

    def scale(self, rational) -> "LaurentScalar":
        c = Fraction(rational)
        if c == 0:
            return _ZERO
        return _raw({e: k * c for e, k in self._terms.items()})

    def shift(self, vexp: int) -> "LaurentScalar":
        """Multiply by v^vexp."""
        return _raw({e + vexp: c for e, c in self._terms.items()})

    def __pow__(self, n: int) -> "LaurentScalar":
        if n < 0:
            exp, coeff = self.unit_parts()
            return LaurentScalar.v_power(-exp, 1 / coeff) ** (-n)
        out = LaurentScalar.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "LaurentScalar":
        """Inverse of a unit scalar; raises ValueError otherwise."""
        exp, coeff = self.unit_parts()
        return LaurentScalar.v_power(-exp, 1 / coeff)

    # -- hashing / comparison -------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return "LaurentScalar(%s)" % scalar_to_text(self)

    def __str__(self) -> str:
        return scalar_to_text(self)


_ZERO_FRACTION = Fraction(0)
_ZERO = LaurentScalar()


def _raw(terms: dict[int, Fraction]) -> LaurentScalar:
    # Internal constructor for maps already free of zero coefficients.
    out = object.__new__(LaurentScalar)
    object.__setattr__(out, "_terms", terms)
    return out


class QPower:
    """The scalar v^vexp, as a group element of the q-power scalars.

    Half-integer powers of q are integer powers of v, so a single integer
    exponent covers every commutation constant that appears.
    """

    __slots__ = ("vexp",)

    def __init__(self, vexp: int):
        object.__setattr__(self, "vexp", int(vexp))

    def __mul__(self, other: "QPower") -> "QPower":
        return QPower(self.vexp + other.vexp)

    def __truediv__(self, other: "QPower") -> "QPower":
        return QPower(self.vexp - other.vexp)

    def inverse(self) -> "QPower":
        return QPower(-self.vexp)

    def __pow__(self, n: int) -> "QPower":
        return QPower(self.vexp * n)

    def is_one(self) -> bool:
        return self.vexp == 0

    def to_scalar(self) -> LaurentScalar:
        return LaurentScalar.v_power(self.vexp)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPower):
            return NotImplemented
        return self.vexp == other.vexp

    def __hash__(self) -> int:
        return hash(("QPower", self.vexp))

    def __repr__(self) -> str:
        return "QPower(%d)" % self.vexp

    def __str__(self) -> str:
        return scalar_to_text(self.to_scalar())


# -- division and gcd ----------------------------------------------------
#
# Q[v, v^-1] is the localization of Q[v] at v, so divisibility questions
# reduce to ordinary polynomial division after shifting both operands to
# have lowest exponent zero.


def laurent_divmod(a: LaurentScalar, b: LaurentScalar) -> tuple[LaurentScalar, LaurentScalar]:
    """Return (quo, rem) with a == quo*b + rem, reducing the polynomial part."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero scalar")
    if a.is_zero():
        return _ZERO, _ZERO
    shift_a = a.min_exp()
    shift_b = b.min_exp()
    # Polynomial parts with nonzero constant term.
    pa = {e - shift_a: c for e, c in a._terms.items()}
    pb = {e - shift_b: c for e, c in b._terms.items()}
    deg_b = max(pb)
    lead_b = pb[deg_b]
    quo: dict[int, Fraction] = {}
    rem = dict(pa)
    while rem and max(rem) >= deg_b:
        deg_r = max(rem)
        factor = rem[deg_r] / lead_b
        pos = deg_r - deg_b
        quo[pos] = quo.get(pos, _ZERO_FRACTION) + factor
        for e, c in pb.items():
            s = rem.get(e + pos, _ZERO_FRACTION) - factor * c
            if s == 0:
                rem.pop(e + pos, None)
            else:
                rem[e + pos] = s
    q = _raw({e + shift_a - shift_b: c for e, c in quo.items() if c != 0})
    r = _raw({e + shift_a: c for e, c in rem.items() if c != 0})
    return q, r


def laurent_exact_div(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar | None:
    """a / b when b divides a in Q[v, v^-1], else None."""
    quo, rem = laurent_divmod(a, b)
    return quo if rem.is_zero() else None


def laurent_gcd(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    """Monic gcd of the polynomial parts; a unit exactly when a, b are coprime.

    The result has lowest exponent zero and leading coefficient one, which
    makes it canonical among its unit multiples.
    """
    x, y = a, b
    while not y.is_zero():
        _, r = laurent_divmod(x, y)
        x, y = y, r
    if x.is_zero():
        return _ZERO
    shifted = x.shift(-x.min_exp())
    lead = shifted.coeff(shifted.max_exp())
    return shifted.scale(1 / lead)


# -- text form -----------------------------------------------------------
#
# Canonical rendering lists terms in ascending exponent order, e.g.
# "3/2*v^-4 + v^2".  The parser also accepts q-powers, with q = v^2.


def scalar_to_text(s: LaurentScalar, use_q: bool = False) -> str:
    if s.is_zero():
        return "0"
    if use_q and any(e % 2 for e, _ in s.items()):
        use_q = False
    parts = []
    for exp, coeff in s.items():
        if use_q:
            sym, e = "q", exp // 2
        else:
            sym, e = "v", exp
        if e == 0:
            body = str(coeff)
        else:
            power = sym if e == 1 else "%s^%d" % (sym, e)
            if coeff == 1:
                body = power
            elif coeff == -1:
                body = "-" + power
            else:
                body = "%s*%s" % (coeff, power)
        parts.append(body)
    text = parts[0]
    for body in parts[1:]:
        if body.startswith("-"):
            text += " - " + body[1:]
        else:
            text += " + " + body
    return text


def parse_scalar(text: str) -> LaurentScalar:
    """Parse the textual scalar form; accepts both v- and q-powers."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty scalar")
    terms: dict[int, Fraction] = {}
    for sign, chunk in _signed_chunks(stripped):
        exp, coeff = _parse_term(chunk)
        coeff *= sign
        prev = terms.get(exp, _ZERO_FRACTION) + coeff
        if prev == 0:
            terms.pop(exp, None)
        else:
            terms[exp] = prev
    return _raw(terms)


def _signed_chunks(text: str) -> Iterable[tuple[int, str]]:
    # Split on top-level + and - (unary leading sign allowed).
    chunks: list[tuple[int, str]] = []
    sign = 1
    current: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "+-" and (not current or current[-1] in "^*"):
            # Unary sign or exponent sign: "^-4" keeps the minus attached.
            if current and current[-1] == "^":
                current.append(ch)
            elif not "".join(current).strip():
                sign *= -1 if ch == "-" else 1
            else:
                current.append(ch)
        elif ch in "+-":
            chunks.append((sign, "".join(current)))
            sign = -1 if ch == "-" else 1
            current = []
        else:
            current.append(ch)
        i += 1
    tail = "".join(current)
    if not tail.strip():
        raise ValueError("dangling sign in scalar %r" % text)
    chunks.append((sign, tail))
    return chunks


def _parse_term(chunk: str) -> tuple[int, Fraction]:
    coeff = Fraction(1)
    exp = 0
    seen_any = False
    for factor in chunk.split("*"):
        factor = factor.strip()
        if not factor:
            raise ValueError("empty factor in scalar term %r" % chunk)
        seen_any = True
        if factor[0] in "vq":
            sym = factor[0]
            rest = factor[1:]
            if rest == "":
                e = 1
            elif rest.startswith("^"):
                e = int(rest[1:])
            else:
                raise ValueError("bad power %r" % factor)
            exp += e * (2 if sym == "q" else 1)
        else:
            coeff *= Fraction(factor)
    if not seen_any:
        raise ValueError("empty scalar term")
    return exp, coeff
