"""Iterated skew-polynomial presentations and PBW normal-form arithmetic.

A presentation consists of N generators x_1..x_N, a torus of rank r acting
diagonally with integer character lattice, per-generator torus elements
h_k stored as q-exponent vectors, and the lower-order terms delta_k(x_l)
of the straightening relations

    x_k x_l = lambda_kl x_l x_k + delta_k(x_l),   k > l,

with lambda_kl = q^{<h_k, chi_l>}.  Elements are kept in the PBW basis of
ordered monomials x_1^{a_1} ... x_N^{a_N}; multiplication rewrites
descending adjacent pairs, which terminates because every delta image
lives strictly below its generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InfeasibleSystem, PresentationError
from .lattice import rl_lex_key, unit_vec, vec_add, vec_dot, vec_sub
from .linalg import solve_integer
from .scalars import LaurentScalar


class NCPoly:
    """An element of the algebra in PBW normal form.

    The term map sends an exponent vector a in Z_{>=0}^N to the (nonzero)
    coefficient of x_1^{a_1} ... x_N^{a_N}.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], LaurentScalar] | None = None):
        self.n = n
        clean: dict[tuple[int, ...], LaurentScalar] = {}
        if terms:
            for exp, coeff in terms.items():
                if len(exp) != n:
                    raise ValueError("exponent vector %r has length != %d" % (exp, n))
                if any(e < 0 for e in exp):
                    raise ValueError("negative exponent in %r" % (exp,))
                if not coeff.is_zero():
                    clean[tuple(exp)] = coeff
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "NCPoly":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "NCPoly":
        return cls(n, {(0,) * n: LaurentScalar.one()})

    @classmethod
    def monomial(cls, n: int, exp: Sequence[int], coeff: LaurentScalar | None = None) -> "NCPoly":
        return cls(n, {tuple(exp): LaurentScalar.one() if coeff is None else coeff})

    @classmethod
    def generator(cls, n: int, k: int) -> "NCPoly":
        return cls.monomial(n, unit_vec(n, k))

    # -- inspection ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[tuple[int, ...], LaurentScalar]]:
        return sorted(self.terms.items())

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def max_support_index(self) -> int:
        """Largest generator index appearing, or -1 for constants."""
        best = -1
        for exp in self.terms:
            for i in range(len(exp) - 1, best, -1):
                if exp[i]:
                    best = i
                    break
        return best

    def supported_below(self, k: int) -> bool:
        return self.max_support_index() < k

    def leading(self) -> tuple[tuple[int, ...], LaurentScalar]:
        """Leading term in the right-to-left lexicographic order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=rl_lex_key)
        return exp, self.terms[exp]

    def coeff(self, exp: Sequence[int]) -> LaurentScalar:
        return self.terms.get(tuple(exp), LaurentScalar.zero())

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "NCPoly") -> "NCPoly":
        if self.n != other.n:
            raise ValueError("mixed generator counts")
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return _raw_poly(self.n, terms)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __neg__(self) -> "NCPoly":
        return _raw_poly(self.n, {e: -c for e, c in self.terms.items()})

    def scalar_mul(self, s: LaurentScalar) -> "NCPoly":
        if s.is_zero():
            return NCPoly.zero(self.n)
        return _raw_poly(self.n, {e: c * s for e, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        from .formats import poly_to_text
        return "NCPoly(%s)" % poly_to_text(self)


def _raw_poly(n: int, terms: dict[tuple[int, ...], LaurentScalar]) -> NCPoly:
    out = object.__new__(NCPoly)
    out.n = n
    out.terms = terms
    return out


def mono_weight(exp: Sequence[int], weights: Sequence[Sequence[int]]) -> tuple[int, ...]:
    r = len(weights[0]) if weights else 0
    acc = [0] * r
    for i, a in enumerate(exp):
        if a:
            w = weights[i]
            for t in range(r):
                acc[t] += a * w[t]
    return tuple(acc)


def homogeneous_weight(poly: NCPoly, weights: Sequence[Sequence[int]]):
    """The common torus weight of all terms, or None when mixed/zero."""
    weight = None
    for exp in poly.terms:
        w = mono_weight(exp, weights)
        if weight is None:
            weight = w
        elif weight != w:
            return None
    return weight


def homogeneous_monomials(n: int, weights: Sequence[Sequence[int]], below: int,
                          weight: Sequence[int], max_degree: int) -> list[tuple[int, ...]]:
    """All exponents supported on the first `below` generators with the
    given torus weight and total degree at most max_degree, in the
    right-to-left lexicographic order."""
    out: list[tuple[int, ...]] = []
    exp = [0] * n
    target = tuple(weight)

    def descend(pos: int, remaining: int) -> None:
        if pos == below:
            if mono_weight(exp, weights) == target:
                out.append(tuple(exp))
            return
        for value in range(remaining + 1):
            exp[pos] = value
            descend(pos + 1, remaining - value)
        exp[pos] = 0

    descend(0, max_degree)
    out.sort(key=rl_lex_key)
    return out


class CGLPresentation:
    """Immutable data of an iterated skew-polynomial extension.

    All indices are 0-based internally.  delta maps (k, l) with k > l to
    the nonzero lower-order part of x_k x_l - lambda_kl x_l x_k; missing
    pairs mean that part is zero.
    """

    __slots__ = ("N", "r", "weights", "h", "hstar", "delta",
                 "_mulcache", "_deltacache")

    def __init__(self, weights: Sequence[Sequence[int]], h: Sequence[Sequence[int]],
                 delta: Mapping[tuple[int, int], NCPoly] | None = None,
                 hstar: Sequence[Sequence[int]] | None = None):
        self.N = len(weights)
        if len(h) != self.N:
            raise PresentationError("need one torus element per generator")
        self.r = len(weights[0]) if self.N else 0
        self.weights = tuple(tuple(int(x) for x in w) for w in weights)
        self.h = tuple(tuple(int(x) for x in v) for v in h)
        if any(len(w) != self.r for w in self.weights) or any(len(v) != self.r for v in self.h):
            raise PresentationError("inconsistent torus rank")
        self.hstar = (None if hstar is None
                      else tuple(tuple(int(x) for x in v) for v in hstar))
        clean: dict[tuple[int, int], NCPoly] = {}
        for (k, l), poly in (delta or {}).items():
            if not (0 <= l < k < self.N):
                raise PresentationError("delta index pair (%d, %d) out of order" % (k, l))
            if poly.n != self.N:
                raise PresentationError("delta polynomial has wrong width")
            if poly.is_zero():
                continue
            if not poly.supported_below(k):
                # The rewriting system only terminates when every delta
                # image lives strictly below its generator.
                raise PresentationError(
                    "delta_%d(x_%d) escapes the subalgebra below %d" % (k + 1, l + 1, k + 1))
            clean[(k, l)] = poly
        self.delta = clean
        self._mulcache: dict = {}
        self._deltacache: dict = {}

    def with_hstar(self, hstar: Sequence[Sequence[int]]) -> "CGLPresentation":
        """Copy with the reverse-order torus elements attached; rewriting
        caches are shared since hstar does not enter multiplication."""
        out = object.__new__(CGLPresentation)
        out.N, out.r = self.N, self.r
        out.weights, out.h, out.delta = self.weights, self.h, self.delta
        out.hstar = tuple(tuple(int(x) for x in v) for v in hstar)
        out._mulcache = self._mulcache
        out._deltacache = self._deltacache
        return out

    # -- eigenvalue bookkeeping -------------------------------------------

    def lam_qexp(self, k: int, l: int) -> int:
        """q-exponent of the h_k-eigenvalue of x_l."""
        return vec_dot(self.h[k], self.weights[l])

    def lam_vexp(self, k: int, l: int) -> int:
        return 2 * self.lam_qexp(k, l)

    def lamstar_vexp(self, k: int) -> int:
        if self.hstar is None:
            raise PresentationError("presentation has no hstar data")
        return 2 * vec_dot(self.hstar[k], self.weights[k])

    def delta_image(self, k: int, l: int) -> NCPoly:
        return self.delta.get((k, l), NCPoly.zero(self.N))

    def delta_vanishes_below(self, k: int) -> bool:
        """True when delta_k is zero on the whole subalgebra below k."""
        return all((k, l) not in self.delta for l in range(k))

    # -- multiplication ----------------------------------------------------

    def multiply(self, a: NCPoly, b: NCPoly) -> NCPoly:
        if a.n != self.N or b.n != self.N:
            raise ValueError("operands do not match the presentation")
        out = NCPoly.zero(self.N)
        for exp, coeff in a.terms.items():
            out = out + self._mono_times_poly(exp, b).scalar_mul(coeff)
        return out

    def product(self, *factors: NCPoly) -> NCPoly:
        out = NCPoly.one(self.N)
        for f in factors:
            out = self.multiply(out, f)
        return out

    def _mono_times_poly(self, exp: tuple[int, ...], poly: NCPoly) -> NCPoly:
        # x^exp * poly; apply single generators from the right end of the
        # PBW word inward.
        out = poly
        for k in range(self.N - 1, -1, -1):
            for _ in range(exp[k]):
                out = self._gen_times_poly(k, out)
        return out

    def _gen_times_poly(self, k: int, poly: NCPoly) -> NCPoly:
        out = NCPoly.zero(self.N)
        for exp, coeff in poly.terms.items():
            out = out + self._gen_times_mono(k, exp).scalar_mul(coeff)
        return out

    def _gen_times_mono(self, k: int, exp: tuple[int, ...]) -> NCPoly:
        """x_k * x^exp in normal form, memoized per presentation."""
        key = (k, exp)
        cached = self._mulcache.get(key)
        if cached is not None:
            return cached
        low = None
        for i, a in enumerate(exp):
            if a:
                low = i
                break
        if low is None or low >= k:
            result = NCPoly.monomial(self.N, vec_add(exp, unit_vec(self.N, k)))
        else:
            rest = vec_sub(exp, unit_vec(self.N, low))
            lam = LaurentScalar.v_power(self.lam_vexp(k, low))
            swapped = self._gen_times_poly(low, self._gen_times_mono(k, rest)).scalar_mul(lam)
            dk = self.delta.get((k, low))
            if dk is None:
                result = swapped
            else:
                result = swapped + self.multiply(dk, NCPoly.monomial(self.N, rest))
        self._mulcache[key] = result
        return result

    # -- torus action and skew derivations ---------------------------------

    def sigma_apply(self, k: int, poly: NCPoly) -> NCPoly:
        """Action of h_k: scales each monomial by its eigenvalue."""
        terms = {}
        for exp, coeff in poly.terms.items():
            vexp = 2 * vec_dot(self.h[k], mono_weight(exp, self.weights))
            terms[exp] = coeff * LaurentScalar.v_power(vexp)
        return NCPoly(self.N, terms)

    def skew_derivation(self, k: int, poly: NCPoly) -> NCPoly:
        """delta_k extended by the twisted Leibniz rule
        delta_k(uv) = sigma_k(u) delta_k(v) + delta_k(u) v."""
        if not poly.supported_below(k):
            raise PresentationError(
                "skew derivation delta_%d applied outside its domain" % (k + 1))
        out = NCPoly.zero(self.N)
        for exp, coeff in poly.terms.items():
            out = out + self._delta_mono(k, exp).scalar_mul(coeff)
        return out

    def _delta_mono(self, k: int, exp: tuple[int, ...]) -> NCPoly:
        key = (k, exp)
        cached = self._deltacache.get(key)
        if cached is not None:
            return cached
        low = None
        for i, a in enumerate(exp):
            if a:
                low = i
                break
        if low is None:
            result = NCPoly.zero(self.N)
        else:
            rest = vec_sub(exp, unit_vec(self.N, low))
            lam = LaurentScalar.v_power(self.lam_vexp(k, low))
            part1 = self._gen_times_poly(low, self._delta_mono(k, rest)).scalar_mul(lam)
            dk = self.delta.get((k, low))
            if dk is None:
                result = part1
            else:
                result = part1 + self.multiply(dk, NCPoly.monomial(self.N, rest))
        self._deltacache[key] = result
        return result


# -- validation -------------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)
    nilpotency_steps: int = 0

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, ok, detail))

    def find(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        """All structural CGL checks pass (symmetry tracked separately)."""
        return all(c.ok for c in self.checks if c.name != "symmetry")

    @property
    def symmetric(self) -> bool:
        return self.find("symmetry").ok


def validate_cgl(p: CGLPresentation, nilpotency_cap: int = 64) -> ValidationReport:
    """Check the defining conditions of a quantum nilpotent presentation.

    Local nilpotency is certified on generators up to the iteration cap and
    extends by the Leibniz rule; associativity is spot-checked on all
    descending generator triples.  The symmetry check asks that every
    commutator lands strictly between its two generators.
    """
    report = ValidationReport()
    n = p.N

    bad = []
    for (k, l), poly in sorted(p.delta.items()):
        want = vec_add(p.weights[k], p.weights[l])
        got = homogeneous_weight(poly, p.weights)
        if got != want:
            bad.append("delta_%d(x_%d) has weight %s, expected %s"
                       % (k + 1, l + 1, got, want))
    report.add("delta-homogeneity", not bad, "; ".join(bad))

    bad = ["lambda_%d = 1 (v-exponent 0)" % (k + 1)
           for k in range(n) if p.lam_vexp(k, k) == 0]
    report.add("nonzero-eigenvalues", not bad, "; ".join(bad))

    bad = []
    worst = 0
    for k in range(1, n):
        for l in range(k):
            steps = 0
            current = NCPoly.generator(n, l)
            while not current.is_zero():
                if steps >= nilpotency_cap:
                    bad.append("delta_%d on x_%d still nonzero after %d steps"
                               % (k + 1, l + 1, nilpotency_cap))
                    break
                current = p.skew_derivation(k, current)
                steps += 1
            worst = max(worst, steps)
    report.add("local-nilpotency", not bad, "; ".join(bad))
    report.nilpotency_steps = worst

    bad = []
    for k in range(2, n):
        xk = NCPoly.generator(n, k)
        for l in range(1, k):
            xl = NCPoly.generator(n, l)
            for m in range(l):
                xm = NCPoly.generator(n, m)
                left = p.multiply(p.multiply(xk, xl), xm)
                right = p.multiply(xk, p.multiply(xl, xm))
                if left != right:
                    bad.append("triple (%d, %d, %d)" % (k + 1, l + 1, m + 1))
    report.add("associativity", not bad, "; ".join(bad))

    bad = []
    for (k, l), poly in sorted(p.delta.items()):
        for exp in poly.terms:
            if any(exp[i] for i in range(l + 1)) or any(exp[i] for i in range(k, n)):
                bad.append("delta_%d(x_%d) leaves the window (x_%d..x_%d)"
                           % (k + 1, l + 1, l + 2, k))
                break
    report.add("symmetry", not bad, "; ".join(bad))
    return report


# -- reverse-order torus elements -------------------------------------------


@dataclass
class HStarResult:
    vectors: tuple[tuple[int, ...], ...]
    lamstar_vexp: tuple[int, ...]
    unique: tuple[bool, ...]


def solve_h_star(p: CGLPresentation) -> HStarResult:
    """Integer torus elements acting as the inverse eigenvalues from above.

    For each k this solves <a, chi_l> = -<h_l, chi_k> over l > k.  When the
    same relation can also be satisfied for l <= k we take that canonical
    completion (it pins the otherwise-free own-eigenvalue to the inverse of
    lambda_k); otherwise free directions are adjusted so the own-eigenvalue
    is nonzero whenever possible.
    """
    vectors = []
    vexps = []
    unique_flags = []
    for k in range(p.N):
        rows = [list(p.weights[l]) for l in range(k + 1, p.N)]
        rhs = [-p.lam_qexp(l, k) for l in range(k + 1, p.N)]
        solved = solve_integer(rows, rhs) if rows else ([0] * p.r, _full_kernel(p.r))
        if solved is None:
            raise InfeasibleSystem(
                "no integer torus element inverts the action above x_%d; "
                "the presentation is not symmetric" % (k + 1))
        particular, kernel = solved
        extended_rows = [list(p.weights[l]) for l in range(p.N)]
        extended_rhs = [-p.lam_qexp(l, k) for l in range(p.N)]
        extended = solve_integer(extended_rows, extended_rhs)
        if extended is not None:
            choice = extended[0]
        else:
            choice = list(particular)
            if vec_dot(choice, p.weights[k]) == 0:
                for u in kernel:
                    if vec_dot(u, p.weights[k]) != 0:
                        choice = [a + b for a, b in zip(choice, u)]
                        break
        vectors.append(tuple(choice))
        vexps.append(2 * vec_dot(choice, p.weights[k]))
        unique_flags.append(not kernel)
    return HStarResult(tuple(vectors), tuple(vexps), tuple(unique_flags))


def _full_kernel(r: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(r)] for i in range(r)]


def ensure_hstar(p: CGLPresentation) -> CGLPresentation:
    """Attach reverse-order torus data, computing it when absent."""
    if p.hstar is not None:
        return p
    return p.with_hstar(solve_h_star(p).vectors)
