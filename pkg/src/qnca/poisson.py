"""Semiclassical counterpart: polynomial Poisson algebras whose brackets are
a diagonal derivation term plus lower-order corrections,

    {x_k, b} = d_{h_k}(b) x_k + delta_k(b)   for b below x_k,

with each delta_k locally nilpotent.  Everything mirrors the quantum side
additively: commutation v-exponents become rational pairings, normality
becomes a scalar multiple under the bracket, and the seed solve uses the
additive pairing table.  The base field has characteristic zero throughout
this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (DegreeCapExceeded, InfeasibleSystem, PresentationError,
                     UniquenessViolation, ValidationFailure)
from .lattice import rl_lex_key, unit_vec, vec_add, vec_sub
from .linalg import integral_or_raise, solve_rational, solve_unique_rational
from .ore import Check, ValidationReport, mono_weight


class CPoly:
    """A commutative polynomial with exact rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.n = n
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                if len(exp) != n:
                    raise ValueError("exponent vector %r has length != %d" % (exp, n))
                c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if c != 0:
                    clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def zero(cls, n: int) -> "CPoly":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "CPoly":
        return cls(n, {(0,) * n: Fraction(1)})

    @classmethod
    def monomial(cls, n: int, exp: Sequence[int], coeff=1) -> "CPoly":
        return cls(n, {tuple(exp): Fraction(coeff)})

    @classmethod
    def generator(cls, n: int, k: int) -> "CPoly":
        return cls.monomial(n, unit_vec(n, k))

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items())

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=rl_lex_key)
        return exp, self.terms[exp]

    def supported_below(self, k: int) -> bool:
        return all(not any(exp[k:]) for exp in self.terms)

    def __add__(self, other: "CPoly") -> "CPoly":
        if self.n != other.n:
            raise ValueError("mixed generator counts")
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, Fraction(0)) + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return CPoly(self.n, terms)

    def __sub__(self, other: "CPoly") -> "CPoly":
        return self + (-other)

    def __neg__(self) -> "CPoly":
        return CPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "CPoly") -> "CPoly":
        if self.n != other.n:
            raise ValueError("mixed generator counts")
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = vec_add(e1, e2)
                s = terms.get(key, Fraction(0)) + c1 * c2
                if s == 0:
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return CPoly(self.n, terms)

    def scale(self, c) -> "CPoly":
        c = Fraction(c)
        if c == 0:
            return CPoly.zero(self.n)
        return CPoly(self.n, {e: k * c for e, k in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        from .formats import cpoly_to_text
        return "CPoly(%s)" % cpoly_to_text(self)


class PoissonPresentation:
    """Nilpotent semi-quadratic Poisson structure on a polynomial algebra.

    h holds one rational vector per generator; only its pairings with the
    weight lattice enter any computation.  delta maps (k, l) with k > l to
    the lower-order part of {x_k, x_l} - <h_k, chi_l> x_k x_l.
    """

    __slots__ = ("N", "r", "weights", "h", "hstar", "delta", "_bracket_cache")

    def __init__(self, weights: Sequence[Sequence[int]], h: Sequence[Sequence],
                 delta: Mapping[tuple[int, int], CPoly] | None = None,
                 hstar: Sequence[Sequence] | None = None):
        self.N = len(weights)
        self.r = len(weights[0]) if self.N else 0
        self.weights = tuple(tuple(int(x) for x in w) for w in weights)
        if len(h) != self.N:
            raise PresentationError("need one torus vector per generator")
        self.h = tuple(tuple(Fraction(x) for x in v) for v in h)
        if any(len(w) != self.r for w in self.weights) or any(len(v) != self.r for v in self.h):
            raise PresentationError("inconsistent torus rank")
        self.hstar = (None if hstar is None
                      else tuple(tuple(Fraction(x) for x in v) for v in hstar))
        clean: dict[tuple[int, int], CPoly] = {}
        for (k, l), poly in (delta or {}).items():
            if not (0 <= l < k < self.N):
                raise PresentationError("delta index pair (%d, %d) out of order" % (k, l))
            if poly.n != self.N:
                raise PresentationError("delta polynomial has wrong width")
            if poly.is_zero():
                continue
            if not poly.supported_below(k):
                raise PresentationError(
                    "delta_%d(x_%d) escapes the subalgebra below %d" % (k + 1, l + 1, k + 1))
            clean[(k, l)] = poly
        self.delta = clean
        self._bracket_cache: dict = {}

    def with_hstar(self, hstar: Sequence[Sequence]) -> "PoissonPresentation":
        out = object.__new__(PoissonPresentation)
        out.N, out.r = self.N, self.r
        out.weights, out.delta = self.weights, self.delta
        out.h = self.h
        out.hstar = tuple(tuple(Fraction(x) for x in v) for v in hstar)
        out._bracket_cache = self._bracket_cache
        return out

    def pairing(self, k: int, l: int) -> Fraction:
        """<h_k, chi_l>, the semiclassical commutation constant."""
        return sum((a * b for a, b in zip(self.h[k], self.weights[l])), Fraction(0))

    def pairing_star(self, k: int, l: int) -> Fraction:
        if self.hstar is None:
            raise PresentationError("presentation has no hstar data")
        return sum((a * b for a, b in zip(self.hstar[k], self.weights[l])), Fraction(0))

    def delta_image(self, k: int, l: int) -> CPoly:
        return self.delta.get((k, l), CPoly.zero(self.N))

    def delta_vanishes_below(self, k: int) -> bool:
        return all((k, l) not in self.delta for l in range(k))

    def generator_bracket(self, k: int, l: int) -> CPoly:
        """{x_k, x_l} as a polynomial."""
        if k == l:
            return CPoly.zero(self.N)
        if k < l:
            return -self.generator_bracket(l, k)
        key = (k, l)
        cached = self._bracket_cache.get(key)
        if cached is None:
            quad = CPoly.monomial(self.N, vec_add(unit_vec(self.N, k), unit_vec(self.N, l)),
                                  self.pairing(k, l))
            cached = quad + self.delta_image(k, l)
            self._bracket_cache[key] = cached
        return cached

    def bracket(self, a: CPoly, b: CPoly) -> CPoly:
        """Biderivation extension of the generator brackets."""
        n = self.N
        out = CPoly.zero(n)
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                for k in range(n):
                    if not ea[k]:
                        continue
                    ek = vec_sub(ea, unit_vec(n, k))
                    for l in range(n):
                        if not eb[l]:
                            continue
                        base = self.generator_bracket(k, l)
                        if base.is_zero():
                            continue
                        el = vec_sub(eb, unit_vec(n, l))
                        factor = ca * cb * ea[k] * eb[l]
                        shell = CPoly.monomial(n, vec_add(ek, el), factor)
                        out = out + shell * base
        return out

    def derivation(self, k: int, b: CPoly) -> CPoly:
        """d_{h_k}: scales each monomial by the pairing with its weight."""
        terms = {}
        for exp, coeff in b.terms.items():
            w = mono_weight(exp, self.weights)
            value = sum((a * x for a, x in zip(self.h[k], w)), Fraction(0))
            if value * coeff != 0:
                terms[exp] = value * coeff
        return CPoly(self.N, terms)

    def skew_part(self, k: int, b: CPoly) -> CPoly:
        """delta_k(b) = {x_k, b} - d_{h_k}(b) x_k for b below x_k."""
        if not b.supported_below(k):
            raise PresentationError(
                "delta_%d applied outside the subalgebra below x_%d" % (k + 1, k + 1))
        xk = CPoly.generator(self.N, k)
        return self.bracket(xk, b) - self.derivation(k, b) * xk


def homogeneous_cweight(poly: CPoly, weights) -> tuple[int, ...] | None:
    weight = None
    for exp in poly.terms:
        w = mono_weight(exp, weights)
        if weight is None:
            weight = w
        elif weight != w:
            return None
    return weight


def validate_poisson(p: PoissonPresentation, nilpotency_cap: int = 64) -> ValidationReport:
    """Defining conditions of the Poisson structure: homogeneity of the
    lower-order parts, nonzero diagonal eigenvalues, local nilpotency,
    the Jacobi identity on generator triples (a triderivation vanishes
    everywhere once it vanishes there), and the reverse-order window."""
    report = ValidationReport()
    n = p.N

    bad = []
    for (k, l), poly in sorted(p.delta.items()):
        want = vec_add(p.weights[k], p.weights[l])
        got = homogeneous_cweight(poly, p.weights)
        if got != want:
            bad.append("delta_%d(x_%d) has weight %s, expected %s"
                       % (k + 1, l + 1, got, want))
    report.add("delta-homogeneity", not bad, "; ".join(bad))

    bad = ["<h_%d, chi_%d> = 0" % (k + 1, k + 1)
           for k in range(n) if p.pairing(k, k) == 0]
    report.add("nonzero-eigenvalues", not bad, "; ".join(bad))

    bad = []
    worst = 0
    for k in range(1, n):
        for l in range(k):
            steps = 0
            current = CPoly.generator(n, l)
            while not current.is_zero():
                if steps >= nilpotency_cap:
                    bad.append("delta_%d on x_%d still nonzero after %d steps"
                               % (k + 1, l + 1, nilpotency_cap))
                    break
                current = p.skew_part(k, current)
                steps += 1
            worst = max(worst, steps)
    report.add("local-nilpotency", not bad, "; ".join(bad))
    report.nilpotency_steps = worst

    bad = []
    for i in range(n):
        xi = CPoly.generator(n, i)
        for j in range(i + 1, n):
            xj = CPoly.generator(n, j)
            for k in range(j + 1, n):
                xk = CPoly.generator(n, k)
                jac = p.bracket(xi, p.bracket(xj, xk)) \
                    + p.bracket(xj, p.bracket(xk, xi)) \
                    + p.bracket(xk, p.bracket(xi, xj))
                if not jac.is_zero():
                    bad.append("triple (%d, %d, %d)" % (i + 1, j + 1, k + 1))
    report.add("jacobi", not bad, "; ".join(bad))

    bad = []
    for (k, l), poly in sorted(p.delta.items()):
        for exp in poly.terms:
            if any(exp[i] for i in range(l + 1)) or any(exp[i] for i in range(k, n)):
                bad.append("delta_%d(x_%d) leaves the window (x_%d..x_%d)"
                           % (k + 1, l + 1, l + 2, k))
                break
    report.add("symmetry", not bad, "; ".join(bad))
    return report


def solve_h_star_poisson(p: PoissonPresentation):
    """Rational reverse-order vectors: <a, chi_l> = -<h_l, chi_k> for l > k,
    with the canonical completion over all l when available."""
    vectors = []
    for k in range(p.N):
        extended_rows = [[Fraction(x) for x in p.weights[l]] for l in range(p.N)]
        extended_rhs = [-p.pairing(l, k) for l in range(p.N)]
        solved = solve_rational(extended_rows, extended_rhs)
        if solved is None:
            rows = [[Fraction(x) for x in p.weights[l]] for l in range(k + 1, p.N)]
            rhs = [-p.pairing(l, k) for l in range(k + 1, p.N)]
            solved = solve_rational(rows, rhs) if rows else ([Fraction(0)] * p.r, [])
            if solved is None:
                raise InfeasibleSystem(
                    "no torus vector inverts the action above x_%d; the Poisson "
                    "presentation is not symmetric" % (k + 1))
        vectors.append(tuple(solved[0]))
    return tuple(vectors)


def ensure_hstar_poisson(p: PoissonPresentation) -> PoissonPresentation:
    if p.hstar is not None:
        return p
    return p.with_hstar(solve_h_star_poisson(p))


# -- Poisson prime ladders -----------------------------------------------------


@dataclass(frozen=True)
class PoissonPrimeSequence:
    eta: tuple[int, ...]
    pred: tuple[int | None, ...]
    succ: tuple[int | None, ...]
    c: dict[int, CPoly]
    y: tuple[CPoly, ...]
    ebar: tuple[tuple[int, ...], ...]
    rank: int

    @property
    def n(self) -> int:
        return len(self.eta)

    @property
    def exchangeable(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.n) if self.succ[k] is not None)


def pairing_table(p: PoissonPresentation):
    """Antisymmetric rational table of the bracket's leading constants."""
    n = p.N
    mat = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        for l in range(k):
            value = p.pairing(k, l)
            mat[k][l] = value
            mat[l][k] = -value
    return tuple(tuple(row) for row in mat)


def pair_vexp(table, f, g) -> Fraction:
    total = Fraction(0)
    for i, fi in enumerate(f):
        if fi:
            row = table[i]
            total += fi * sum((row[j] * gj for j, gj in enumerate(g) if gj), Fraction(0))
    return total


def poisson_prime_sequence(p: PoissonPresentation, degree_cap: int = 12) -> PoissonPrimeSequence:
    """Poisson prime ladder via the same recursion as the quantum side,
    with normality {y, x_j} = beta_j x_j y imposed as a rational linear
    system, beta_j forced by leading terms."""
    table = pairing_table(p)
    n = p.N
    eta: list[int] = []
    pred: list[int | None] = []
    succ: list[int | None] = [None] * n
    ys: list[CPoly] = []
    ebars: list[tuple[int, ...]] = []
    corrections: dict[int, CPoly] = {}
    next_level = 1

    for k in range(n):
        if p.delta_vanishes_below(k):
            eta.append(next_level)
            next_level += 1
            pred.append(None)
            ys.append(CPoly.generator(n, k))
            ebars.append(unit_vec(n, k))
            continue
        candidates = [l for l in range(k) if succ[l] is None]
        admitting = []
        for l in candidates:
            res = _solve_poisson_correction(p, table, ys[l], ebars[l], k, degree_cap)
            if res is not None:
                admitting.append((l, res))
        if not admitting:
            raise DegreeCapExceeded(
                "no predecessor of x_%d admits a Poisson correction within degree %d"
                % (k + 1, degree_cap))
        if len(admitting) > 1:
            raise UniquenessViolation(
                "generators %s all admit Poisson corrections for x_%d"
                % ([l + 1 for l, _ in admitting], k + 1))
        l, (status, correction) = admitting[0]
        if status == "ambiguous":
            raise UniquenessViolation(
                "Poisson correction for x_%d over x_%d is not unique" % (k + 1, l + 1))
        y_new = ys[l] * CPoly.generator(n, k) - correction
        ebar_new = vec_add(ebars[l], unit_vec(n, k))
        lead_exp, lead_coeff = y_new.leading()
        if lead_exp != ebar_new or lead_coeff != 1:
            raise ValidationFailure(
                "Poisson prime at x_%d has unexpected leading term" % (k + 1,))
        if homogeneous_cweight(y_new, p.weights) is None:
            raise ValidationFailure("Poisson prime at x_%d is not homogeneous" % (k + 1,))
        eta.append(eta[l])
        pred.append(l)
        succ[l] = k
        ys.append(y_new)
        ebars.append(ebar_new)
        corrections[k] = correction

    return PoissonPrimeSequence(tuple(eta), tuple(pred), tuple(succ), corrections,
                                tuple(ys), tuple(ebars), rank=len(set(eta)))


def _solve_poisson_correction(p: PoissonPresentation, table, y_pred: CPoly,
                              ebar_pred: tuple[int, ...], k: int, degree_cap: int):
    from .ore import homogeneous_monomials
    n = p.N
    ebar_new = vec_add(ebar_pred, unit_vec(n, k))
    target_weight = mono_weight(ebar_new, p.weights)
    g = y_pred * CPoly.generator(n, k)

    knowns = []
    betas = []
    for j in range(k + 1):
        xj = CPoly.generator(n, j)
        beta = pair_vexp(table, ebar_new, unit_vec(n, j))
        knowns.append(p.bracket(g, xj) - (xj * g).scale(beta))
        betas.append((xj, beta))

    degree = min(max(y_pred.total_degree() + 1, 1), degree_cap)
    while True:
        basis = homogeneous_monomials(n, p.weights, k, target_weight, degree)
        outcome = _try_poisson_basis(p, basis, knowns, betas, n)
        if outcome is not None:
            return outcome
        if degree >= degree_cap:
            return None
        degree = min(degree * 2, degree_cap)


def _try_poisson_basis(p, basis, knowns, betas, n):
    columns = []
    for mono in basis:
        mono_poly = CPoly.monomial(n, mono)
        per_j = []
        for xj, beta in betas:
            per_j.append(p.bracket(mono_poly, xj) - (xj * mono_poly).scale(beta))
        columns.append(per_j)
    row_keys = []
    seen = set()
    for j, known in enumerate(knowns):
        for exp in known.terms:
            if (j, exp) not in seen:
                seen.add((j, exp))
                row_keys.append((j, exp))
    for per_j in columns:
        for j, poly in enumerate(per_j):
            for exp in poly.terms:
                if (j, exp) not in seen:
                    seen.add((j, exp))
                    row_keys.append((j, exp))
    row_keys.sort(key=lambda item: (item[0], rl_lex_key(item[1])))
    matrix = [[per_j[j].coeff(exp) for per_j in columns] for j, exp in row_keys]
    rhs = [knowns[j].coeff(exp) for j, exp in row_keys]
    if not matrix:
        return ("unique", CPoly.zero(n))
    solved = solve_rational(matrix, rhs)
    if solved is None:
        return None
    solution, free = solved
    if free:
        return ("ambiguous", None)
    terms = {mono: value for mono, value in zip(basis, solution) if value != 0}
    return ("unique", CPoly(n, terms))


# -- classical seeds and compatibility ------------------------------------------


@dataclass(frozen=True)
class PoissonSeedReport:
    b: tuple[tuple[int, ...], ...]
    ex: tuple[int, ...]
    dstar: dict[int, Fraction]
    log_pairs: tuple[tuple[Fraction, ...], ...]
    notes: tuple[str, ...] = ()


def classical_seed_and_gsv_check(p: PoissonPresentation,
                                 seq: PoissonPrimeSequence) -> PoissonSeedReport:
    """Verify that the prime ladder is log-canonical for the bracket and
    solve the additive exchange-matrix system.

    {y_k, y_l} must equal the pairing of ladder exponents times y_k y_l;
    the matrix columns then solve sum_l b_l * pair(ebar_l, ebar_m) =
    dstar_k delta_{km} together with weight-zero, exactly as on the
    quantum side but over the rationals.
    """
    p = ensure_hstar_poisson(p)
    table = pairing_table(p)
    n = seq.n

    log_pairs = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        for l in range(n):
            log_pairs[k][l] = pair_vexp(table, seq.ebar[k], seq.ebar[l])
    for k in range(n):
        for l in range(k + 1, n):
            got = p.bracket(seq.y[k], seq.y[l])
            want = (seq.y[k] * seq.y[l]).scale(log_pairs[k][l])
            if got != want:
                raise ValidationFailure(
                    "pair (y_%d, y_%d) is not log-canonical" % (k + 1, l + 1))

    ex = seq.exchangeable
    dstar = {k: p.pairing_star(k, k) for k in ex}
    by_level: dict[int, list[int]] = {}
    for k in ex:
        by_level.setdefault(seq.eta[k], []).append(k)
    for level, members in sorted(by_level.items()):
        if len({dstar[k] for k in members}) > 1:
            raise ValidationFailure(
                "exchangeable indices on level %d carry different inverse "
                "eigenvalues" % level)
    for k in ex:
        l = seq.succ[k]
        while l is not None:
            if dstar[k] != -p.pairing(l, l):
                raise ValidationFailure(
                    "inverse eigenvalue at x_%d does not negate the eigenvalue "
                    "at x_%d" % (k + 1, l + 1))
            l = seq.succ[l]

    ladder_weights = [mono_weight(seq.ebar[l], p.weights) for l in range(n)]
    r = p.r
    columns = []
    for k in ex:
        matrix = []
        rhs = []
        for m in range(n):
            matrix.append([log_pairs[l][m] for l in range(n)])
            rhs.append(dstar[k] if m == k else Fraction(0))
        for t in range(r):
            matrix.append([Fraction(ladder_weights[l][t]) for l in range(n)])
            rhs.append(Fraction(0))
        solution = solve_unique_rational(matrix, rhs)
        columns.append(integral_or_raise(solution))
    b = tuple(tuple(col[l] for col in columns) for l in range(n))
    return PoissonSeedReport(b, ex, dstar,
                             tuple(tuple(row) for row in log_pairs))


# -- the semiclassical quantum-matrix fixture ------------------------------------


@dataclass(frozen=True)
class PoissonMatrixAlgebra:
    m: int
    n: int
    presentation: PoissonPresentation
    names: tuple[str, ...]

    def gen_index(self, i: int, j: int) -> int:
        return (i - 1) * self.n + j - 1


def poisson_matrices(m: int, n: int) -> PoissonMatrixAlgebra:
    """Semiclassical limit of the quantum matrix algebra: same torus data,
    brackets {t_ij, t_kj} = t_ij t_kj down columns and rows, zero on
    antidiagonal pairs, and {t_ij, t_kl} = 2 t_il t_kj on diagonal pairs."""
    from .catalog import quantum_matrix_names
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    size = m * n
    rank = m + n
    weights = []
    h = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            chi = [0] * rank
            chi[i - 1] = 1
            chi[m + j - 1] = -1
            weights.append(tuple(chi))
            vec = [0] * rank
            vec[i - 1] = -1
            vec[m + j - 1] = 1
            h.append(tuple(Fraction(x) for x in vec))
    delta = {}
    for i2 in range(1, m + 1):
        for j2 in range(1, n + 1):
            k = (i2 - 1) * n + j2 - 1
            for i1 in range(1, i2):
                for j1 in range(1, j2):
                    l = (i1 - 1) * n + j1 - 1
                    exp = [0] * size
                    exp[(i1 - 1) * n + j2 - 1] += 1
                    exp[(i2 - 1) * n + j1 - 1] += 1
                    delta[(k, l)] = CPoly.monomial(size, exp, Fraction(-2))
    pres = PoissonPresentation(weights, h, delta)
    return PoissonMatrixAlgebra(m, n, pres, quantum_matrix_names(m, n))
