"""Exchangeable-direction conditions, the exchange matrix, and seed assembly.

The exchange matrix is the unique integer solution of a linear system in
exponent form: each column pairs to the distinguished direction under the
quasi-commutation form on ladder exponents and is torus-weight free.  The
seed packages that matrix with the commutation-exponent matrix of the
prime elements and the frame variables based on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasibleSystem, ValidationFailure
from .lattice import is_antisymmetric, unit_vec
from .linalg import integral_or_raise, solve_unique_rational
from .ore import CGLPresentation, ensure_hstar
from .primes import OmegaTable, PrimeSequence
from .scalars import QPower
from .torus import TorusElement


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the exchangeability conditions.

    dstar maps each exchangeable index to the v-exponent of the inverse
    eigenvalue of its reverse-order torus element; level_factors carries
    the positive integers, one per level, after gcd normalization.  The
    square-root condition is automatic in the v-exponent encoding and is
    only reported.
    """
    dstar: dict[int, int]
    level_factors: dict[int, int]
    lamstar_vexp: tuple[int, ...]
    notes: tuple[str, ...]


def check_conditions(p: CGLPresentation, seq: PrimeSequence) -> ConditionReport:
    p = ensure_hstar(p)
    notes = ["square-root condition holds automatically: all commutation "
             "scalars are integer powers of v"]
    lamstar = tuple(p.lamstar_vexp(k) for k in range(p.N))
    ex = seq.exchangeable

    # Same inverse eigenvalue along each ladder, restricted to
    # exchangeable indices.
    by_level: dict[int, list[int]] = {}
    for k in ex:
        by_level.setdefault(seq.eta[k], []).append(k)
    for level, members in sorted(by_level.items()):
        values = {lamstar[k] for k in members}
        if len(values) > 1:
            raise ValidationFailure(
                "exchangeable indices %s on level %d carry different inverse "
                "eigenvalues %s" % ([k + 1 for k in members], level, sorted(values)))

    # Consistency with the forward eigenvalues: the inverse eigenvalue at k
    # equals the inverse of the eigenvalue at any later ladder member.
    for k in ex:
        l = seq.succ[k]
        while l is not None:
            if lamstar[k] != -p.lam_vexp(l, l):
                raise ValidationFailure(
                    "inverse eigenvalue at x_%d (v-exponent %d) does not invert "
                    "the eigenvalue at x_%d (v-exponent %d)"
                    % (k + 1, lamstar[k], l + 1, p.lam_vexp(l, l)))
            l = seq.succ[l]

    # Positive integers per level making the eigenvalue powers agree.
    exponents = {level: lamstar[members[0]] for level, members in by_level.items()}
    if exponents:
        if any(e == 0 for e in exponents.values()):
            raise ValidationFailure("zero inverse-eigenvalue exponent on a ladder")
        if len({e > 0 for e in exponents.values()}) > 1:
            raise ValidationFailure(
                "inverse-eigenvalue exponents %s mix signs; no positive scaling "
                "exists" % (sorted(exponents.values()),))
        g = 0
        for e in exponents.values():
            g = _gcd(g, abs(e))
        level_factors = {level: abs(e) // g for level, e in sorted(exponents.items())}
    else:
        level_factors = {}
    for level in sorted(set(seq.eta)):
        level_factors.setdefault(level, 1)

    dstar = {k: lamstar[k] for k in ex}
    for k in ex:
        for l in ex:
            if dstar[k] * level_factors[seq.eta[l]] != dstar[l] * level_factors[seq.eta[k]]:
                raise ValidationFailure(
                    "no positive integer scaling balances directions %d and %d"
                    % (k + 1, l + 1))
    return ConditionReport(dstar, level_factors, lamstar, tuple(notes))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def solve_exchange_matrix(seq: PrimeSequence, table: OmegaTable,
                          dstar: dict[int, int], weights) -> tuple[tuple[int, ...], ...]:
    """Solve for the exchange matrix column by column.

    For the column at direction k the requirements are
      sum_l b_l * omega(ebar_l, ebar_n) = dstar_k * delta_{kn}   for all n,
      sum_l b_l * ladder_weight_l = 0,
    an overdetermined integer system with a unique rational solution; the
    solve certifies full column rank and integrality.
    """
    n = seq.n
    ex = seq.exchangeable
    lam = [[table.omega_vexp(seq.ebar[l], seq.ebar[m]) for m in range(n)]
           for l in range(n)]
    ladder_weights = [seq.ladder_weight(l, weights) for l in range(n)]
    r = len(weights[0]) if n else 0
    columns = []
    for k in ex:
        matrix = []
        rhs = []
        for m in range(n):
            matrix.append([lam[l][m] for l in range(n)])
            rhs.append(dstar[k] if m == k else 0)
        for t in range(r):
            matrix.append([ladder_weights[l][t] for l in range(n)])
            rhs.append(0)
        solution = solve_unique_rational(matrix, rhs)
        columns.append(integral_or_raise(solution))
    return tuple(tuple(col[l] for col in columns) for l in range(n))


@dataclass(frozen=True)
class QuantumSeed:
    """A quantum seed in the coordinates of its own frame.

    lambda_mat[k][l] is the v-exponent with which variable k commutes past
    variable l; b has one column per exchangeable index; vars are torus
    elements over the base frame, so mutated seeds remain comparable.
    base_lambda is the commutation matrix of that base frame (equal to
    lambda_mat for the initial seed) and is carried unchanged through
    mutation.
    """
    n: int
    lambda_mat: tuple[tuple[int, ...], ...]
    b: tuple[tuple[int, ...], ...]
    ex: tuple[int, ...]
    dstar: tuple[int, ...]
    vars: tuple[TorusElement, ...]
    zeta: tuple[QPower, ...]
    base_lambda: tuple[tuple[int, ...], ...]

    @property
    def frozen(self) -> tuple[int, ...]:
        ex = set(self.ex)
        return tuple(k for k in range(self.n) if k not in ex)

    def column(self, k: int) -> tuple[int, ...]:
        return tuple(self.b[l][self.ex.index(k)] for l in range(self.n))

    def verify_compatibility(self) -> None:
        """The defining exponent identity, re-checked exactly."""
        for idx, k in enumerate(self.ex):
            for m in range(self.n):
                total = sum(self.b[l][idx] * self.lambda_mat[l][m]
                            for l in range(self.n))
                want = self.dstar[idx] if m == k else 0
                if total != want:
                    raise ValidationFailure(
                        "compatibility fails at column %d against %d: %d != %d"
                        % (k + 1, m + 1, total, want))


def build_seed(p: CGLPresentation, seq: PrimeSequence, table: OmegaTable,
               b: tuple[tuple[int, ...], ...], dstar: dict[int, int],
               zeta: dict[int, QPower] | None = None) -> QuantumSeed:
    """Assemble the initial seed: commutation exponents of the prime
    elements, the exchange matrix, and frame variables (optionally rescaled
    by user-supplied unit scalars)."""
    n = seq.n
    lam = tuple(tuple(table.omega_vexp(seq.ebar[k], seq.ebar[l]) for l in range(n))
                for k in range(n))
    if not is_antisymmetric(lam):
        raise ValidationFailure("commutation exponent matrix is not antisymmetric")
    if any(any(e % 2 for e in row) for row in lam):
        raise ValidationFailure("commutation exponents must be even in v")
    ex = seq.exchangeable
    zetas = tuple((zeta or {}).get(k, QPower(0)) for k in range(n))
    variables = tuple(
        TorusElement.monomial(n, unit_vec(n, k), zetas[k].to_scalar())
        for k in range(n))
    seed = QuantumSeed(n, lam, b, ex, tuple(dstar[k] for k in ex),
                       variables, zetas, base_lambda=lam)
    seed.verify_compatibility()
    return seed


def initial_seed(p: CGLPresentation, degree_cap: int = 12,
                 zeta: dict[int, QPower] | None = None):
    """Full pipeline from a presentation to its initial quantum seed.

    Returns (presentation-with-hstar, sequence, table, report, seed)."""
    from .primes import compute_prime_sequence
    p = ensure_hstar(p)
    table = OmegaTable.from_presentation(p)
    seq = compute_prime_sequence(p, degree_cap=degree_cap)
    report = check_conditions(p, seq)
    b = solve_exchange_matrix(seq, table, report.dstar, p.weights)
    seed = build_seed(p, seq, table, b, report.dstar, zeta)
    return p, seq, table, report, seed
