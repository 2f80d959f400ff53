"""Ladders of homogeneous prime elements and the quasi-commutation pairing.

The construction walks the generator chain once.  A generator whose skew
derivation vanishes on everything below it starts a fresh ladder; any
other generator extends the unique unfinished ladder for which the
correction term

    y = y_pred * x_k - c

can be completed to an element that is normal in the subalgebra generated
so far.  Normality is imposed as an exact linear system over the scalar
field, with the commutation scalar forced by leading-term comparison.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import (DegreeCapExceeded, NonLaurentSolution, PresentationError,
                     UniquenessViolation, ValidationFailure)
from .lattice import bilinear, rl_lex_key, unit_vec, vec_add, vec_dot
from .linalg import solve_laurent
from .ore import (CGLPresentation, NCPoly, ensure_hstar, homogeneous_monomials,
                  mono_weight)
from .scalars import LaurentScalar, QPower


@dataclass(frozen=True)
class OmegaTable:
    """v-exponents of the commutation bicharacter on the standard basis:
    entry [k][l] with k > l is the v-exponent of the eigenvalue of h_k on
    x_l; the table is antisymmetric with zero diagonal."""

    vexp: tuple[tuple[int, ...], ...]

    @classmethod
    def from_presentation(cls, p: CGLPresentation) -> "OmegaTable":
        n = p.N
        mat = [[0] * n for _ in range(n)]
        for k in range(n):
            for l in range(k):
                e = p.lam_vexp(k, l)
                mat[k][l] = e
                mat[l][k] = -e
        return cls(tuple(tuple(row) for row in mat))

    def omega_vexp(self, f: Sequence[int], g: Sequence[int]) -> int:
        return bilinear(f, self.vexp, g)

    def omega(self, f: Sequence[int], g: Sequence[int]) -> QPower:
        return QPower(self.omega_vexp(f, g))


@dataclass(frozen=True)
class PrimeSequence:
    """The ladder data: levels, predecessor/successor maps, corrections,
    the prime elements themselves, and their leading exponents."""

    eta: tuple[int, ...]
    pred: tuple[int | None, ...]
    succ: tuple[int | None, ...]
    c: dict[int, NCPoly]
    y: tuple[NCPoly, ...]
    ebar: tuple[tuple[int, ...], ...]
    rank: int

    @property
    def n(self) -> int:
        return len(self.eta)

    @property
    def exchangeable(self) -> tuple[int, ...]:
        return tuple(k for k in range(self.n) if self.succ[k] is not None)

    def ladder_weight(self, k: int, weights: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Torus weight of y_k (the sum over its ladder of generator weights)."""
        return mono_weight(self.ebar[k], weights)


def compute_prime_sequence(p: CGLPresentation, degree_cap: int = 12,
                           threads: int = 1) -> PrimeSequence:
    """The unique sequence of homogeneous prime elements of the subalgebra
    chain, together with its level-set combinatorics.

    Every unfinished ladder is tried as a predecessor and the results are
    collected before deciding, so the outcome does not depend on search
    order; exactly one candidate must admit a correction term.
    """
    table = OmegaTable.from_presentation(p)
    n = p.N
    eta: list[int] = []
    pred: list[int | None] = []
    succ: list[int | None] = [None] * n
    ys: list[NCPoly] = []
    ebars: list[tuple[int, ...]] = []
    corrections: dict[int, NCPoly] = {}
    next_level = 1

    for k in range(n):
        if p.delta_vanishes_below(k):
            eta.append(next_level)
            next_level += 1
            pred.append(None)
            ys.append(NCPoly.generator(n, k))
            ebars.append(unit_vec(n, k))
            continue

        candidates = [l for l in range(k) if succ[l] is None]

        def attempt(l: int):
            return _solve_correction(p, table, ys[l], ebars[l], k, degree_cap)

        if threads > 1 and len(candidates) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                outcomes = list(pool.map(attempt, candidates))
        else:
            outcomes = [attempt(l) for l in candidates]

        admitting = [(l, res) for l, res in zip(candidates, outcomes) if res is not None]
        if not admitting:
            raise DegreeCapExceeded(
                "no predecessor of x_%d admits a correction term within degree %d"
                % (k + 1, degree_cap))
        if len(admitting) > 1:
            raise UniquenessViolation(
                "generators %s all admit corrections for x_%d; input is not a "
                "quantum nilpotent presentation"
                % ([l + 1 for l, _ in admitting], k + 1))
        l, (status, correction) = admitting[0]
        if status == "ambiguous":
            raise UniquenessViolation(
                "correction term for x_%d over predecessor x_%d is not unique"
                % (k + 1, l + 1))

        y_new = p.multiply(ys[l], NCPoly.generator(n, k)) - correction
        ebar_new = vec_add(ebars[l], unit_vec(n, k))
        _check_new_prime(p, table, y_new, ebar_new, k)
        eta.append(eta[l])
        pred.append(l)
        succ[l] = k
        ys.append(y_new)
        ebars.append(ebar_new)
        corrections[k] = correction

    return PrimeSequence(tuple(eta), tuple(pred), tuple(succ), corrections,
                         tuple(ys), tuple(ebars), rank=len(set(eta)))


def _check_new_prime(p: CGLPresentation, table: OmegaTable, y: NCPoly,
                     ebar: tuple[int, ...], k: int) -> None:
    lead_exp, lead_coeff = y.leading()
    if lead_exp != ebar or not lead_coeff.is_one():
        raise ValidationFailure(
            "prime element at x_%d has leading term %s, expected the ladder "
            "monomial" % (k + 1, lead_exp))
    if _homogeneous(p, y) is None:
        raise ValidationFailure("prime element at x_%d is not homogeneous" % (k + 1))
    for j in range(k + 1):
        xj = NCPoly.generator(p.N, j)
        scalar = LaurentScalar.v_power(table.omega_vexp(ebar, unit_vec(p.N, j)))
        if p.multiply(y, xj) != p.multiply(xj, y).scalar_mul(scalar):
            raise ValidationFailure(
                "element at x_%d is not normal against x_%d" % (k + 1, j + 1))


def _homogeneous(p: CGLPresentation, poly: NCPoly):
    from .ore import homogeneous_weight
    return homogeneous_weight(poly, p.weights)


def _solve_correction(p: CGLPresentation, table: OmegaTable, y_pred: NCPoly,
                      ebar_pred: tuple[int, ...], k: int, degree_cap: int):
    """Find c with y_pred * x_k - c normal in the subalgebra up to x_k.

    Returns ("unique", c), ("ambiguous", None) when the solution space is
    positive-dimensional, or None when no solution exists within the cap.
    """
    n = p.N
    ebar_new = vec_add(ebar_pred, unit_vec(n, k))
    target_weight = mono_weight(ebar_new, p.weights)
    g = p.multiply(y_pred, NCPoly.generator(n, k))

    knowns = []
    commutators = []  # per j: function of a basis monomial
    for j in range(k + 1):
        xj = NCPoly.generator(n, j)
        scalar = LaurentScalar.v_power(table.omega_vexp(ebar_new, unit_vec(n, j)))
        knowns.append(p.multiply(g, xj) - p.multiply(xj, g).scalar_mul(scalar))
        commutators.append((xj, scalar))

    degree = min(max(y_pred.total_degree() + 1, 1), degree_cap)
    while True:
        basis = homogeneous_monomials(n, p.weights, k, target_weight, degree)
        outcome = _try_basis(p, basis, knowns, commutators, n)
        if outcome is not None:
            return outcome
        if degree >= degree_cap:
            return None
        degree = min(degree * 2, degree_cap)


def _try_basis(p, basis, knowns, commutators, n):
    columns = []
    for mono in basis:
        mono_poly = NCPoly.monomial(n, mono)
        per_j = []
        for xj, scalar in commutators:
            per_j.append(p.multiply(mono_poly, xj) - p.multiply(xj, mono_poly).scalar_mul(scalar))
        columns.append(per_j)

    row_keys: list[tuple[int, tuple[int, ...]]] = []
    seen = set()
    for j, known in enumerate(knowns):
        for exp in known.terms:
            key = (j, exp)
            if key not in seen:
                seen.add(key)
                row_keys.append(key)
    for per_j in columns:
        for j, poly in enumerate(per_j):
            for exp in poly.terms:
                key = (j, exp)
                if key not in seen:
                    seen.add(key)
                    row_keys.append(key)
    row_keys.sort(key=lambda item: (item[0], rl_lex_key(item[1])))

    matrix = []
    rhs = []
    for j, exp in row_keys:
        matrix.append([per_j[j].coeff(exp) for per_j in columns])
        rhs.append(knowns[j].coeff(exp))
    if not matrix:
        # No constraints at all: only the zero correction is consistent.
        return ("unique", NCPoly.zero(n))
    solved = solve_laurent(matrix, rhs)
    if solved is None:
        return None
    solution, free = solved
    if free:
        return ("ambiguous", None)
    terms = {}
    for mono, value in zip(basis, solution):
        if not value.is_zero():
            terms[mono] = value.to_laurent()
    return ("unique", NCPoly(n, terms))


def quasi_commutation_scalars(p: CGLPresentation, seq: PrimeSequence,
                              table: OmegaTable):
    """The pairwise commutation scalars of the prime elements, verified
    exactly against the algebra multiplication."""
    n = seq.n
    scalars = [[QPower(0)] * n for _ in range(n)]
    for k in range(n):
        for l in range(n):
            scalars[k][l] = QPower(table.omega_vexp(seq.ebar[k], seq.ebar[l]))
    for k in range(n):
        for l in range(k + 1, n):
            left = p.multiply(seq.y[k], seq.y[l])
            right = p.multiply(seq.y[l], seq.y[k]).scalar_mul(
                scalars[k][l].to_scalar())
            if left != right:
                raise ValidationFailure(
                    "prime elements %d and %d do not commute with the "
                    "predicted scalar" % (k + 1, l + 1))
    return tuple(tuple(row) for row in scalars)


# -- alternative generator orders ---------------------------------------------


def is_interval_permutation(tau: Sequence[int]) -> bool:
    """True when every prefix of images is an interval (0-based values)."""
    n = len(tau)
    if sorted(tau) != list(range(n)):
        return False
    lo = hi = tau[0]
    for value in tau[1:]:
        if value == lo - 1:
            lo = value
        elif value == hi + 1:
            hi = value
        else:
            return False
    return True


def enumerate_xi(n: int):
    """All permutations with interval prefixes, exactly 2^(n-1) of them.

    Each down-step bit extends the interval to the left; the start value
    is then forced.  Yields 0-based image tuples in a fixed order."""
    if n < 1:
        raise ValueError("need at least one generator")
    for mask in range(1 << (n - 1)):
        start = bin(mask).count("1")
        perm = [start]
        lo = hi = start
        for bit in range(n - 1):
            if (mask >> bit) & 1:
                lo -= 1
                perm.append(lo)
            else:
                hi += 1
                perm.append(hi)
        yield tuple(perm)


@dataclass(frozen=True)
class TauPresentation:
    presentation: CGLPresentation
    new_to_old: tuple[int, ...]
    old_to_new: tuple[int, ...]


def tau_presentation(p: CGLPresentation, tau: Sequence[int]) -> TauPresentation:
    """Reindex a symmetric presentation along an interval-prefix permutation.

    Generator j of the result is x_{tau(j)}; torus elements follow the
    direction of each step (fresh maximum keeps h, fresh minimum takes the
    reverse-order element), and the straightening data is recomputed by
    normal-forming the old commutators in the new order.
    """
    tau = tuple(int(t) for t in tau)
    if not is_interval_permutation(tau):
        raise ValueError("%s does not have interval prefixes" % (tau,))
    for (k, l), poly in p.delta.items():
        for exp in poly.terms:
            if any(exp[i] for i in range(l + 1)) or any(exp[i] for i in range(k, p.N)):
                raise PresentationError(
                    "presentation is not symmetric; cannot reorder generators")
    p = ensure_hstar(p)
    n = p.N
    inverse = [0] * n
    for j, old in enumerate(tau):
        inverse[old] = j

    new_weights = []
    new_h = []
    hi = tau[0]
    for j, old in enumerate(tau):
        new_weights.append(p.weights[old])
        if j == 0 or old == hi + 1:
            new_h.append(p.h[old])
        else:
            new_h.append(p.hstar[old])
        hi = max(hi, old)

    result = CGLPresentation(new_weights, new_h, {})
    # result.delta is filled in dependency order: the image for the pair
    # (j, i) only involves generators with new index below j, whose own
    # straightening data is already in place, so multiplication inside the
    # conversion never consults a missing entry.
    for j in range(n):
        for i in range(j):
            old_j, old_i = tau[j], tau[i]
            if old_j > old_i:
                lam_vexp = p.lam_vexp(old_j, old_i)
                source = p.delta_image(old_j, old_i)
                factor = LaurentScalar.one()
            else:
                lam_vexp = -p.lam_vexp(old_i, old_j)
                source = p.delta_image(old_i, old_j)
                factor = LaurentScalar.v_power(-p.lam_vexp(old_i, old_j)).scale(-1)
            if result.lam_vexp(j, i) != lam_vexp:
                raise PresentationError(
                    "reverse-order torus data is inconsistent at pair (%d, %d)"
                    % (j + 1, i + 1))
            if source.is_zero():
                continue
            converted = _convert_to_order(result, inverse, source).scalar_mul(factor)
            if converted.is_zero():
                continue
            if not converted.supported_below(j):
                raise PresentationError(
                    "reordered commutator escapes its window at (%d, %d)"
                    % (j + 1, i + 1))
            result.delta[(j, i)] = converted
    return TauPresentation(result, tau, tuple(inverse))


def _convert_to_order(result: CGLPresentation, inverse: Sequence[int],
                      poly: NCPoly) -> NCPoly:
    """Rewrite an old-order normal form in the new order by expanding each
    PBW word generator by generator."""
    n = result.N
    out = NCPoly.zero(n)
    for exp, coeff in poly.terms.items():
        acc = NCPoly.one(n)
        word = []
        for old_idx, a in enumerate(exp):
            word.extend([inverse[old_idx]] * a)
        for idx in reversed(word):
            acc = result._gen_times_poly(idx, acc)
        out = out + acc.scalar_mul(coeff)
    return out
