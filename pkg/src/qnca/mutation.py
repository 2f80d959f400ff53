"""Torus embedding, the Laurent-membership oracle, and quantum seed mutation.

Inverting the prime-element recursion expresses each generator inside the
quantum torus: a ladder starter maps to its frame variable, and otherwise

    x_k = y_pred^{-1} (y_k + c_k)

with the correction embedded recursively.  The oracle reduces a torus
element greedily by its leading lattice vector: the embedding of a PBW
monomial x^a leads, with a unit coefficient, at the image of a under the
inverse ladder automorphism, so candidate preimages can be read off the
leading term and subtracted.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import MembershipError
from .lattice import rl_lex_key, unit_vec, vec_add
from .ore import CGLPresentation, NCPoly
from .primes import PrimeSequence
from .scalars import LaurentScalar
from .seeds import QuantumSeed
from .torus import (TorusElement, divide_left, frame_monomial,
                    multiply as torus_mul)


def torus_multiply(a: TorusElement, b: TorusElement, seed: QuantumSeed) -> TorusElement:
    """Product of elements written over the seed's own frame."""
    return torus_mul(a, b, seed.lambda_mat)


class TorusEmbedding:
    """The algebra map from PBW normal forms into the base quantum torus,
    with generator and monomial images cached."""

    def __init__(self, p: CGLPresentation, seq: PrimeSequence, seed: QuantumSeed):
        if seed.base_lambda != seed.lambda_mat:
            raise ValueError("embedding is defined over the initial seed")
        self.p = p
        self.seq = seq
        self.seed = seed
        self.lam = seed.base_lambda
        self._gen_cache: dict[int, TorusElement] = {}
        self._mono_cache: dict[tuple[int, ...], TorusElement] = {}

    def gen_image(self, k: int) -> TorusElement:
        cached = self._gen_cache.get(k)
        if cached is not None:
            return cached
        n = self.seq.n
        pred = self.seq.pred[k]
        if pred is None:
            image = TorusElement.monomial(n, unit_vec(n, k))
        else:
            numerator = TorusElement.monomial(n, unit_vec(n, k)) \
                + self.poly_image(self.seq.c[k])
            inverse = TorusElement.monomial(
                n, tuple(-x for x in unit_vec(n, pred)))
            image = torus_mul(inverse, numerator, self.lam)
        self._gen_cache[k] = image
        return image

    def mono_image(self, exp: tuple[int, ...]) -> TorusElement:
        cached = self._mono_cache.get(exp)
        if cached is not None:
            return cached
        n = self.seq.n
        image = TorusElement.one(n)
        for k in range(n):
            g = None
            for _ in range(exp[k]):
                g = g if g is not None else self.gen_image(k)
                image = torus_mul(image, g, self.lam)
        self._mono_cache[exp] = image
        return image

    def poly_image(self, x: NCPoly) -> TorusElement:
        out = TorusElement.zero(self.seq.n)
        for exp, coeff in x.terms.items():
            out = out + self.mono_image(exp).scalar_mul(coeff)
        return out


def embed_in_torus(x: NCPoly, seq: PrimeSequence, seed: QuantumSeed,
                   p: CGLPresentation, embedding: TorusEmbedding | None = None) -> TorusElement:
    """Image of a PBW normal form in the quantum torus of the seed."""
    emb = embedding if embedding is not None else TorusEmbedding(p, seq, seed)
    return emb.poly_image(x)


def ladder_image(seq: PrimeSequence, f: tuple[int, ...]) -> tuple[int, ...]:
    """The ladder automorphism: e_k goes to the ladder exponent of y_k."""
    n = seq.n
    out = [0] * n
    for k, fk in enumerate(f):
        if fk:
            eb = seq.ebar[k]
            for i in range(n):
                out[i] += fk * eb[i]
    return tuple(out)


def membership_in_R(z: TorusElement, seq: PrimeSequence, seed: QuantumSeed,
                    p: CGLPresentation, embedding: TorusEmbedding | None = None,
                    max_steps: int = 10000) -> NCPoly | None:
    """The unique preimage of z in the algebra, or None when z is not in
    the image of the embedding.

    Greedy reduction: the leading lattice vector determines the only PBW
    monomial that could lead there; a negative coordinate in its exponent
    ends the search.  Frozen directions are never inverted, since the
    reduction only ever subtracts images of honest monomials.
    """
    emb = embedding if embedding is not None else TorusEmbedding(p, seq, seed)
    n = seq.n
    collected: dict[tuple[int, ...], LaurentScalar] = {}
    remainder = z
    steps = 0
    while not remainder.is_zero():
        if steps >= max_steps:
            raise MembershipError("membership reduction exceeded %d steps" % max_steps)
        f, coeff = remainder.leading()
        candidate = ladder_image(seq, f)
        if any(x < 0 for x in candidate):
            return None
        image = emb.mono_image(candidate)
        lead_vec, lead_coeff = image.leading()
        if lead_vec != f:
            raise MembershipError(
                "monomial image leads at %s, expected %s: triangularity breach"
                % (lead_vec, f))
        if not lead_coeff.is_v_power():
            raise MembershipError(
                "monomial image has non-unit leading coefficient %s" % lead_coeff)
        factor = coeff * lead_coeff.inverse()
        prev = collected.get(candidate)
        total = factor if prev is None else prev + factor
        if total.is_zero():
            collected.pop(candidate, None)
        else:
            collected[candidate] = total
        remainder = remainder - image.scalar_mul(factor)
        steps += 1
    result = NCPoly(n, collected)
    if emb.poly_image(result) != z:
        raise MembershipError("membership round-trip failed to reproduce input")
    return result


# -- mutation ------------------------------------------------------------------


def mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    """Mutation in an exchangeable direction.

    The matrix mutates by the standard rule, the commutation matrix by the
    corresponding unimodular congruence, and the variable at k is replaced
    by the two-monomial frame combination prescribed by the column at k.
    The compatibility identity is re-verified on the result.
    """
    if k not in seed.ex:
        raise ValueError("direction %d is frozen" % (k + 1))
    n = seed.n
    idx = seed.ex.index(k)
    col = [seed.b[l][idx] for l in range(n)]
    if col[k] != 0:
        raise ValueError("exchange matrix has a nonzero principal diagonal entry")

    # The new variable is M'(-e_k + [col]_+) + M'(-e_k + [-col]_+).  Each
    # summand alone is a genuine fraction over the base frame once the
    # variable at k has several terms, so the sum is computed through the
    # exchange relation: multiplying by X_k on the left turns both frame
    # vectors nonnegative away from k, and one exact left division recovers
    # the new variable (which the Laurent phenomenon keeps in the torus).
    m_plus = tuple(max(col[i], 0) for i in range(n))
    m_minus = tuple(max(-col[i], 0) for i in range(n))
    lam_row = seed.lambda_mat[k]

    def shifted(m: tuple[int, ...]) -> TorusElement:
        # v^{(1/2) e_k^T Lambda (m - e_k)} M'(m)
        twist = sum(lam_row[j] * m[j] for j in range(n)) - lam_row[k]
        if twist % 2:
            raise ValueError("odd exchange twist; commutation matrix is not even")
        value = frame_monomial(seed.vars, seed.lambda_mat, m, seed.base_lambda)
        return value.scalar_mul(LaurentScalar.v_power(twist // 2))

    rhs = shifted(m_plus) + shifted(m_minus)
    new_var = divide_left(seed.vars[k], rhs, seed.base_lambda)

    new_b = _mutate_matrix(seed.b, seed.ex, n, k)
    new_lambda = _congruence(seed.lambda_mat, col, n, k)
    new_vars = tuple(new_var if i == k else seed.vars[i] for i in range(n))
    mutated = replace(seed, lambda_mat=new_lambda, b=new_b, vars=new_vars)
    mutated.verify_compatibility()
    return mutated


def _mutate_matrix(b, ex, n: int, k: int):
    idx = ex.index(k)
    out = []
    for i in range(n):
        row = []
        for j_col, j in enumerate(ex):
            if i == k or j == k:
                row.append(-b[i][j_col])
            else:
                bik = b[i][idx]
                bkj = b[k][j_col]
                bump = abs(bik) * bkj + bik * abs(bkj)
                row.append(b[i][j_col] + bump // 2)
        out.append(tuple(row))
    return tuple(out)


def _congruence(lam, col, n: int, k: int):
    # E is the identity outside column k; there it carries -1 on the
    # diagonal and the negative parts of the exchange column.
    e = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        e[i][k] = -1 if i == k else max(-col[i], 0)
    new = [[0] * n for _ in range(n)]
    for a in range(n):
        for bb in range(n):
            total = 0
            for i in range(n):
                if e[i][a]:
                    row = lam[i]
                    for j in range(n):
                        if e[j][bb]:
                            total += e[i][a] * row[j] * e[j][bb]
            new[a][bb] = total
    return tuple(tuple(row) for row in new)


# -- exchange graph -------------------------------------------------------------


@dataclass(frozen=True)
class SeedRecord:
    path: tuple[int, ...]
    seed: QuantumSeed


@dataclass(frozen=True)
class ExplorationReport:
    records: tuple[SeedRecord, ...]
    depth: int
    membership_checked: bool
    membership_failures: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def count(self) -> int:
        return len(self.records)


def seed_dedup_key(seed: QuantumSeed) -> tuple:
    variables = frozenset(v.normalized().key() for v in seed.vars)
    return (seed.lambda_mat, seed.b, variables)


def explore_exchange_graph(seed: QuantumSeed, depth: int, membership: bool = False,
                           p: CGLPresentation | None = None,
                           seq: PrimeSequence | None = None) -> ExplorationReport:
    """Breadth-first mutation up to the given depth with seed deduplication.

    Seeds are identified up to unit rescaling of their variables.  With the
    membership flag every cluster variable of every discovered seed is run
    through the oracle; failures are collected with their mutation paths.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if membership and (p is None or seq is None):
        raise ValueError("membership checks need the presentation and sequence")
    embedding = TorusEmbedding(p, seq, seed) if membership else None
    seen = {seed_dedup_key(seed): ()}
    records = [SeedRecord((), seed)]
    failures: list[tuple[tuple[int, ...], int]] = []
    checked_vars: set = set()

    def check_vars(record: SeedRecord) -> None:
        for i, var in enumerate(record.seed.vars):
            key = var.normalized().key()
            if key in checked_vars:
                continue
            checked_vars.add(key)
            if membership_in_R(var, seq, seed, p, embedding=embedding) is None:
                failures.append((record.path, i))

    if membership:
        check_vars(records[0])
    frontier = [records[0]]
    for _ in range(depth):
        next_frontier = []
        for record in frontier:
            for k in record.seed.ex:
                candidate = mutate(record.seed, k)
                key = seed_dedup_key(candidate)
                if key in seen:
                    continue
                new_record = SeedRecord(record.path + (k,), candidate)
                seen[key] = new_record.path
                records.append(new_record)
                next_frontier.append(new_record)
                if membership:
                    check_vars(new_record)
        frontier = next_frontier
        if not frontier:
            break
    return ExplorationReport(tuple(records), depth, membership, tuple(failures))
