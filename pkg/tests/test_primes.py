from fractions import Fraction
from itertools import permutations

import pytest

from qnca.catalog import quantum_matrices, quantum_minor, solid_minor_positions
from qnca.errors import UniquenessViolation
from qnca.lattice import unit_vec
from qnca.ore import CGLPresentation, NCPoly, homogeneous_weight, validate_cgl
from qnca.primes import (OmegaTable, PrimeSequence, compute_prime_sequence,
                         enumerate_xi, is_interval_permutation,
                         quasi_commutation_scalars, tau_presentation)
from qnca.scalars import LaurentScalar


# -- the bicharacter table -------------------------------------------------------


def test_omega_example_entries(qm22):
    table = OmegaTable.from_presentation(qm22.presentation)
    # closed form: exponent of q is d_{jl} sign(k-i) + d_{ik} sign(l-j)
    assert table.omega((0, 1, 0, 0), (1, 0, 0, 0)).vexp == -2   # q^-1
    assert table.omega((1, 0, 0, 0), (0, 0, 0, 1)).vexp == 0
    for f in [(1, 0, 0, 0), (2, -1, 3, 0), (0, 0, 0, 5)]:
        assert table.omega(f, f).is_one()


def test_omega_closed_form_all_pairs(qm33):
    table = OmegaTable.from_presentation(qm33.presentation)

    def sign(x):
        return (x > 0) - (x < 0)

    for i in range(1, 4):
        for j in range(1, 4):
            for k in range(1, 4):
                for l in range(1, 4):
                    a = unit_vec(9, qm33.gen_index(i, j))
                    b = unit_vec(9, qm33.gen_index(k, l))
                    want = (1 if j == l else 0) * sign(k - i) \
                        + (1 if i == k else 0) * sign(l - j)
                    assert table.omega_vexp(a, b) == 2 * want


def test_omega_antisymmetry(qm23):
    table = OmegaTable.from_presentation(qm23.presentation)
    for row in range(6):
        assert table.vexp[row][row] == 0
        for col in range(6):
            assert table.vexp[row][col] == -table.vexp[col][row]


# -- prime sequences --------------------------------------------------------------


def test_sequence_2x2(qm22, pipe22):
    _, seq, _, _, _ = pipe22
    t11t22 = NCPoly.monomial(4, (1, 0, 0, 1))
    t12t21 = NCPoly.monomial(4, (0, 1, 1, 0))
    assert seq.y[0] == NCPoly.generator(4, 0)
    assert seq.y[1] == NCPoly.generator(4, 1)
    assert seq.y[2] == NCPoly.generator(4, 2)
    assert seq.y[3] == t11t22 - t12t21.scalar_mul(LaurentScalar.q_power(1))
    assert seq.c[3] == t12t21.scalar_mul(LaurentScalar.q_power(1))
    assert seq.pred == (None, None, None, 0)
    assert seq.succ == (3, None, None, None)
    assert seq.rank == 3


def test_level_sets_match_diagonals(pipe22, pipe33):
    for pipe, n in ((pipe22, 2), (pipe33, 3)):
        _, seq, _, _, _ = pipe
        by_eta = {}
        by_diag = {}
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                k = (i - 1) * n + j - 1
                by_eta.setdefault(seq.eta[k], set()).add(k)
                by_diag.setdefault(j - i, set()).add(k)
        assert set(map(frozenset, by_eta.values())) \
            == set(map(frozenset, by_diag.values()))


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3)])
def test_solid_minor_reproduction(m, n):
    qm = quantum_matrices(m, n)
    seq = compute_prime_sequence(qm.presentation)
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            rows, cols = solid_minor_positions(m, n, i, j)
            assert seq.y[qm.gen_index(i, j)] == quantum_minor(qm, rows, cols)
    assert seq.rank == m + n - 1


def test_commutative_ring_sequence():
    n = 4
    weights = [unit_vec(n, k) for k in range(n)]
    h = [unit_vec(n, k) for k in range(n)]
    p = CGLPresentation(weights, h, {})
    seq = compute_prime_sequence(p)
    assert seq.y == tuple(NCPoly.generator(n, k) for k in range(n))
    assert len(set(seq.eta)) == n
    assert seq.rank == n
    assert seq.exchangeable == ()


def test_recursion_consistency(pipe33):
    p, seq, _, _, _ = pipe33
    for k in range(seq.n):
        l = seq.pred[k]
        if l is None:
            continue
        rebuilt = p.multiply(seq.y[l], NCPoly.generator(seq.n, k)) - seq.c[k]
        assert rebuilt == seq.y[k]


def test_normality_exact(pipe23):
    p, seq, table, _, _ = pipe23
    for k in range(seq.n):
        for j in range(k + 1):
            xj = NCPoly.generator(seq.n, j)
            scalar = LaurentScalar.v_power(
                table.omega_vexp(seq.ebar[k], unit_vec(seq.n, j)))
            assert p.multiply(seq.y[k], xj) == p.multiply(xj, seq.y[k]).scalar_mul(scalar)


def test_leading_term_unitriangular(pipe33):
    p, seq, _, _, _ = pipe33
    for k in range(seq.n):
        exp, coeff = seq.y[k].leading()
        assert exp == seq.ebar[k]
        assert coeff.is_one()
        assert homogeneous_weight(seq.y[k], p.weights) is not None


def test_ebar_basis_unimodular(pipe33):
    _, seq, _, _, _ = pipe33
    n = seq.n
    # columns are the ladder exponents; the matrix is unitriangular
    for k in range(n):
        assert seq.ebar[k][k] == 1
        assert all(seq.ebar[k][i] == 0 for i in range(k + 1, n))
    from qnca.linalg import solve_unique_rational
    # solvability for every unit vector certifies determinant +-1 over Z
    for k in range(n):
        matrix = [[seq.ebar[c][r] for c in range(n)] for r in range(n)]
        sol = solve_unique_rational(matrix, list(unit_vec(n, k)))
        assert all(x.denominator == 1 for x in sol)


def test_threaded_candidate_search_matches(qm23):
    serial = compute_prime_sequence(qm23.presentation, threads=1)
    threaded = compute_prime_sequence(qm23.presentation, threads=4)
    assert serial.eta == threaded.eta
    assert serial.y == threaded.y
    assert serial.pred == threaded.pred


# -- quasi-commutation -------------------------------------------------------------


def test_quasi_commutation_2x2(pipe22):
    p, seq, table, _, _ = pipe22
    scalars = quasi_commutation_scalars(p, seq, table)
    # the 2x2 quantum determinant is central
    t11, det = seq.y[0], seq.y[3]
    assert p.multiply(t11, det) == p.multiply(det, t11)
    assert scalars[0][3].is_one()
    # t12 t21 = t21 t12 by the straightening relations
    assert p.multiply(seq.y[1], seq.y[2]) == p.multiply(seq.y[2], seq.y[1])
    assert scalars[1][2].is_one()
    for k in range(4):
        assert scalars[k][k].is_one()
        for l in range(4):
            assert (scalars[k][l] * scalars[l][k]).is_one()


# -- interval-prefix permutations ---------------------------------------------------


def brute_force_xi(n):
    out = set()
    for perm in permutations(range(n)):
        values = set()
        good = True
        for k, v in enumerate(perm):
            values.add(v)
            if max(values) - min(values) != k:
                good = False
                break
        if good:
            out.add(perm)
    return out


def test_enumerate_xi_small():
    assert list(enumerate_xi(1)) == [(0,)]
    assert set(enumerate_xi(2)) == {(0, 1), (1, 0)}
    three = list(enumerate_xi(3))
    assert len(three) == 4
    assert set(three) == brute_force_xi(3)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_enumerate_xi_against_brute_force(n):
    listed = list(enumerate_xi(n))
    assert len(listed) == 2 ** (n - 1)
    assert len(set(listed)) == len(listed)
    assert set(listed) == brute_force_xi(n)
    assert all(is_interval_permutation(t) for t in listed)


def test_interval_permutation_examples():
    assert is_interval_permutation((1, 2, 0))      # prefixes {2},{2,3},{1,2,3}
    assert not is_interval_permutation((0, 2, 1))
    assert not is_interval_permutation((0, 0, 1))


# -- reindexed presentations ---------------------------------------------------------


def test_tau_identity(qm22):
    moved = tau_presentation(qm22.presentation, (0, 1, 2, 3))
    assert moved.presentation.weights == qm22.presentation.weights
    assert moved.presentation.h == qm22.presentation.h
    assert moved.presentation.delta == qm22.presentation.delta


def test_tau_rejects_non_interval(qm22):
    with pytest.raises(ValueError):
        tau_presentation(qm22.presentation, (0, 2, 1, 3))


def test_tau_reversal_pipeline(qm22):
    moved = tau_presentation(qm22.presentation, (3, 2, 1, 0))
    report = validate_cgl(moved.presentation)
    assert report.ok and report.symmetric
    seq = compute_prime_sequence(moved.presentation)
    # the ladder again pairs the diagonal corners: new generators are
    # (t22, t21, t12, t11) and the long ladder ends at t11
    assert seq.pred == (None, None, None, 0)
    assert seq.ebar[3] == (1, 0, 0, 1)
    # the reordered long prime is the same determinant, rewritten: its
    # image under the identity map back to the original order agrees
    p = qm22.presentation
    det = NCPoly.monomial(4, (1, 0, 0, 1)) \
        - NCPoly.monomial(4, (0, 1, 1, 0), LaurentScalar.q_power(1))
    back = {}
    for exp, coeff in seq.y[3].terms.items():
        back[tuple(reversed(exp))] = coeff
    # rewriting x4 x1 -> x1 x4 etc. in the original algebra
    rebuilt = NCPoly.zero(4)
    for exp, coeff in seq.y[3].terms.items():
        word = []
        for new_idx, a in enumerate(exp):
            word.extend([3 - new_idx] * a)
        acc = NCPoly.one(4)
        for idx in reversed(word):
            acc = p.multiply(NCPoly.generator(4, idx), acc)
        rebuilt = rebuilt + acc.scalar_mul(coeff)
    assert rebuilt == det


def test_tau_all_presentations_validate(qm22):
    for tau in enumerate_xi(4):
        moved = tau_presentation(qm22.presentation, tau)
        report = validate_cgl(moved.presentation)
        assert report.ok and report.symmetric, tau
        seq = compute_prime_sequence(moved.presentation)
        for k in range(4):
            exp, coeff = seq.y[k].leading()
            assert exp == seq.ebar[k] and coeff.is_one()
            assert homogeneous_weight(seq.y[k], moved.presentation.weights) is not None


# -- failure modes -------------------------------------------------------------------


def test_uniqueness_violation_reported():
    # two commuting ladders with identical weights: the correction for the
    # last generator is admitted by both unfinished ladders
    weights = [(1, 0), (1, 0), (2, 0)]
    h = [(1, 1), (1, 2), (1, 3)]
    qdiff = LaurentScalar({2: Fraction(1), -2: Fraction(-1)})
    delta = {(2, 0): NCPoly.generator(3, 1).scalar_mul(qdiff)}
    p = CGLPresentation(weights, h, delta)
    with pytest.raises(UniquenessViolation):
        compute_prime_sequence(p)
