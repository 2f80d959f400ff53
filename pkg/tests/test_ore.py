from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qnca.catalog import quantum_matrices
from qnca.errors import InfeasibleSystem, PresentationError
from qnca.lattice import vec_add
from qnca.ore import (CGLPresentation, NCPoly, ensure_hstar, homogeneous_weight,
                      solve_h_star, validate_cgl)
from qnca.scalars import LaurentScalar


def gens(n):
    return [NCPoly.generator(n, k) for k in range(n)]


def q_scalar(exp):
    return LaurentScalar.q_power(exp)


# -- multiplication against the defining relations ---------------------------


def test_row_relation(qm22):
    p = qm22.presentation
    t11, t12, t21, t22 = gens(4)
    assert p.multiply(t12, t11) == p.multiply(t11, t12).scalar_mul(q_scalar(-1))


def test_diagonal_relation(qm22):
    p = qm22.presentation
    t11, t12, t21, t22 = gens(4)
    qdiff = LaurentScalar({2: Fraction(1), -2: Fraction(-1)})
    expected = p.multiply(t11, t22) - p.multiply(t12, t21).scalar_mul(qdiff)
    assert p.multiply(t22, t11) == expected


def test_unit_law(qm22):
    p = qm22.presentation
    for a in gens(4):
        assert p.multiply(a, NCPoly.one(4)) == a
        assert p.multiply(NCPoly.one(4), a) == a


def test_all_relation_families_2x3(qm23):
    p = qm23.presentation
    qdiff = LaurentScalar({2: Fraction(1), -2: Fraction(-1)})
    for i in range(1, 3):
        for j in range(1, 4):
            for k in range(1, 3):
                for l in range(1, 4):
                    if (i, j) >= (k, l):
                        continue
                    a = NCPoly.generator(6, qm23.gen_index(i, j))
                    b = NCPoly.generator(6, qm23.gen_index(k, l))
                    left = p.multiply(a, b)
                    if i == k or j == l:
                        assert left == p.multiply(b, a).scalar_mul(q_scalar(1))
                    elif j > l:
                        assert left == p.multiply(b, a)
                    else:
                        c = NCPoly.generator(6, qm23.gen_index(i, l))
                        d = NCPoly.generator(6, qm23.gen_index(k, j))
                        assert left - p.multiply(b, a) == p.multiply(c, d).scalar_mul(qdiff)


monomials22 = st.tuples(st.integers(0, 2), st.integers(0, 2),
                        st.integers(0, 2), st.integers(0, 2))


@settings(max_examples=40, deadline=None)
@given(monomials22, monomials22, monomials22)
def test_associativity_random_monomials(a, b, c):
    p = quantum_matrices(2, 2).presentation
    pa, pb, pc = (NCPoly.monomial(4, e) for e in (a, b, c))
    assert p.multiply(p.multiply(pa, pb), pc) == p.multiply(pa, p.multiply(pb, pc))


@settings(max_examples=40, deadline=None)
@given(monomials22, monomials22)
def test_weight_additive(a, b):
    p = quantum_matrices(2, 2).presentation
    pa, pb = NCPoly.monomial(4, a), NCPoly.monomial(4, b)
    wa = homogeneous_weight(pa, p.weights)
    wb = homogeneous_weight(pb, p.weights)
    product = p.multiply(pa, pb)
    assert homogeneous_weight(product, p.weights) == vec_add(wa, wb)


def test_commutator_reproduces_delta(qm22):
    p = qm22.presentation
    for k in range(4):
        xk = NCPoly.generator(4, k)
        for l in range(k):
            xl = NCPoly.generator(4, l)
            lam = LaurentScalar.v_power(p.lam_vexp(k, l))
            commutator = p.multiply(xk, xl) - p.multiply(xl, xk).scalar_mul(lam)
            assert commutator == p.delta_image(k, l)


# -- skew derivations ----------------------------------------------------------


def test_derivation_from_normal_form(qm22):
    # delta_4(t11) can be read off the normal form of t22 * t11.
    p = qm22.presentation
    t11, t12, t21, t22 = gens(4)
    product = p.multiply(t22, t11)
    tail = product - p.multiply(t11, t22)
    assert p.skew_derivation(3, t11) == tail


def test_derivation_kills_units(qm22):
    p = qm22.presentation
    assert p.skew_derivation(2, NCPoly.one(4)).is_zero()


def test_leibniz_instance():
    # delta_2(x1^2) = sigma_2(x1) delta_2(x1) + delta_2(x1) x1 with delta_2(x1) = 1.
    weights = [(1, 0), (0, 1)]
    h = [(1, 0), (0, 1)]
    delta = {(1, 0): NCPoly.one(2)}
    with pytest.raises(PresentationError):
        # constant image is not weight-homogeneous here, but construction only
        # checks support; homogeneity is validation's job
        CGLPresentation(weights, h, {(1, 0): NCPoly.generator(2, 1)})
    p = CGLPresentation(weights, h, delta)
    x1 = NCPoly.generator(2, 0)
    square = NCPoly.monomial(2, (2, 0))
    lam = LaurentScalar.v_power(p.lam_vexp(1, 0))
    expected = x1.scalar_mul(lam) + x1
    assert p.skew_derivation(1, square) == expected


def test_derivation_support_guard(qm22):
    p = qm22.presentation
    with pytest.raises(PresentationError):
        p.skew_derivation(1, NCPoly.generator(4, 3))


# -- validation ----------------------------------------------------------------


def test_quantum_matrices_validate(qm22):
    report = validate_cgl(qm22.presentation)
    assert report.ok
    assert report.symmetric
    assert {c.name for c in report.checks} == {
        "delta-homogeneity", "nonzero-eigenvalues", "local-nilpotency",
        "associativity", "symmetry"}


def test_unit_eigenvalue_fails_validation():
    # lambda_k = q^0 violates the non-root-of-unity requirement.
    weights = [(1,), (1,)]
    h = [(1,), (0,)]
    report = validate_cgl(CGLPresentation(weights, h, {}))
    assert not report.find("nonzero-eigenvalues").ok
    assert not report.ok


def test_non_nilpotent_derivation_fails():
    # delta_2(x1) = x1 never iterates to zero.
    weights = [(1, 0), (1, 0)]
    h = [(1, 0), (-1, 1)]
    delta = {(1, 0): NCPoly.generator(2, 0)}
    report = validate_cgl(CGLPresentation(weights, h, delta), nilpotency_cap=8)
    assert not report.find("local-nilpotency").ok


def test_symmetry_window_violation():
    # delta_3(x2) touching x1 breaks the strict window (x3..x2).
    weights = [(1, 0, 0), (0, 1, 0), (1, 1, 0)]
    h = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    delta = {(2, 1): NCPoly.generator(3, 0)}
    p = CGLPresentation(weights, h, delta)
    report = validate_cgl(p)
    assert not report.symmetric


def test_delta_support_rejected_at_construction():
    weights = [(1, 0), (0, 1)]
    h = [(1, 0), (0, 1)]
    bad = {(1, 0): NCPoly.generator(2, 1)}
    with pytest.raises(PresentationError):
        CGLPresentation(weights, h, bad)


# -- reverse-order torus elements ------------------------------------------------


def test_h_star_quantum_matrices(qm22):
    result = solve_h_star(qm22.presentation)
    assert result.lamstar_vexp == (4, 4, 4, 4)
    p = qm22.presentation
    for k in range(4):
        for l in range(k + 1, 4):
            got = sum(a * b for a, b in zip(result.vectors[k], p.weights[l]))
            assert got == -p.lam_qexp(l, k)


def test_h_star_2x3_uniform(qm23):
    result = solve_h_star(qm23.presentation)
    assert result.lamstar_vexp == (4,) * 6


def test_h_star_single_generator_flags_nonunique():
    p = CGLPresentation([(1,)], [(1,)], {})
    result = solve_h_star(p)
    assert result.unique == (False,)
    assert result.lamstar_vexp[0] != 0


def test_h_star_infeasible_for_asymmetric_torus():
    # One torus coordinate: <a, chi_2> = -<h_2, chi_1> = -1 with chi_2 = (2,)
    # demands a fractional vector.
    weights = [(1,), (2,)]
    h = [(1,), (1,)]
    p = CGLPresentation(weights, h, {})
    with pytest.raises(InfeasibleSystem):
        solve_h_star(p)


def test_ensure_hstar_idempotent(qm22):
    p = ensure_hstar(qm22.presentation)
    assert p.hstar is not None
    assert ensure_hstar(p) is p
