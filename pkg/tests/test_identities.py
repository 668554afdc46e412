"""Identity checks: frozen small cases, grids, and the entailed trace form."""

import pytest

from abpc.identities import (
    IDENTITY_NAMES,
    IdentityError,
    alternating_power_sum,
    gradient_transpose,
    r_vector,
    r_vector_first_layer,
    verify_all,
    verify_identity,
)
from abpc.oracle import cpc_minor_sum, det_leibniz
from abpc.poly import Polynomial, PolyMatrix, gradient
from abpc.rings import RingDescriptor, int_embed

Z = RingDescriptor.integers()
Z4 = RingDescriptor.modular(4)
Z7 = RingDescriptor.modular(7)
Q = RingDescriptor.rationals()


def x(n, i, j):
    return Polynomial.variable(Z, n, i, j)


def test_smallest_case_by_hand():
    # n=1, d=0: both sides are the 1x1 identity
    lhs = gradient_transpose(1, 1, Z)
    rhs = alternating_power_sum(1, 0, Z)
    one = Polynomial.from_int(Z, 1, 1)
    assert lhs.entry(1, 1) == one and rhs.entry(1, 1) == one
    assert verify_identity("bivariate_ch", 1, 0, Z).passed


def test_two_by_two_adjugate_case_by_hand():
    # n=2, d=1: the transposed gradient is the adjugate of a generic 2x2
    lhs = gradient_transpose(2, 2, Z)
    want = PolyMatrix.from_rows(Z, 2, [[x(2, 2, 2), -x(2, 1, 2)],
                                       [-x(2, 2, 1), x(2, 1, 1)]])
    assert lhs == want
    rhs = alternating_power_sum(2, 1, Z)
    assert rhs == want
    assert verify_identity("bivariate_ch", 2, 1, Z).passed


def test_girard_newton_two_by_two_binomial_case():
    # -2 e_2 = -e_1 p_1 + e_0 p_2 amounts to -2 x1 x2 = -(x1+x2)^2 + x1^2 + x2^2
    assert verify_identity("girard_newton", 2, 2, Z).passed


def test_transition_product_degenerate_case():
    # d=2: the single first-layer vector against the last column gives det_2
    vec = r_vector_first_layer(2, 2, Z)
    assert vec == [-x(2, 2, 1), x(2, 1, 1)]
    lhs = vec[0] * x(2, 1, 2) + vec[1] * x(2, 2, 2)
    assert lhs == det_leibniz(PolyMatrix.variables(Z, 2))
    assert verify_identity("transition_product", 2, 2, Z).passed


def test_bivariate_grid_over_four_rings():
    for ring in (Z, Z4, Z7, Q):
        for n in range(1, 4):
            for d in range(0, 4):
                assert verify_identity("bivariate_ch", n, d, ring).passed, (ring, n, d)


def test_combinatorial_route_agrees():
    for n in range(1, 4):
        for d in range(0, 3):
            assert verify_identity("bivariate_ch", n, d, Z, combinatorial=True).passed


def test_left_side_vanishes_at_equal_parameters():
    # degree above the matrix size: the gradient side is the zero matrix
    for n in range(1, 4):
        lhs = gradient_transpose(n, n + 1, Z)
        assert all(p.is_zero() for p in lhs.entries)


def test_trace_identity_is_entailed_by_the_gradient():
    # trace of the transposed gradient equals (n-d) cpc_{n,d}
    for n in range(1, 5):
        for d in range(0, 5):
            lhs = gradient_transpose(n, d + 1, Z).trace()
            want = cpc_minor_sum(n, d, Z).scale(int_embed(Z, n - d))
            assert lhs == want, (n, d)


def test_r_vector_last_entry_drops_the_matrix_size():
    for n in range(2, 5):
        for d in range(0, n):
            vec = r_vector(n, d, Z)
            assert vec[n - 1] == cpc_minor_sum(n - 1, d, Z).promote(n), (n, d)


def test_r_vector_first_layer_matches_gradient_route():
    for n in range(2, 5):
        assert r_vector_first_layer(n, n, Z) == r_vector(n, 1, Z)


def test_failure_witness_reports_first_mismatch():
    # an intentionally wrong check: compare the gradient side at d and d+1
    from abpc.identities import _compare_matrices

    lhs = gradient_transpose(2, 1, Z)
    rhs = gradient_transpose(2, 2, Z)
    w = _compare_matrices(lhs, rhs)
    assert w is not None
    assert w.position == (1, 1)
    assert w.lhs == "1" and w.rhs == "1*x[2,2]"


def test_verify_all_over_zero_divisor_ring():
    reports = verify_all(3, 3, Z4)
    assert all(r.passed for r in reports)
    names = {r.identity for r in reports}
    assert names == set(IDENTITY_NAMES)


def test_verify_all_high_degree_branch():
    reports = verify_all(2, 5, Z)
    assert all(r.passed for r in reports)
    # the vanishing coefficients above n were exercised
    assert any(r.identity == "bivariate_ch" and r.d == 5 for r in reports)


def test_verify_all_guard():
    with pytest.raises(IdentityError):
        verify_all(6, 2, Z)


def test_report_line_format():
    rep = verify_identity("bivariate_ch", 2, 1, Z4)
    assert rep.line() == "bivariate_ch n=2 d=1 ring=mod:4 PASS"
