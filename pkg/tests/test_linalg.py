import random
from fractions import Fraction

import numpy as np
import pytest

from frobmono import a3, g24
from frobmono.linalg import (
    DimensionError,
    NotNilpotentError,
    SingularMatrixError,
    SymMatrix,
    ZLMatrix,
    conj_by_zpow,
    inverse_monomial,
    inverse_rational,
    matrix_exp_nilpotent,
    zl_is_polynomial,
)
from frobmono.symring import DEFAULT_TABLE, SymError, SymExpr

PI_I = SymExpr.i() * SymExpr.symbol("pi")


def rand_matrix(r, n, symbolic=True):
    pool = [SymExpr.const(1)] + ([SymExpr.symbol(s) for s in ("pi", "s2", "g14", "c12")] if symbolic else [])
    return SymMatrix([[r.choice(pool) * r.randint(-3, 3) for _ in range(n)] for _ in range(n)])


def test_identity_and_transpose_rules():
    r = random.Random(3)
    for _ in range(30):
        A, B = rand_matrix(r, 4), rand_matrix(r, 4)
        assert SymMatrix.identity(4) * A == A == A * SymMatrix.identity(4)
        assert (A * B).T == B.T * A.T


def test_eta_a3_square():
    assert a3.ETA * a3.ETA == SymMatrix.identity(3) * Fraction(1, 16)


def test_stokes_inverse_at_six():
    S = g24.g24_reference().S
    assert S * inverse_rational(S) == SymMatrix.identity(6)


def test_inverse_rational_cases():
    A = SymMatrix([[2, 1], [1, 1]])
    assert inverse_rational(A) == SymMatrix([[1, -1], [-1, 2]])
    J = SymMatrix([[0, SymExpr.i()], [1, 0]])
    assert J * inverse_rational(J) == SymMatrix.identity(2)
    with pytest.raises(SingularMatrixError):
        inverse_rational(SymMatrix([[1, 2], [2, 4]]))
    with pytest.raises(SymError):
        inverse_rational(SymMatrix([[SymExpr.symbol("pi")]]))


def test_inverse_monomial():
    M = SymMatrix([[0, SymExpr.symbol("pi")], [SymExpr.symbol("c12") * 2, 0]])
    assert M * inverse_monomial(M) == SymMatrix.identity(2)
    with pytest.raises(SymError):
        inverse_monomial(SymMatrix([[1, 1], [0, 1]]))


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        SymMatrix.identity(2) * SymMatrix.identity(3)


def test_matrix_exp_nilpotent_on_R():
    E = matrix_exp_nilpotent(g24.R, PI_I)
    assert E[1, 0] == 4 * PI_I
    assert E[0, 0] == 1
    assert E * matrix_exp_nilpotent(g24.R, -PI_I) == SymMatrix.identity(6)
    with pytest.raises(NotNilpotentError):
        matrix_exp_nilpotent(SymMatrix([[1, 0], [0, 0]]))


def test_R_nilpotency_order():
    assert not (g24.R ** 4).is_zero()
    assert (g24.R ** 5).is_zero()


def test_conj_by_zpow():
    mu, R = g24.MU, g24.R
    P = conj_by_zpow(SymMatrix.identity(6), mu, R)
    assert P == ZLMatrix.from_sym(SymMatrix.identity(6))
    A = g24.A_GAUGE
    assert zl_is_polynomial(conj_by_zpow(A, mu, R))
    # an upper triangular perturbation produces negative powers of z
    U = SymMatrix.identity(6).replace(0, 1, 1)
    P = conj_by_zpow(U, mu, R)
    assert not zl_is_polynomial(P)
    assert zl_is_polynomial(conj_by_zpow(SymMatrix.identity(2).replace(0, 1, 1), (0, 0), SymMatrix.zeros(2)), allow_negative=True)


def test_quarter_powers_are_not_polynomial():
    Z = ZLMatrix.zpow_diag([Fraction(1, 4), 0], 1)
    assert not zl_is_polynomial(Z)
    assert zl_is_polynomial(ZLMatrix.zpow_diag([1, 2], 1))
    with pytest.raises(SymError):
        ZLMatrix.zpow_diag([Fraction(1, 3)], 1)


def test_numeric_oracle_products():
    r = random.Random(5)
    for _ in range(50):
        n = r.randint(2, 6)
        A, B = rand_matrix(r, n), rand_matrix(r, n)
        ref = A.to_numpy() @ B.to_numpy()
        got = (A * B).to_numpy()
        assert np.all(np.abs(got - ref) <= 1e-9 * np.maximum(1.0, np.abs(ref)))


def test_json_round_trip():
    M = g24.C_KAP_MINUS
    assert SymMatrix.from_json(M.to_json()) == M
    assert SymMatrix.from_strings(M.to_strings(), DEFAULT_TABLE) == M
