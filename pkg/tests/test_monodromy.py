import json
import random

import pytest

from frobmono import a3, g24
from frobmono.linalg import SymMatrix
from frobmono.monodromy import (
    BraidWord,
    GaugeRefused,
    MonodromyData,
    apply_braid,
    apply_braid_with_matrix,
    apply_gauge,
    apply_permutation,
    apply_shift,
    apply_signs,
    braid_matrix,
    c0_membership,
    center_braid,
    check_constraints,
    coalescence_vanishing_check,
    g_eta_mu_membership,
    monodromy_M0,
)
from frobmono.symring import DEFAULT_TABLE, SymError, SymExpr

_i = SymExpr.i()


def random_unipotent(r, n):
    return SymMatrix([[1 if i == j else (r.randint(-4, 4) if j > i else 0) for j in range(n)] for i in range(n)])


def toy_data(S):
    n = S.n
    C = SymMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])
    return MonodromyData((0,) * n, SymMatrix.zeros(n), SymMatrix.identity(n), S, C)


def test_constraints_pass_on_both_datasets(g24_data, a3_data):
    for md in (g24_data, a3_data):
        rep = check_constraints(md)
        assert rep.passed, str(rep)
        assert len(rep.checks) == 3


def test_perturbed_connection_fails_identity_two(a3_data):
    bad = a3_data.with_(C=a3_data.C.replace(0, 0, a3_data.C[0, 0] + 1))
    rep = check_constraints(bad)
    assert not rep["C S C^T = e^{-pi i R} e^{-pi i mu} eta^-1"].ok
    assert not rep.passed


def test_mu_denominator_refused():
    with pytest.raises(SymError):
        MonodromyData(("1/3", 0), SymMatrix.zeros(2), SymMatrix.identity(2), SymMatrix.identity(2), SymMatrix.identity(2))


def test_g_eta_mu_membership():
    assert g_eta_mu_membership(g24.R, g24.MU, g24.ETA)
    assert g_eta_mu_membership(SymMatrix.zeros(6), g24.MU, g24.ETA)
    assert not g_eta_mu_membership(g24.R.T, g24.MU, g24.ETA)


def test_c0_membership_examples():
    args = (g24.MU, g24.R, g24.ETA)
    assert c0_membership(g24.A_GAUGE, *args)
    assert c0_membership(g24.B_GAUGE, *args)
    assert not c0_membership(g24.c0_generic((1, 0, 0, 0, 0)), *args)
    with pytest.raises(SymError):
        c0_membership(SymMatrix.zeros(6), *args)


def test_braid_matrix_formula():
    S = g24.PSP
    assert S[0, 1] == -6
    A = braid_matrix(S, 1, 1)
    expect = SymMatrix.identity(6).replace(0, 0, 0).replace(0, 1, 1).replace(1, 0, 1).replace(1, 1, 6)
    assert A == expect
    Am = braid_matrix(S, 1, -1)
    assert Am == SymMatrix.identity(6).replace(0, 0, 6).replace(0, 1, 1).replace(1, 0, 1).replace(1, 1, 0)
    P = braid_matrix(SymMatrix.identity(3), 2, 1)
    assert P == SymMatrix.permutation((1, 3, 2))
    with pytest.raises(SymError):
        braid_matrix(S, 6, 1)


def test_a3_braid_examples(a3_data):
    got = apply_braid(a3_data, "1 2 1")
    assert [got.S[0, j] for j in range(3)] == [1, 1, 1]
    c = apply_braid(a3_data, center_braid(3))
    assert c.S == a3_data.S
    assert c.C == SymMatrix.diag([_i, 1, -_i]) * a3_data.C
    assert apply_braid(a3_data, BraidWord()) == a3_data


def test_braid_relations_random_unipotent():
    r = random.Random(200)
    for _ in range(200):
        n = r.randint(3, 6)
        md = toy_data(random_unipotent(r, n))
        i = r.randint(1, n - 2)
        assert apply_braid(md, BraidWord.of(i, i + 1, i)) == apply_braid(md, BraidWord.of(i + 1, i, i + 1))
        assert apply_braid(md, BraidWord.of(i, -i)) == md
        assert apply_braid(md, BraidWord.of(-i, i)) == md
        far = [k for k in range(1, n) if abs(k - i) >= 2]
        if far:
            j = r.choice(far)
            assert apply_braid(md, BraidWord.of(i, j)) == apply_braid(md, BraidWord.of(j, i))
        out = apply_braid(md, BraidWord.of(*(r.choice([1, -1]) * r.randint(1, n - 1) for _ in range(4))))
        assert out.S.is_unipotent_upper()


def test_braid_relations_on_datasets(g24_data, a3_data):
    md = apply_permutation(g24_data, g24.TAU[1])
    assert apply_braid(md, "2 3 2") == apply_braid(md, "3 2 3")
    assert apply_braid(a3_data, "1 2 1") == apply_braid(a3_data, "2 1 2")


def test_actions_preserve_constraints(g24_data, a3_data):
    r = random.Random(4)
    g = apply_permutation(g24_data, g24.TAU[1])
    for md in (g, a3_data):
        n = md.n
        for _ in range(3):
            w = BraidWord.of(*(r.choice([1, -1]) * r.randint(1, n - 1) for _ in range(5)))
            assert check_constraints(apply_braid(md, w)).passed
        assert check_constraints(apply_signs(md, [r.choice([1, -1]) for _ in range(n)])).passed
        assert check_constraints(apply_shift(md, 1)).passed
    perm = list(range(1, 7))
    r.shuffle(perm)
    assert check_constraints(apply_permutation(g24_data, perm)).passed
    for G in (g24.A_GAUGE, g24.B_GAUGE):
        assert check_constraints(apply_gauge(g, G)).passed
    assert check_constraints(apply_gauge(a3_data, SymMatrix.identity(3))).passed


def test_permutation_tau1_gives_psp(g24_data):
    assert apply_permutation(g24_data, g24.TAU[1]).S == g24.PSP


def test_trivial_signs(g24_data):
    assert apply_signs(g24_data, [1] * 6) == g24_data
    with pytest.raises(SymError):
        apply_signs(g24_data, [1, 2, 1, 1, 1, 1])


def test_gauges_commute(g24_data):
    A, B = g24.A_GAUGE, g24.B_GAUGE
    assert (A * B) * g24_data.C == (B * A) * g24_data.C
    ab = apply_gauge(apply_gauge(g24_data, A), B)
    ba = apply_gauge(apply_gauge(g24_data, B), A)
    assert ab == ba


def test_gauge_refused(g24_data):
    with pytest.raises(GaugeRefused):
        apply_gauge(g24_data, g24.c0_generic((1, 0, 0, 0, 0)))


def test_shift_is_monodromy(a3_data):
    assert monodromy_M0(a3_data, -1) == SymMatrix.diag([_i, 1, -_i])
    assert apply_shift(apply_shift(a3_data, 1), -1) == a3_data


def test_center_braid():
    assert str(center_braid(3)) == "1 2 1 2 1 2"
    assert len(center_braid(6)) == 30
    assert str(center_braid(2)) == "1 1"
    md = toy_data(SymMatrix([[1, 5], [0, 1]]))
    assert apply_braid(md, center_braid(2)).S == md.S
    with pytest.raises(SymError):
        center_braid(1)


def test_center_braid_on_g24_is_band_word():
    md = g24.band_start()
    full = g24.band_words()[-1]  # words are cumulative
    assert len(full) == 2 * (2 + 5 + 3 + 5)
    assert apply_braid(md, full) == apply_braid(md, center_braid(6))


def test_coalescence_vanishing(g24_data):
    assert coalescence_vanishing_check(g24_data.S, g24_data.u)
    assert coalescence_vanishing_check(SymMatrix.identity(3), (0, 0, 0))
    assert not coalescence_vanishing_check(SymMatrix([[1, 1], [0, 1]]), (1, 1))
    raw = a3.unpermuted_data(1)
    assert raw.u[1] == raw.u[2]
    assert coalescence_vanishing_check(raw.S, raw.u)
    lex = apply_permutation(raw, a3.CELL_PERMUTATIONS[1])
    assert lex.S[0, 1] == lex.S[1, 0] == 0
    assert coalescence_vanishing_check(lex.S, lex.u)


def test_braid_word_parsing():
    assert BraidWord.parse("1 -2  3") == BraidWord(((1, 1), (2, -1), (3, 1)))
    assert str(BraidWord.parse("")) == ""
    assert BraidWord.parse("1 2").inverse() == BraidWord.parse("-2 -1")
    for bad in ("0", "x", "1.5", "--1"):
        with pytest.raises(SymError):
            BraidWord.parse(bad)


def test_json_round_trip_is_byte_stable(g24_data, a3_data):
    for md in (g24_data, a3_data):
        text = md.to_json()
        back = MonodromyData.from_json(text)
        assert back == md
        assert back.to_json() == text
        d = json.loads(text)
        assert set(d) >= {"n", "mu", "R", "eta", "S", "C"}
