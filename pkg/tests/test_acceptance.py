"""Acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import math
import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from frobmono import a3, g24
from frobmono.chambers import lexicographic_order, track_braid
from frobmono.linalg import SymMatrix
from frobmono.monodromy import (
    BraidWord,
    MonodromyData,
    apply_braid,
    apply_gauge,
    apply_permutation,
    apply_shift,
    apply_signs,
    c0_membership,
    center_braid,
    check_constraints,
    coalescence_vanishing_check,
    monodromy_M0,
)
from frobmono.symring import SymExpr

RESULTS: dict[int, tuple[bool, str]] = {}


def _constraint_suite():
    t0 = time.perf_counter()
    ok = check_constraints(g24.g24_reference()).passed and check_constraints(a3.a3_reference(0)).passed
    dt = time.perf_counter() - t0
    return ok and dt < 5, f"both datasets, {dt:.2f} s"


def _v_determination():
    v = g24.solve_v()
    return g24.identity_in_v().passed and v == 6, f"v = {v}"


def _kapranov():
    rep = g24.verify_resultg24()
    return rep.passed, f"{rep.counts()['pass']}/{len(rep.checks)} checks, orientation '{g24.KAPRANOV_ORIENTATION}'"


def _gram():
    td, G = g24.todd_and_gram()
    return G == g24.G_KAP and td.integral() == 1, "chi(S^lam S*, S^mu S*) from ch and Todd"


def _gamma():
    ok = all(g24.gamma_class(s) == g24.gamma_target(s) for s in (1, -1))
    return ok, "both signs, all six coefficients"


def _a3_table():
    rep = a3.reproduce_a3_table()
    return rep.passed, f"{rep.counts()['pass']}/{len(rep.checks)} checks"


def _band_table():
    rep = g24.band_table()
    start = g24.band_start()
    end = apply_braid(start, g24.band_words()[-1])
    ok = rep.passed and end.S == start.S and end.C == monodromy_M0(start, -1) * start.C
    ok = ok and end == apply_braid(start, center_braid(6))
    return ok, f"{rep.counts()['pass']}/{len(rep.checks)} checks"


def _geometry():
    lex = lexicographic_order(g24.canonical_small(1), math.pi / 6)
    w_a3 = track_braid(a3.quarter_turn_path(), 0.0)
    w_g = track_braid(g24.band_crossing_path(), math.pi / 6)
    ok = lex == [(5,), (4,), (1, 2), (3,), (6,)] and str(w_a3) == "1 2 1" and str(w_g) == "1 5"
    return ok, f"lex {lex}, A3 '{w_a3}', G(2,4) '{w_g}'"


def _coalescence():
    md = g24.g24_reference()
    raw = a3.unpermuted_data(1)
    ok = md.S[0, 1] == md.S[1, 0] == 0 and coalescence_vanishing_check(md.S, md.u)
    ok = ok and raw.S[1, 2] == raw.S[2, 1] == 0 and coalescence_vanishing_check(raw.S, raw.u)
    return ok, "S12 = S21 = 0 for G(2,4), S23 = S32 = 0 for A3"


def _random_alpha(r):
    a1, a2, a4 = (Fraction(r.randint(-6, 6), r.randint(1, 3)) for _ in range(3))
    a3_ = a1 * a1 - a2
    return (a1, a2, a3_, a4, (2 * a1 * a4 - a2 * a2 - a3_ * a3_) / 2)


def _close(sym_prod, num_prod):
    return np.all(np.abs(sym_prod - num_prod) <= 1e-9 * np.maximum(1.0, np.abs(num_prod)))


def _properties():
    r = random.Random(2016)
    fails = []
    # braid relations on random unipotent integer S
    for _ in range(200):
        n = r.randint(3, 6)
        S = SymMatrix([[1 if i == j else (r.randint(-4, 4) if j > i else 0) for j in range(n)] for i in range(n)])
        md = MonodromyData((0,) * n, SymMatrix.zeros(n), SymMatrix.identity(n), S, SymMatrix.identity(n))
        i = r.randint(1, n - 2)
        if apply_braid(md, BraidWord.of(i, i + 1, i)) != apply_braid(md, BraidWord.of(i + 1, i, i + 1)):
            fails.append("braid")
        if apply_braid(md, BraidWord.of(i, -i)) != md:
            fails.append("inverse")
        far = [k for k in range(1, n) if abs(k - i) >= 2]
        if far:
            j = r.choice(far)
            if apply_braid(md, BraidWord.of(i, j)) != apply_braid(md, BraidWord.of(j, i)):
                fails.append("far commutation")
    # the four actions preserve the constraints
    g = apply_permutation(g24.g24_reference(), g24.TAU[1])
    for md, gauge in ((g, g24.A_GAUGE), (a3.a3_reference(0), SymMatrix.identity(3))):
        n = md.n
        perm = list(range(1, n + 1))
        r.shuffle(perm)
        word = BraidWord.of(*(r.choice([1, -1]) * r.randint(1, n - 1) for _ in range(5)))
        for out in (
            apply_braid(md, word),
            apply_permutation(md, perm),
            apply_signs(md, [r.choice([1, -1]) for _ in range(n)]),
            apply_gauge(md, gauge),
            apply_shift(md, 1),
        ):
            if not check_constraints(out).passed:
                fails.append("action")
    # the isotropy group: closure and commutativity
    args = (g24.MU, g24.R, g24.ETA)
    members = [g24.c0_generic(_random_alpha(r)) for _ in range(100)]
    for k, G in enumerate(members):
        H = members[(k * 7 + 3) % 100]
        GH = G * H
        alpha = tuple(GH[m, 0].as_gaussian().re for m in range(1, 6))
        if not (c0_membership(G, *args) and GH == H * G and GH == g24.c0_generic(alpha)):
            fails.append("C0")
        if any(x != 0 for x in g24.c0_constraints(alpha)):
            fails.append("C0 constraints")
    # Hirzebruch classes
    for _ in range(50):
        F = [Fraction(r.randint(-5, 5), r.randint(1, 4)) for _ in range(4)]
        lam, M = g24.hirzebruch_lambda(F)
        if not (c0_membership(M, *args) and g24.hirzebruch_class(F) * lam == g24.hirzebruch_class(F, dual=True)):
            fails.append("Hirzebruch")
    # numeric oracle for the symbolic products used by the constraint checks
    for md in (g24.g24_reference(), a3.a3_reference(0)):
        C, S = md.C, md.S
        for X, Y in ((C, S.T), (C, S), (C * S, C.T), (C * S.T, C.T), (monodromy_M0(md), C)):
            if not _close((X * Y).to_numpy(), X.to_numpy() @ Y.to_numpy()):
                fails.append("numeric oracle")
    return not fails, "all properties hold" if not fails else ", ".join(sorted(set(fails)))


def _levelt():
    rep = g24.levelt_conjugation_check()
    return rep.passed, f"{rep.counts()['pass']}/{len(rep.checks)} checks"


CRITERIA = {
    1: ("constraint suite", _constraint_suite),
    2: ("v-determination", _v_determination),
    3: ("Kapranov pipeline", _kapranov),
    4: ("Riemann-Roch Gram matrix", _gram),
    5: ("Gamma-class derivation", _gamma),
    6: ("A3 table", _a3_table),
    7: ("G(2,4) band table", _band_table),
    8: ("geometry", _geometry),
    9: ("coalescence vanishing", _coalescence),
    10: ("property suites", _properties),
    11: ("Levelt conjugation", _levelt),
}


def _run(k):
    name, fn = CRITERIA[k]
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported with its cause
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    RESULTS[k] = (bool(ok), detail)
    line = f"AC{k:<2} {'PASS' if ok else 'FAIL'}  {name}: {detail}"
    print(line)
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, line = _run(k)
    assert ok, line


def summary_lines():
    return [f"AC{k:<2} {'PASS' if ok else 'FAIL'}  {CRITERIA[k][0]}: {d}" for k, (ok, d) in sorted(RESULTS.items())]


if __name__ == "__main__":
    sys.exit(0 if all(_run(k)[0] for k in sorted(CRITERIA)) else 1)
