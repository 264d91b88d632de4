import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobmono.symring import (
    DEFAULT_TABLE,
    V_TABLE,
    GaussianRational,
    SymError,
    SymExpr,
    UnsupportedRootError,
    eval_numeric,
    exp_i_pi_rational,
    format_expr,
    parse,
)

SYMS = ("pi", "gamma", "zeta3", "s2", "spi", "g14", "g34", "c12", "c")


def sym(name, k=1):
    return SymExpr.symbol(name, DEFAULT_TABLE, k)


def random_expr(r: random.Random, terms=3):
    out = SymExpr.const(0)
    for _ in range(terms):
        coeff = GaussianRational(Fraction(r.randint(-5, 5), r.randint(1, 4)), Fraction(r.randint(-3, 3), r.randint(1, 3)))
        t = SymExpr.const(coeff)
        for _ in range(r.randint(0, 3)):
            t = t * sym(r.choice(SYMS), r.randint(-2, 2))
        out = out + t
    return out


def test_rewrite_rules():
    assert sym("s2") ** 2 == 2
    assert sym("spi") ** 2 == sym("pi")
    assert sym("g14") * sym("g34") == sym("s2") * sym("pi")
    assert sym("c12") ** 2 == sym("c")
    assert sym("s2") ** 3 == 2 * sym("s2")


def test_normal_form_is_unique_for_different_groupings():
    a = (sym("g14") * sym("spi")) * (sym("g34") * sym("spi"))
    b = sym("g14") * (sym("spi") ** 2 * sym("g34"))
    assert a == b == sym("s2") * sym("pi") ** 2


def test_critical_pairs_join():
    assert DEFAULT_TABLE.check_termination()
    assert DEFAULT_TABLE.critical_pairs(only_failures=True) == []


def test_laurent_inverse():
    x = 3 * sym("pi", -2) * sym("gamma")
    assert x * x.inverse() == 1
    with pytest.raises(SymError):
        (sym("pi") + 1).inverse()


def test_gaussian_arithmetic():
    i = SymExpr.i()
    assert i * i == -1
    z = GaussianRational(Fraction(1, 2), 3)
    assert z * z.inverse() == 1
    assert complex(z.conjugate()) == complex(0.5, -3)


def test_exp_i_pi_rational():
    s2 = sym("s2")
    assert exp_i_pi_rational(Fraction(1, 2)) == SymExpr.i()
    assert exp_i_pi_rational(Fraction(1, 4)) == (1 + SymExpr.i()) * s2 / 2
    assert exp_i_pi_rational(-2) == 1
    assert exp_i_pi_rational(1) == -1
    with pytest.raises(UnsupportedRootError):
        exp_i_pi_rational(Fraction(1, 3))
    for k in range(-16, 17):
        q = Fraction(k, 4)
        assert abs(complex(exp_i_pi_rational(q)) - cmath.exp(1j * math.pi * q)) < 1e-12


def test_ring_axioms_random_triples():
    r = random.Random(7)
    for _ in range(1000):
        a, b, c = (random_expr(r) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a - a == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_parse_print_round_trip(seed):
    e = random_expr(random.Random(seed))
    assert parse(format_expr(e)) == e


def test_parser_forms():
    assert parse("2*i*pi/3") == 2 * SymExpr.i() * sym("pi") / 3
    assert parse("pi^-2 * s2^3") == 2 * sym("s2") * sym("pi", -2)
    assert parse("(1+i)*(1-i)") == 2
    assert parse("-(g14*g34)") == -(sym("s2") * sym("pi"))
    with pytest.raises(SymError):
        parse("pi +")
    with pytest.raises(SymError):
        parse("foo")
    with pytest.raises(SymError):
        parse("1/(pi+1)")


def test_numeric_evaluation_matches_symbolic_products():
    r = random.Random(11)
    for _ in range(300):
        a, b = random_expr(r), random_expr(r)
        x, y = complex(a), complex(b)
        ref = x * y
        assert abs(complex(a * b) - ref) <= 1e-9 * max(1.0, abs(ref))


def test_numeric_values_of_constants():
    assert abs(complex(sym("g14") * sym("g34")) - math.pi * math.sqrt(2)) < 1e-12
    assert abs(eval_numeric(sym("zeta3")) - 1.2020569031595942) < 1e-14
    assert abs(eval_numeric(sym("gamma")) - 0.5772156649015329) < 1e-14


def test_free_symbol_needs_value():
    v = SymExpr.symbol("v", V_TABLE)
    with pytest.raises(SymError):
        eval_numeric(v)
    assert eval_numeric(v * v + 1, {"v": 2}) == 5
    assert (v + 1).subs("v", 6, DEFAULT_TABLE) == 7


def test_mismatched_tables_refused():
    with pytest.raises(SymError):
        sym("pi") + SymExpr.symbol("v", V_TABLE)
