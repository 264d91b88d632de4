"""Exact coefficient ring for monodromy data.

Elements are finite sums ``q * m`` where ``q`` is a Gaussian rational and ``m``
is a Laurent monomial in a fixed, ordered list of formal constants.  A small
oriented rewrite system (square roots and the reflection identity for
Gamma(1/4) Gamma(3/4)) puts every monomial into a unique normal form, so two
expressions are equal iff their term dictionaries are equal.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "SymError",
    "UnsupportedRootError",
    "GaussianRational",
    "Rule",
    "SymbolTable",
    "SymExpr",
    "DEFAULT_TABLE",
    "V_TABLE",
    "parse",
    "exp_i_pi_rational",
    "eval_numeric",
]


class SymError(ValueError):
    """Raised for malformed input or operations outside the ring."""


class UnsupportedRootError(SymError):
    """Raised when a root of unity is not expressible with the available symbols."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise SymError(f"cannot convert {x!r} to an exact rational")


class GaussianRational:
    """``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        g = object.__new__(cls)
        object.__setattr__(g, "re", re)
        object.__setattr__(g, "im", im)
        return g

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def is_real(self):
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return _fmt_coeff(self)


ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)

Scalar = Union[int, Fraction, GaussianRational]


@dataclass(frozen=True)
class Rule:
    """Oriented monomial rewrite ``lhs -> coeff * rhs`` (exponent maps by name)."""

    lhs: tuple[tuple[str, int], ...]
    coeff: Fraction
    rhs: tuple[tuple[str, int], ...]

    @staticmethod
    def make(lhs: Mapping[str, int], coeff, rhs: Mapping[str, int]) -> "Rule":
        return Rule(tuple(sorted(lhs.items())), _frac(coeff), tuple(sorted(rhs.items())))

    def __str__(self):
        def mon(m):
            return "*".join(f"{s}^{e}" if e != 1 else s for s, e in m) or "1"

        return f"{mon(self.lhs)} -> {self.coeff}*{mon(self.rhs)}"


class SymbolTable:
    """Ordered symbol list, rewrite rules and numeric values for the oracle."""

    def __init__(self, symbols: Iterable[str], rules: Iterable[Rule], numeric: Mapping[str, complex]):
        self.symbols: tuple[str, ...] = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise SymError("duplicate symbol names")
        self.index = {s: k for k, s in enumerate(self.symbols)}
        self.rules: tuple[Rule, ...] = tuple(rules)
        self.numeric = dict(numeric)
        for r in self.rules:
            for s, _ in r.lhs + r.rhs:
                if s not in self.index:
                    raise SymError(f"rule mentions unknown symbol {s}")
        self._compiled = [self._compile(r) for r in self.rules]
        self._nf_cache: dict[tuple[int, ...], tuple[GaussianRational, tuple[int, ...]]] = {}
        self.zero_mono = (0,) * len(self.symbols)
        if not self.check_termination():
            raise SymError("rewrite rules do not decrease the termination weight")
        bad = self.critical_pairs(only_failures=True)
        if bad:
            raise SymError(f"rewrite system is not locally confluent: {bad}")

    def _compile(self, r: Rule):
        n = len(self.symbols)
        lhs = [0] * n
        rhs = [0] * n
        for s, e in r.lhs:
            lhs[self.index[s]] = e
        for s, e in r.rhs:
            rhs[self.index[s]] = e
        return tuple(lhs), r.coeff, tuple(rhs)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SymbolTable):
            return NotImplemented
        return self.symbols == other.symbols and self.rules == other.rules

    def __hash__(self):
        return hash((self.symbols, self.rules))

    def __repr__(self):
        return f"SymbolTable({', '.join(self.symbols)})"

    def extended(self, *names: str, numeric: Mapping[str, complex] | None = None) -> "SymbolTable":
        """Copy of this table with extra free symbols appended."""
        vals = dict(self.numeric)
        vals.update(numeric or {})
        return SymbolTable(self.symbols + tuple(names), self.rules, vals)

    # termination / confluence ------------------------------------------------

    def _constrained(self) -> set[int]:
        out = set()
        for lhs, _, _ in self._compiled:
            out.update(k for k, e in enumerate(lhs) if e)
        return out

    def weight(self, mono: tuple[int, ...]) -> int:
        """Total degree in the symbols that occur on some left-hand side."""
        cons = self._constrained()
        return sum(mono[k] for k in cons)

    def check_termination(self) -> bool:
        return all(self.weight(lhs) > self.weight(rhs) for lhs, _, rhs in self._compiled)

    def rewrite_step(self, coeff: Fraction, mono: tuple[int, ...]):
        """One rewrite at the first applicable rule, or None (nonnegative monomials)."""
        for lhs, c, rhs in self._compiled:
            if all(m >= l for m, l in zip(mono, lhs)):
                return coeff * c, tuple(m - l + r for m, l, r in zip(mono, lhs, rhs))
        return None

    def _rewrite_with(self, k: int, coeff, mono):
        lhs, c, rhs = self._compiled[k]
        return coeff * c, tuple(m - l + r for m, l, r in zip(mono, lhs, rhs))

    def rewrite_nf(self, coeff: Fraction, mono: tuple[int, ...]):
        """Normal form by exhaustive single-step rewriting (nonnegative monomials only)."""
        if any(e < 0 for e in mono):
            raise SymError("single-step rewriting is defined on polynomial monomials")
        cur = (Fraction(coeff), mono)
        while True:
            nxt = self.rewrite_step(*cur)
            if nxt is None:
                return cur
            cur = nxt

    def critical_pairs(self, only_failures: bool = False):
        """Overlaps lcm(l1, l2) of left-hand sides sharing a symbol, with both reducts' normal forms."""
        out = []
        rules = self._compiled
        for a in range(len(rules)):
            for b in range(a + 1, len(rules)):
                la, lb = rules[a][0], rules[b][0]
                if not any(x and y for x, y in zip(la, lb)):
                    continue
                lcm = tuple(max(x, y) for x, y in zip(la, lb))
                left = self.rewrite_nf(*self._rewrite_with(a, Fraction(1), lcm))
                right = self.rewrite_nf(*self._rewrite_with(b, Fraction(1), lcm))
                ok = left == right
                if not only_failures or not ok:
                    out.append((self.rules[a], self.rules[b], lcm, ok))
        return out

    # Laurent normal form -----------------------------------------------------

    def normalize_monomial(self, mono: tuple[int, ...]) -> tuple[GaussianRational, tuple[int, ...]]:
        """Closed-form normal form valid for negative exponents as well.

        Each rule ``lhs -> c*rhs`` is applied ``k`` times at once with ``k``
        an integer (possibly negative) chosen so that afterwards the monomial is
        no longer divisible by ``lhs`` and has no negative exponent on a
        symbol of ``lhs`` unless unavoidable.
        """
        hit = self._nf_cache.get(mono)
        if hit is not None:
            return hit
        coeff = Fraction(1)
        cur = list(mono)
        for _ in range(64):
            changed = False
            for lhs, c, rhs in self._compiled:
                support = [k for k, e in enumerate(lhs) if e]
                k = min(cur[j] // lhs[j] for j in support)
                if k == 0:
                    continue
                changed = True
                coeff *= c ** k
                for j in range(len(cur)):
                    cur[j] += k * (rhs[j] - lhs[j])
            if not changed:
                break
        else:  # pragma: no cover - guarded by the termination check
            raise SymError("normalization did not terminate")
        res = (GaussianRational._raw(coeff, Fraction(0)), tuple(cur))
        self._nf_cache[mono] = res
        return res

    @staticmethod
    def default() -> "SymbolTable":
        syms = ("pi", "gamma", "zeta3", "s2", "spi", "g14", "g34", "c12", "c")
        rules = (
            Rule.make({"s2": 2}, 2, {}),
            Rule.make({"spi": 2}, 1, {"pi": 1}),
            Rule.make({"g14": 1, "g34": 1}, 1, {"s2": 1, "pi": 1}),
            Rule.make({"c12": 2}, 1, {"c": 1}),
        )
        numeric = {
            "pi": math.pi,
            "gamma": 0.5772156649015329,
            "zeta3": 1.2020569031595943,
            "s2": math.sqrt(2.0),
            "spi": math.sqrt(math.pi),
            "g14": 3.6256099082219083,
            "g34": 1.2254167024651777,
            "c12": 1.0,
            "c": 1.0,
        }
        return SymbolTable(syms, rules, numeric)


DEFAULT_TABLE = SymbolTable.default()
#: default constants plus a free parameter ``v`` (no numeric value)
V_TABLE = DEFAULT_TABLE.extended("v")


class SymExpr:
    """Immutable element of the ring over a given :class:`SymbolTable`."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: SymbolTable, terms: Mapping[tuple[int, ...], GaussianRational] | None = None):
        self.table = table
        acc: dict[tuple[int, ...], GaussianRational] = {}
        for mono, q in (terms or {}).items():
            c, nf = table.normalize_monomial(tuple(mono))
            v = acc.get(nf)
            add = c * GaussianRational.coerce(q)
            acc[nf] = add if v is None else v + add
        self.terms = {m: q for m, q in acc.items() if q}
        self._hash = None

    @classmethod
    def _from_normal(cls, table, terms):
        e = object.__new__(cls)
        e.table = table
        e.terms = terms
        e._hash = None
        return e

    # constructors ------------------------------------------------------------

    @classmethod
    def const(cls, value: Scalar = 0, table: SymbolTable = DEFAULT_TABLE) -> "SymExpr":
        q = GaussianRational.coerce(value)
        return cls._from_normal(table, {table.zero_mono: q} if q else {})

    @classmethod
    def symbol(cls, name: str, table: SymbolTable = DEFAULT_TABLE, power: int = 1) -> "SymExpr":
        if name not in table.index:
            raise SymError(f"unknown symbol {name!r}")
        mono = [0] * len(table.symbols)
        mono[table.index[name]] = power
        return cls(table, {tuple(mono): ONE})

    @classmethod
    def i(cls, table: SymbolTable = DEFAULT_TABLE) -> "SymExpr":
        return cls.const(I_UNIT, table)

    # coercion ------------------------------------------------------------------

    def _lift(self, other) -> "SymExpr":
        if isinstance(other, SymExpr):
            if other.table is not self.table and other.table != self.table:
                raise SymError("operands use different symbol tables")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return SymExpr.const(other, self.table)
        raise TypeError(f"cannot combine SymExpr with {type(other).__name__}")

    # ring operations -------------------------------------------------------------

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        out = dict(self.terms)
        for m, q in o.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = q
            else:
                s = v + q
                if s:
                    out[m] = s
                else:
                    del out[m]
        return SymExpr._from_normal(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return SymExpr._from_normal(self.table, {m: -q for m, q in self.terms.items()})

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            q = GaussianRational.coerce(other)
            if not q:
                return SymExpr._from_normal(self.table, {})
            return SymExpr._from_normal(self.table, {m: c * q for m, c in self.terms.items()})
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        table = self.table
        nf = table.normalize_monomial
        out: dict[tuple[int, ...], GaussianRational] = {}
        for m1, q1 in self.terms.items():
            for m2, q2 in o.terms.items():
                c, m = nf(tuple(a + b for a, b in zip(m1, m2)))
                q = q1 * q2
                if c.re != 1:
                    q = q * c
                v = out.get(m)
                out[m] = q if v is None else v + q
        return SymExpr._from_normal(table, {m: q for m, q in out.items() if q})

    __rmul__ = __mul__

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "SymExpr":
        """Inverse of a single-term expression."""
        if len(self.terms) != 1:
            raise SymError("only single-term expressions are invertible in this ring")
        (m, q), = self.terms.items()
        return SymExpr(self.table, {tuple(-e for e in m): q.inverse()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * GaussianRational.coerce(other).inverse()
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise SymError("exponent must be an integer")
        if k < 0:
            return self.inverse() ** (-k)
        result = SymExpr.const(1, self.table)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "SymExpr":
        """Complex conjugate; every formal constant is real."""
        return SymExpr._from_normal(self.table, {m: q.conjugate() for m, q in self.terms.items()})

    # predicates ------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = SymExpr.const(other, self.table)
        if not isinstance(other, SymExpr):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        """True if the expression is a plain Gaussian rational (no symbols)."""
        return all(m == self.table.zero_mono for m in self.terms)

    def as_gaussian(self) -> GaussianRational:
        if not self.is_rational():
            raise SymError(f"{self} is not a pure Gaussian rational")
        return self.terms.get(self.table.zero_mono, GaussianRational())

    def symbols_used(self) -> set[str]:
        used = set()
        for m in self.terms:
            used.update(self.table.symbols[k] for k, e in enumerate(m) if e)
        return used

    # substitution / table transfer -------------------------------------------------

    def to_table(self, table: SymbolTable) -> "SymExpr":
        """Re-express over another table that contains every used symbol."""
        out = {}
        for m, q in self.terms.items():
            mono = [0] * len(table.symbols)
            for k, e in enumerate(m):
                if e:
                    name = self.table.symbols[k]
                    if name not in table.index:
                        raise SymError(f"symbol {name} missing from target table")
                    mono[table.index[name]] = e
            out[tuple(mono)] = q
        return SymExpr(table, out)

    def subs(self, name: str, value, table: SymbolTable | None = None) -> "SymExpr":
        """Substitute ``name`` by ``value`` (nonnegative powers only), landing in ``table``."""
        target = table or self.table
        k = self.table.index[name]
        val = value if isinstance(value, SymExpr) else SymExpr.const(value, target)
        val = val.to_table(target)
        acc = SymExpr.const(0, target)
        for m, q in self.terms.items():
            e = m[k]
            rest = list(m)
            rest[k] = 0
            part = SymExpr(self.table, {tuple(rest): q}).to_table(target)
            acc = acc + part * (val ** e)
        return acc

    def poly_coeffs(self, name: str) -> dict[int, "SymExpr"]:
        """Coefficients of powers of ``name``."""
        k = self.table.index[name]
        out: dict[int, dict] = {}
        for m, q in self.terms.items():
            rest = list(m)
            e = rest[k]
            rest[k] = 0
            out.setdefault(e, {})[tuple(rest)] = q
        return {e: SymExpr._from_normal(self.table, t) for e, t in out.items()}

    # display ---------------------------------------------------------------------------

    def __str__(self):
        return format_expr(self)

    def __repr__(self):
        return f"SymExpr({format_expr(self)!r})"

    def __complex__(self):
        return eval_numeric(self)


# ---------------------------------------------------------------------------
# numeric oracle


def eval_numeric(e: SymExpr, values: Mapping[str, complex] | None = None) -> complex:
    """Evaluate with the table's numeric values (optionally overridden)."""
    vals = dict(e.table.numeric)
    if values:
        vals.update(values)
    total = 0j
    for m, q in e.terms.items():
        term = complex(q)
        for k, p in enumerate(m):
            if p:
                name = e.table.symbols[k]
                if name not in vals:
                    raise SymError(f"symbol {name} has no numeric value")
                term *= complex(vals[name]) ** p
        total += term
    return total


# ---------------------------------------------------------------------------
# roots of unity


def exp_i_pi_rational(q, table: SymbolTable = DEFAULT_TABLE) -> SymExpr:
    """Exact ``exp(i*pi*q)`` for ``q`` with denominator 1, 2 or 4."""
    q = _frac(q)
    if q.denominator not in (1, 2, 4):
        raise UnsupportedRootError(f"exp(i*pi*{q}) needs roots not in the ring")
    k = int((q * 4) % 8)
    unit = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)][k]
    g = GaussianRational(*unit)
    if k % 2 == 0:
        return SymExpr.const(g, table)
    return SymExpr.symbol("s2", table) * (g * Fraction(1, 2))


# ---------------------------------------------------------------------------
# text grammar


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_coeff(q: GaussianRational) -> str:
    if not q.im:
        return f"({_fmt_frac(q.re)})"
    if not q.re:
        return f"({_fmt_frac(q.im)})*i"
    sign = "+" if q.im > 0 else "-"
    return f"({_fmt_frac(q.re)}{sign}{_fmt_frac(abs(q.im))}*i)"


def _fmt_mono(table: SymbolTable, m: tuple[int, ...]) -> str:
    parts = []
    for k, e in enumerate(m):
        if e == 1:
            parts.append(table.symbols[k])
        elif e:
            parts.append(f"{table.symbols[k]}^{e}")
    return "*".join(parts)


def format_expr(e: SymExpr) -> str:
    """Canonical text, e.g. ``(-1/3)*i*pi^3 + (2)*gamma``."""
    if not e.terms:
        return "0"
    out = []
    for m in sorted(e.terms, key=lambda t: tuple(-x for x in t)):
        q = e.terms[m]
        mono = _fmt_mono(e.table, m)
        if not mono:
            out.append(_fmt_coeff(q))
        elif q == 1:
            out.append(mono)
        else:
            out.append(f"{_fmt_coeff(q)}*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text: str, table: SymbolTable):
        self.table = table
        self.toks: list[tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if mt is None:
                break
            pos = mt.end()
            num, name, op = mt.groups()
            if num is not None:
                self.toks.append(("num", num))
            elif name is not None:
                self.toks.append(("name", name))
            elif op is not None and not op.isspace():
                if op not in "+-*/^()":
                    raise SymError(f"unexpected character {op!r}")
                self.toks.append(("op", op))
        self.k = 0

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else ("end", "")

    def take(self, kind=None, val=None):
        t = self.peek()
        if (kind and t[0] != kind) or (val and t[1] != val):
            raise SymError(f"expected {val or kind}, found {t[1] or 'end of input'}")
        self.k += 1
        return t

    def parse(self) -> SymExpr:
        if not self.toks:
            raise SymError("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            raise SymError(f"trailing input at {self.peek()[1]!r}")
        return e

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            f = self.factor()
            acc = acc * f if op == "*" else acc / f
        return acc

    def _int(self):
        neg = False
        if self.peek() == ("op", "-"):
            self.take()
            neg = True
        elif self.peek() == ("op", "+"):
            self.take()
        n = int(self.take("num")[1])
        return -n if neg else n

    def factor(self):
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            return -self.factor()
        if t == ("op", "+"):
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            if self.peek() == ("op", "("):
                self.take()
                k = self._int()
                self.take("op", ")")
            else:
                k = self._int()
            base = base ** k
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return SymExpr.const(int(val), self.table)
        if kind == "name":
            if val == "i":
                return SymExpr.i(self.table)
            if val not in self.table.index:
                raise SymError(f"unknown symbol {val!r}")
            return SymExpr.symbol(val, self.table)
        if val == "(":
            e = self.expr()
            self.take("op", ")")
            return e
        raise SymError(f"unexpected token {val!r}")


def parse(text: str, table: SymbolTable = DEFAULT_TABLE) -> SymExpr:
    """Parse the text grammar (sums/products/powers of integers, ``i`` and symbols)."""
    return _Parser(text, table).parse()
