"""Dense exact matrices over :class:`SymExpr` and the ``z^mu z^R`` conjugation calculus."""

from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .symring import (
    DEFAULT_TABLE,
    GaussianRational,
    SymError,
    SymExpr,
    SymbolTable,
    eval_numeric,
    parse,
)

__all__ = [
    "DimensionError",
    "SingularMatrixError",
    "NotNilpotentError",
    "SymMatrix",
    "ZLMatrix",
    "inverse_rational",
    "inverse_monomial",
    "matrix_exp_nilpotent",
    "conj_by_zpow",
    "zl_exp",
    "zl_is_polynomial",
]


class DimensionError(SymError):
    pass


class SingularMatrixError(SymError):
    pass


class NotNilpotentError(SymError):
    pass


def _to_expr(x, table: SymbolTable) -> SymExpr:
    if isinstance(x, SymExpr):
        if x.table != table:
            raise SymError("matrix entry uses a different symbol table")
        return x
    if isinstance(x, str):
        return parse(x, table)
    return SymExpr.const(x, table)


class SymMatrix:
    """Immutable dense matrix of :class:`SymExpr` (0-based indexing)."""

    __slots__ = ("table", "rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], table: SymbolTable | None = None):
        rows = [list(r) for r in rows]
        if table is None:
            table = next((x.table for r in rows for x in r if isinstance(x, SymExpr)), DEFAULT_TABLE)
        self.table = table
        if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
            raise DimensionError("matrix rows must be nonempty and of equal length")
        self.rows = tuple(tuple(_to_expr(x, table) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0])

    # constructors ------------------------------------------------------------------

    @classmethod
    def identity(cls, n: int, table: SymbolTable = DEFAULT_TABLE) -> "SymMatrix":
        return cls.diag([1] * n, table)

    @classmethod
    def zeros(cls, n: int, m: int | None = None, table: SymbolTable = DEFAULT_TABLE) -> "SymMatrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)], table)

    @classmethod
    def diag(cls, values: Sequence, table: SymbolTable = DEFAULT_TABLE) -> "SymMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], table)

    @classmethod
    def antidiag(cls, values: Sequence, table: SymbolTable = DEFAULT_TABLE) -> "SymMatrix":
        n = len(values)
        return cls([[values[i] if i + j == n - 1 else 0 for j in range(n)] for i in range(n)], table)

    @classmethod
    def permutation(cls, tau: Sequence[int], table: SymbolTable = DEFAULT_TABLE) -> "SymMatrix":
        """P with ``P[i, tau[i]-1] = 1`` (1-based ``tau``): ``(P S P^T)_{ij} = S_{tau_i, tau_j}``."""
        n = len(tau)
        if sorted(tau) != list(range(1, n + 1)):
            raise SymError(f"{list(tau)} is not a permutation of 1..{n}")
        return cls([[1 if tau[i] - 1 == j else 0 for j in range(n)] for i in range(n)], table)

    # access ------------------------------------------------------------------------------

    @property
    def n(self) -> int:
        if self.nrows != self.ncols:
            raise DimensionError("matrix is not square")
        return self.nrows

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                yield i, j, x

    def map(self, f: Callable[[SymExpr], object], table: SymbolTable | None = None) -> "SymMatrix":
        return SymMatrix([[f(x) for x in r] for r in self.rows], table or self.table)

    def replace(self, i: int, j: int, value) -> "SymMatrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = value
        return SymMatrix(rows, self.table)

    def column(self, j: int) -> list[SymExpr]:
        return [r[j] for r in self.rows]

    # arithmetic ---------------------------------------------------------------------------

    def _check_same(self, other: "SymMatrix"):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.table != other.table:
            raise SymError("matrices use different symbol tables")

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_same(other)
        return SymMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.table)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_same(other)
        return SymMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.table)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        if isinstance(other, SymMatrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            if self.table != other.table:
                raise SymError("matrices use different symbol tables")
            cols = list(zip(*other.rows))
            zero = SymExpr.const(0, self.table)
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = zero
                    for a, b in zip(r, c):
                        if a.terms and b.terms:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return SymMatrix(out, self.table)
        if isinstance(other, (SymExpr, int, Fraction, GaussianRational)):
            return self.map(lambda x: x * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (SymExpr, int, Fraction, GaussianRational)):
            return self.map(lambda x: other * x)
        return NotImplemented

    def __matmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int) -> "SymMatrix":
        if k < 0:
            return inverse_rational(self) ** (-k)
        out = SymMatrix.identity(self.n, self.table)
        for _ in range(k):
            out = out * self
        return out

    @property
    def T(self) -> "SymMatrix":
        return SymMatrix(list(zip(*self.rows)), self.table)

    def transpose(self) -> "SymMatrix":
        return self.T

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.shape == other.shape and self.table == other.table and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    # predicates ---------------------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(x.is_zero() for _, _, x in self.entries())

    def is_rational(self) -> bool:
        return all(x.is_rational() for _, _, x in self.entries())

    def is_upper_triangular(self) -> bool:
        return all(x.is_zero() for i, j, x in self.entries() if i > j)

    def is_unipotent_upper(self) -> bool:
        return self.is_upper_triangular() and all(self.rows[i][i] == 1 for i in range(self.n))

    def is_symmetric(self) -> bool:
        return self == self.T

    def symbols_used(self) -> set[str]:
        out: set[str] = set()
        for _, _, x in self.entries():
            out |= x.symbols_used()
        return out

    # conversion -----------------------------------------------------------------------------

    def to_numpy(self, values: Mapping[str, complex] | None = None) -> np.ndarray:
        return np.array([[eval_numeric(x, values) for x in r] for r in self.rows], dtype=complex)

    def to_table(self, table: SymbolTable) -> "SymMatrix":
        return SymMatrix([[x.to_table(table) for x in r] for r in self.rows], table)

    def subs(self, name: str, value, table: SymbolTable | None = None) -> "SymMatrix":
        target = table or self.table
        return SymMatrix([[x.subs(name, value, target) for x in r] for r in self.rows], target)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], table: SymbolTable = DEFAULT_TABLE) -> "SymMatrix":
        if not isinstance(rows, (list, tuple)) or not all(isinstance(r, (list, tuple)) for r in rows):
            raise SymError("matrix JSON must be an array of arrays")
        return cls([[parse(str(x), table) for x in r] for r in rows], table)

    def to_json(self) -> str:
        return json.dumps(self.to_strings(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str, table: SymbolTable = DEFAULT_TABLE) -> "SymMatrix":
        return cls.from_strings(json.loads(text), table)

    def __str__(self):
        width = max(len(str(x)) for _, _, x in self.entries())
        return "\n".join("[" + ", ".join(str(x).rjust(width) for x in r) + "]" for r in self.rows)

    def __repr__(self):
        return f"SymMatrix({self.to_strings()!r})"


def inverse_rational(A: SymMatrix) -> SymMatrix:
    """Exact Gauss-Jordan inverse of a matrix with Gaussian-rational entries."""
    n = A.n
    if not A.is_rational():
        raise SymError("inverse_rational: matrix has symbolic entries")
    M = [[A[i, j].as_gaussian() for j in range(n)] + [GaussianRational(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inverse()
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return SymMatrix([row[n:] for row in M], A.table)


def inverse_monomial(A: SymMatrix) -> SymMatrix:
    """Inverse of a generalized permutation matrix whose nonzero entries are single terms."""
    n = A.n
    out = [[SymExpr.const(0, A.table)] * n for _ in range(n)]
    seen_cols = set()
    for i in range(n):
        nz = [j for j in range(n) if not A[i, j].is_zero()]
        if len(nz) != 1 or nz[0] in seen_cols:
            raise SymError("inverse_monomial: not a generalized permutation matrix")
        j = nz[0]
        seen_cols.add(j)
        out[j][i] = A[i, j].inverse()
    return SymMatrix(out, A.table)


def matrix_exp_nilpotent(X: SymMatrix, scalar=1) -> SymMatrix:
    """``exp(scalar*X)`` for nilpotent ``X`` as a finite sum with exact factorials."""
    n = X.n
    powers = [SymMatrix.identity(n, X.table)]
    for _ in range(n):
        powers.append(powers[-1] * X)
    if not powers[n].is_zero():
        raise NotNilpotentError("matrix is not nilpotent")
    s = scalar if isinstance(scalar, SymExpr) else SymExpr.const(scalar, X.table)
    out = powers[0]
    sk = SymExpr.const(1, X.table)
    for k in range(1, n):
        if powers[k].is_zero():
            break
        sk = sk * s
        out = out + powers[k] * (sk * Fraction(1, factorial(k)))
    return out


# ---------------------------------------------------------------------------
# polynomials in Z (quarter-integer exponents) and L = log z


ZLKey = tuple[int, int]  # (4 * exponent of Z, power of L)


class ZLMatrix:
    """Matrix of finite sums ``c * Z^(a4/4) * L^b`` with ``c`` a SymExpr."""

    __slots__ = ("table", "cells", "nrows", "ncols")

    def __init__(self, cells: Sequence[Sequence[Mapping[ZLKey, SymExpr]]], table: SymbolTable = DEFAULT_TABLE):
        self.table = table
        self.cells = tuple(tuple({k: v for k, v in c.items() if not v.is_zero()} for c in row) for row in cells)
        self.nrows = len(self.cells)
        self.ncols = len(self.cells[0])

    @classmethod
    def from_sym(cls, M: SymMatrix, a4: int = 0, b: int = 0) -> "ZLMatrix":
        return cls([[{(a4, b): x} for x in r] for r in M.rows], M.table)

    @classmethod
    def zpow_diag(cls, mu: Sequence, sign: int, table: SymbolTable = DEFAULT_TABLE) -> "ZLMatrix":
        """``z^{sign*mu}`` for a diagonal ``mu``."""
        n = len(mu)
        one = SymExpr.const(1, table)
        return cls([[{(_quarter(sign * Fraction(mu[i])), 0): one} if i == j else {} for j in range(n)] for i in range(n)], table)

    @classmethod
    def from_polys(cls, rows: Sequence[Sequence[Mapping[int, object]]], table: SymbolTable = DEFAULT_TABLE) -> "ZLMatrix":
        """Build from integer-exponent polynomials ``{deg: coeff}`` (no logarithms)."""
        return cls([[{(4 * d, 0): _to_expr(c, table) for d, c in p.items()} for p in r] for r in rows], table)

    def __getitem__(self, ij) -> dict:
        i, j = ij
        return dict(self.cells[i][j])

    def __mul__(self, other: "ZLMatrix") -> "ZLMatrix":
        if self.ncols != other.nrows:
            raise DimensionError("ZL shape mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc: dict[ZLKey, SymExpr] = {}
                for k in range(self.ncols):
                    for (a1, b1), c1 in self.cells[i][k].items():
                        for (a2, b2), c2 in other.cells[k][j].items():
                            key = (a1 + a2, b1 + b2)
                            p = c1 * c2
                            acc[key] = acc[key] + p if key in acc else p
                row.append(acc)
            out.append(row)
        return ZLMatrix(out, self.table)

    def __add__(self, other: "ZLMatrix") -> "ZLMatrix":
        out = []
        for r1, r2 in zip(self.cells, other.cells):
            row = []
            for c1, c2 in zip(r1, r2):
                acc = dict(c1)
                for k, v in c2.items():
                    acc[k] = acc[k] + v if k in acc else v
                row.append(acc)
            out.append(row)
        return ZLMatrix(out, self.table)

    def __neg__(self):
        return ZLMatrix([[{k: -v for k, v in c.items()} for c in r] for r in self.cells], self.table)

    def __sub__(self, other):
        return self + (-other)

    @property
    def T(self) -> "ZLMatrix":
        return ZLMatrix([list(col) for col in zip(*self.cells)], self.table)

    def __eq__(self, other):
        if not isinstance(other, ZLMatrix):
            return NotImplemented
        return self.cells == other.cells

    def __hash__(self):
        return hash(tuple(tuple(frozenset(c.items()) for c in r) for r in self.cells))

    def negate_z(self) -> "ZLMatrix":
        """Substitute ``z -> -z`` in a polynomial (integer powers, no logarithms)."""
        if not zl_is_polynomial(self, allow_negative=True):
            raise SymError("z -> -z is only defined here for Laurent polynomials without logarithms")
        return ZLMatrix(
            [[{(a, b): (v if (a // 4) % 2 == 0 else -v) for (a, b), v in c.items()} for c in r] for r in self.cells],
            self.table,
        )

    def at_zero(self) -> SymMatrix:
        """Constant term of a polynomial matrix."""
        if not zl_is_polynomial(self):
            raise SymError("evaluation at z=0 requires a polynomial")
        return SymMatrix([[c.get((0, 0), 0) for c in r] for r in self.cells], self.table)

    def truncate(self, max_a4: int) -> "ZLMatrix":
        return ZLMatrix([[{k: v for k, v in c.items() if k[0] <= max_a4} for c in r] for r in self.cells], self.table)

    def __str__(self):
        def cell(c):
            if not c:
                return "0"
            parts = []
            for (a, b), v in sorted(c.items()):
                mon = ""
                if a:
                    mon += f"*Z^{Fraction(a, 4)}"
                if b:
                    mon += f"*L^{b}"
                parts.append(f"[{v}]{mon}")
            return " + ".join(parts)

        return "\n".join(" | ".join(cell(c) for c in r) for r in self.cells)


def _quarter(x: Fraction) -> int:
    a4 = Fraction(x) * 4
    if a4.denominator != 1:
        raise SymError(f"exponent {x} does not have denominator dividing 4")
    return int(a4)


def zl_exp(R: SymMatrix, sign: int = 1) -> ZLMatrix:
    """``z^{sign*R} = exp(sign*L*R)`` for nilpotent ``R``."""
    n = R.n
    terms = []
    P = SymMatrix.identity(n, R.table)
    for k in range(n + 1):
        if P.is_zero():
            break
        if k == n:
            raise NotNilpotentError("matrix is not nilpotent")
        terms.append((k, P * Fraction(sign ** k, factorial(k))))
        P = P * R
    return ZLMatrix([[{(0, k): M[i, j] for k, M in terms} for j in range(n)] for i in range(n)], R.table)


def conj_by_zpow(G: SymMatrix, mu: Sequence, R: SymMatrix) -> ZLMatrix:
    """``z^mu z^R G z^{-R} z^{-mu}``; entry ``(a, b)`` carries ``Z^{mu_a - mu_b}``."""
    n = G.n
    inner = zl_exp(R, 1) * ZLMatrix.from_sym(G) * zl_exp(R, -1)
    mu = [Fraction(m) for m in mu]
    if len(mu) != n:
        raise DimensionError("mu has the wrong length")
    return ZLMatrix(
        [[{(a + _quarter(mu[i] - mu[j]), b): v for (a, b), v in inner.cells[i][j].items()} for j in range(n)] for i in range(n)],
        G.table,
    )


def zl_is_polynomial(M: ZLMatrix, allow_negative: bool = False) -> bool:
    """True iff every term has an integer Z-exponent (>= 0 unless allowed) and no logarithm."""
    for r in M.cells:
        for c in r:
            for a, b in c:
                if b != 0 or a % 4 != 0 or (a < 0 and not allow_negative):
                    return False
    return True
