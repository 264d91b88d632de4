"""Monodromy data (mu, R, eta, S, C), their constraint checks and the group actions on them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .linalg import (
    SymMatrix,
    ZLMatrix,
    conj_by_zpow,
    inverse_monomial,
    inverse_rational,
    matrix_exp_nilpotent,
    zl_is_polynomial,
)
from .report import Report
from .symring import DEFAULT_TABLE, SymError, SymExpr, SymbolTable, exp_i_pi_rational

__all__ = [
    "MonodromyError",
    "GaugeRefused",
    "BraidWord",
    "MonodromyData",
    "ActionRecord",
    "check_constraints",
    "g_eta_mu_membership",
    "c0_membership",
    "braid_matrix",
    "apply_braid",
    "apply_braid_with_matrix",
    "apply_permutation",
    "apply_signs",
    "apply_gauge",
    "apply_shift",
    "apply_action",
    "center_braid",
    "coalescence_vanishing_check",
    "exp_mu",
    "exp_R",
    "monodromy_M0",
]


class MonodromyError(SymError):
    """Structurally invalid monodromy data or a refused action."""


class GaugeRefused(MonodromyError):
    pass


@dataclass(frozen=True)
class BraidWord:
    """Letters ``(i, sign)`` meaning the elementary braid ``beta_{i,i+1}^sign``, applied left to right."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for i, s in self.letters:
            if not isinstance(i, int) or i < 1 or s not in (1, -1):
                raise SymError(f"bad braid letter {(i, s)}")

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        letters = []
        for tok in text.replace(",", " ").split():
            try:
                k = int(tok)
            except ValueError:
                raise SymError(f"bad braid token {tok!r}") from None
            if k == 0:
                raise SymError("braid index 0 is not allowed")
            letters.append((abs(k), 1 if k > 0 else -1))
        return cls(tuple(letters))

    @classmethod
    def of(cls, *gens: int) -> "BraidWord":
        return cls.parse(" ".join(map(str, gens)))

    def __str__(self):
        return " ".join(str(i * s) for i, s in self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.letters * k)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple((i, -s) for i, s in reversed(self.letters)))

    def reversed(self) -> "BraidWord":
        return BraidWord(tuple(reversed(self.letters)))

    def check_range(self, n: int) -> None:
        for i, _ in self.letters:
            if i > n - 1:
                raise SymError(f"braid index {i} out of range for n={n}")


def _fractions(mu: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(m) for m in mu)


@dataclass(frozen=True)
class MonodromyData:
    mu: tuple[Fraction, ...]
    R: SymMatrix
    eta: SymMatrix
    S: SymMatrix
    C: SymMatrix
    u: tuple[complex, ...] | None = None
    _eta_inv: SymMatrix | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "mu", _fractions(self.mu))
        if self.u is not None:
            object.__setattr__(self, "u", tuple(complex(x) for x in self.u))
        n = len(self.mu)
        for name in ("R", "eta", "S", "C"):
            if getattr(self, name).shape != (n, n):
                raise MonodromyError(f"{name} must be {n}x{n}")
        if self.u is not None and len(self.u) != n:
            raise MonodromyError("u has the wrong length")
        if not self.eta.is_symmetric():
            raise MonodromyError("eta is not symmetric")
        for i, j, x in self.eta.entries():
            if not x.is_zero() and self.mu[i] + self.mu[j] != 0:
                raise MonodromyError("eta and mu violate mu*eta + eta*mu = 0")
        if any(self.S[i, i] != 1 for i in range(n)):
            raise MonodromyError("diagonal of S must be 1")
        for i, j, x in self.R.entries():
            d = self.mu[i] - self.mu[j]
            if not x.is_zero() and not (d.denominator == 1 and d >= 1):
                raise MonodromyError(f"R[{i + 1},{j + 1}] must vanish (mu difference {d})")
        if self._eta_inv is None:
            object.__setattr__(self, "_eta_inv", eta_inverse(self.eta))

    @property
    def n(self) -> int:
        return len(self.mu)

    @property
    def eta_inv(self) -> SymMatrix:
        return self._eta_inv

    @property
    def table(self) -> SymbolTable:
        return self.C.table

    def with_(self, **kw) -> "MonodromyData":
        if "eta" not in kw:
            kw.setdefault("_eta_inv", self._eta_inv)
        else:
            kw["_eta_inv"] = None
        return replace(self, **kw)

    def same_data(self, other: "MonodromyData") -> bool:
        return (self.mu, self.R, self.eta, self.S, self.C) == (other.mu, other.R, other.eta, other.S, other.C)

    # serialization -------------------------------------------------------------------

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "mu": [str(m) for m in self.mu],
            "R": self.R.to_strings(),
            "eta": self.eta.to_strings(),
            "S": self.S.to_strings(),
            "C": self.C.to_strings(),
        }
        if self.u is not None:
            d["u"] = [[x.real, x.imag] for x in self.u]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_dict(cls, d: dict, table: SymbolTable = DEFAULT_TABLE) -> "MonodromyData":
        if not isinstance(d, dict):
            raise SymError("monodromy data must be a JSON object")
        try:
            mu = [Fraction(str(m)) for m in d["mu"]]
            mats = {k: SymMatrix.from_strings(d[k], table) for k in ("R", "eta", "S", "C")}
            u = d.get("u")
            if u is not None:
                u = [complex(float(a), float(b)) for a, b in u]
        except KeyError as e:
            raise SymError(f"missing field {e}") from None
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise SymError(f"malformed monodromy data: {e}") from None
        if "n" in d and d["n"] != len(mu):
            raise SymError("field n disagrees with mu")
        return cls(tuple(mu), mats["R"], mats["eta"], mats["S"], mats["C"], None if u is None else tuple(u))

    @classmethod
    def from_json(cls, text: str, table: SymbolTable = DEFAULT_TABLE) -> "MonodromyData":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise SymError(f"invalid JSON: {e}") from None
        return cls.from_dict(d, table)


def eta_inverse(eta: SymMatrix) -> SymMatrix:
    try:
        return inverse_monomial(eta)
    except SymError:
        return inverse_rational(eta)


# ---------------------------------------------------------------------------
# exponentials


def exp_mu(mu: Sequence, factor, table: SymbolTable = DEFAULT_TABLE) -> SymMatrix:
    """``exp(factor * pi * i * mu)`` for diagonal ``mu``."""
    f = Fraction(factor)
    return SymMatrix.diag([exp_i_pi_rational(f * Fraction(m), table) for m in mu], table)


def exp_R(R: SymMatrix, factor) -> SymMatrix:
    """``exp(factor * pi * i * R)``."""
    s = SymExpr.i(R.table) * SymExpr.symbol("pi", R.table) * Fraction(factor)
    return matrix_exp_nilpotent(R, s)


def monodromy_M0(md: MonodromyData, power: int = 1) -> SymMatrix:
    """``M0^power`` with ``M0 = e^{2 pi i mu} e^{2 pi i R}`` (``power`` = +-1 or any integer)."""
    if power >= 0:
        M = exp_mu(md.mu, 2, md.table) * exp_R(md.R, 2)
        return M ** power
    Minv = exp_R(md.R, -2) * exp_mu(md.mu, -2, md.table)
    out = SymMatrix.identity(md.n, md.table)
    for _ in range(-power):
        out = out * Minv
    return out


# ---------------------------------------------------------------------------
# checks


def check_constraints(md: MonodromyData) -> Report:
    """The three monodromy identities, each in multiplication-only form."""
    rep = Report("monodromy constraints")
    S, C = md.S, md.C
    CS = C * S
    CSt = C * S.T
    M0 = monodromy_M0(md)
    rep.add("C S^T = M0 C S", CSt == M0 * CS)
    rhs2 = exp_R(md.R, -1) * exp_mu(md.mu, -1, md.table) * md.eta_inv
    rep.add("C S C^T = e^{-pi i R} e^{-pi i mu} eta^-1", CS * C.T == rhs2)
    rhs3 = exp_R(md.R, 1) * exp_mu(md.mu, 1, md.table) * md.eta_inv
    rep.add("C S^T C^T = e^{pi i R} e^{pi i mu} eta^-1", CSt * C.T == rhs3)
    return rep


def _mu_diff(mu, a, b) -> Fraction:
    return Fraction(mu[a]) - Fraction(mu[b])


def g_eta_mu_membership(R: SymMatrix, mu: Sequence, eta: SymMatrix) -> bool:
    """Support on positive-integer mu differences and ``A_k^T eta = (-1)^{k+1} eta A_k``."""
    n = R.n
    comps: dict[int, list[list]] = {}
    for a, b, x in R.entries():
        if x.is_zero():
            continue
        d = _mu_diff(mu, a, b)
        if d.denominator != 1 or d < 1:
            return False
        comps.setdefault(int(d), [[0] * n for _ in range(n)])[a][b] = x
    for k, rows in comps.items():
        A = SymMatrix(rows, R.table)
        lhs = A.T * eta
        rhs = eta * A if k % 2 == 1 else -(eta * A)
        if lhs != rhs:
            return False
    return True


def _assert_nonsingular(G: SymMatrix) -> None:
    n = G.n
    tri = G.is_upper_triangular() or G.T.is_upper_triangular()
    if tri:
        if any(G[i, i].is_zero() for i in range(n)):
            raise SymError("gauge matrix is singular")
        return
    if G.is_rational():
        inverse_rational(G)
        return
    if abs(np.linalg.det(G.to_numpy())) < 1e-12:
        raise SymError("gauge matrix is (numerically) singular")


def c0_membership(G: SymMatrix, mu: Sequence, R: SymMatrix, eta: SymMatrix) -> bool:
    """Membership of ``G`` in the isotropy group C0(eta, mu, R)."""
    _assert_nonsingular(G)
    if G * R != R * G:
        return False
    P = conj_by_zpow(G, mu, R)
    if not zl_is_polynomial(P):
        return False
    if P.at_zero() != SymMatrix.identity(G.n, G.table):
        return False
    E = ZLMatrix.from_sym(eta)
    return P.negate_z().T * E * P == E


# ---------------------------------------------------------------------------
# actions


def braid_matrix(S: SymMatrix, i: int, sign: int = 1) -> SymMatrix:
    """Elementary matrix ``A^{beta_{i,i+1}^{sign}}(S)`` (``i`` is 1-based)."""
    n = S.n
    if not 1 <= i <= n - 1:
        raise SymError(f"braid index {i} out of range for n={n}")
    s = S[i - 1, i]
    a = i - 1
    rows = [[1 if p == q else 0 for q in range(n)] for p in range(n)]
    if sign == 1:
        rows[a][a], rows[a][a + 1], rows[a + 1][a], rows[a + 1][a + 1] = 0, 1, 1, -s
    elif sign == -1:
        rows[a][a], rows[a][a + 1], rows[a + 1][a], rows[a + 1][a + 1] = -s, 1, 1, 0
    else:
        raise SymError("sign must be +1 or -1")
    return SymMatrix(rows, S.table)


def _braid_matrix_inverse(S: SymMatrix, i: int, sign: int) -> SymMatrix:
    n = S.n
    s = S[i - 1, i]
    a = i - 1
    rows = [[1 if p == q else 0 for q in range(n)] for p in range(n)]
    if sign == 1:
        rows[a][a], rows[a][a + 1], rows[a + 1][a], rows[a + 1][a + 1] = s, 1, 1, 0
    else:
        rows[a][a], rows[a][a + 1], rows[a + 1][a], rows[a + 1][a + 1] = 0, 1, 1, s
    return SymMatrix(rows, S.table)


def apply_braid_with_matrix(md: MonodromyData, word: BraidWord | str) -> tuple[MonodromyData, SymMatrix]:
    """Apply ``word`` and also return the accumulated ``A^beta = A_N ... A_1``."""
    if isinstance(word, str):
        word = BraidWord.parse(word)
    word.check_range(md.n)
    S, C = md.S, md.C
    total = SymMatrix.identity(md.n, S.table)
    for i, sign in word:
        if not S.is_upper_triangular():
            raise SymError("braid action needs an upper triangular Stokes matrix")
        A = braid_matrix(S, i, sign)
        C = C * _braid_matrix_inverse(S, i, sign)
        S = A * S * A.T
        total = A * total
    return md.with_(S=S, C=C), total


def apply_braid(md: MonodromyData, word: BraidWord | str) -> MonodromyData:
    return apply_braid_with_matrix(md, word)[0]


def apply_permutation(md: MonodromyData, tau: Sequence[int]) -> MonodromyData:
    """Relabel ``u'_i = u_{tau_i}`` (1-based): ``S -> P S P^-1``, ``C -> C P^-1``."""
    P = SymMatrix.permutation(tau, md.table)
    Pinv = P.T
    u = None if md.u is None else tuple(md.u[t - 1] for t in tau)
    return md.with_(S=P * md.S * Pinv, C=md.C * Pinv, u=u)


def apply_signs(md: MonodromyData, eps: Sequence[int]) -> MonodromyData:
    if len(eps) != md.n or any(e not in (1, -1) for e in eps):
        raise SymError("signs must be a vector of +-1 of length n")
    I = SymMatrix.diag(list(eps), md.table)
    return md.with_(S=I * md.S * I, C=md.C * I)


def apply_gauge(md: MonodromyData, G: SymMatrix) -> MonodromyData:
    if not c0_membership(G, md.mu, md.R, md.eta):
        raise GaugeRefused("gauge matrix is not in C0(eta, mu, R)")
    return md.with_(C=G * md.C)


def apply_shift(md: MonodromyData, k: int) -> MonodromyData:
    """``C -> M0^{-k} C``."""
    return md.with_(C=monodromy_M0(md, -k) * md.C)


@dataclass(frozen=True)
class ActionRecord:
    kind: str  # permutation | sign | gauge | braid | shift
    payload: object

    def __post_init__(self):
        if self.kind not in ("permutation", "sign", "gauge", "braid", "shift"):
            raise SymError(f"unknown action kind {self.kind}")


def apply_action(md: MonodromyData, rec: ActionRecord) -> MonodromyData:
    if rec.kind == "permutation":
        return apply_permutation(md, rec.payload)
    if rec.kind == "sign":
        return apply_signs(md, rec.payload)
    if rec.kind == "gauge":
        return apply_gauge(md, rec.payload)
    if rec.kind == "braid":
        return apply_braid(md, rec.payload)
    return apply_shift(md, int(rec.payload))


def center_braid(n: int) -> BraidWord:
    """``(beta_12 beta_23 ... beta_{n-1,n})^n``."""
    if n < 2:
        raise SymError("center_braid needs n >= 2")
    return BraidWord(tuple((i, 1) for i in range(1, n))) ** n


def coalescence_vanishing_check(S: SymMatrix, u: Sequence[complex], tol: float | None = None) -> bool:
    u = [complex(x) for x in u]
    if tol is None:
        tol = 1e-9 * max((abs(x) for x in u), default=0.0)
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(u[i] - u[j]) <= tol and not (S[i, j].is_zero() and S[j, i].is_zero()):
                return False
    return True
