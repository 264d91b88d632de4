"""The A3 Frobenius manifold near its Maxwell stratum.

Numeric layer: flat coordinates, critical points of ``f = x^4 + a2 x^2 + a1 x + a0``,
canonical coordinates, the orthonormalizing matrix Psi and the Euler multiplication
matrix.  Exact layer: the reference monodromy data in every band ``arg h`` and the
braid words that connect them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import SymMatrix
from .monodromy import (
    BraidWord,
    MonodromyData,
    apply_braid,
    apply_permutation,
    apply_shift,
    center_braid,
    check_constraints,
    monodromy_M0,
)
from .report import Report
from .symring import DEFAULT_TABLE, SymError, SymExpr

__all__ = [
    "DegeneratePointError",
    "A3Point",
    "critical_data",
    "flat_euler_matrix",
    "psi_matrix_a3",
    "u_series",
    "psi_series",
    "ETA",
    "MU",
    "R",
    "unpermuted_data",
    "a3_reference",
    "band_word",
    "red_letter",
    "reproduce_a3_table",
    "split_configuration",
    "quarter_turn_path",
]


class DegeneratePointError(SymError):
    """Point on (or numerically too close to) the caustic."""


@dataclass(frozen=True)
class A3Point:
    t1: complex
    t2: complex
    t3: complex

    @property
    def a(self) -> tuple[complex, complex, complex]:
        t1, t2, t3 = complex(self.t1), complex(self.t2), complex(self.t3)
        return t1 + t3 * t3 / 8, t2, t3

    @classmethod
    def maxwell(cls, h: complex, t2: complex = 0) -> "A3Point":
        """The point ``(-h^2/8, t2, h)``."""
        return cls(-h * h / 8, t2, h)


_THETA = (-1 + 0j, (1 - 1j * math.sqrt(3)) / 2, (1 + 1j * math.sqrt(3)) / 2)


def critical_data(p: A3Point, tol: float = 1e-12):
    """Critical points ``x_i`` and critical values ``u_i = f(x_i)`` (principal branches).

    ``X = (-9 a1 + sqrt(3) sqrt(27 a1^2 + 8 a2^3))^(1/3)`` and
    ``x_i = conj(theta_i) a2 / (3^(1/3) X) - theta_i X / (2 * 3^(2/3))``
    with ``theta_i`` the cube roots of -1.
    """
    a0, a1, a2 = p.a
    disc = 27 * a1 * a1 + 8 * a2 ** 3
    scale = max(1.0, abs(a1), abs(a2)) ** 3
    if abs(a2) < tol or abs(disc) < tol * scale:
        raise DegeneratePointError("point lies on the caustic")
    X = (-9 * a1 + math.sqrt(3) * cmath.sqrt(disc)) ** (1 / 3)
    if abs(X) < tol:
        raise DegeneratePointError("degenerate branch of X")
    xs = tuple(th.conjugate() * a2 / (3 ** (1 / 3) * X) - th * X / (2 * 3 ** (2 / 3)) for th in _THETA)
    us = tuple(x ** 4 + a2 * x * x + a1 * x + a0 for x in xs)
    return xs, us


def flat_euler_matrix(p: A3Point) -> np.ndarray:
    """Matrix of multiplication by the Euler field in flat coordinates."""
    t1, t2, t3 = complex(p.t1), complex(p.t2), complex(p.t3)
    return np.array(
        [
            [t1, -5 / 16 * t2 * t3, -3 / 16 * t2 * t2 + t3 ** 3 / 32],
            [3 * t2 / 4, t1 - t3 * t3 / 8, -5 / 16 * t2 * t3],
            [t3 / 2, 3 * t2 / 4, t1],
        ],
        dtype=complex,
    )


def psi_matrix_a3(p: A3Point) -> np.ndarray:
    """Psi with rows indexed by the critical points (principal square roots)."""
    (x1, x2, x3), _ = critical_data(p)
    a2 = p.a[2]
    D = [cmath.sqrt(6 * x * x + a2) for x in (x1, x2, x3)]
    r2 = math.sqrt(2)
    return np.array(
        [
            [
                D[0] / (2 * r2 * (x1 - x2) * (x1 - x3)),
                -(x2 + x3) * D[0] / (2 * r2 * (x1 - x2) * (x1 - x3)),
                -D[0] * (a2 - 4 * x2 * x3) / (8 * r2 * (x1 - x2) * (x1 - x3)),
            ],
            [
                D[1] / (2 * r2 * (x1 - x2) * (x3 - x2)),
                (x1 + x3) * D[1] / (2 * r2 * (x1 - x2) * (x2 - x3)),
                D[1] * (a2 - 4 * x1 * x3) / (8 * r2 * (x1 - x2) * (x2 - x3)),
            ],
            [
                D[2] / (2 * r2 * (x1 - x3) * (x2 - x3)),
                (x1 + x2) * D[2] / (2 * r2 * (x1 - x3) * (x3 - x2)),
                (a2 - 4 * x1 * x2) * D[2] / (8 * r2 * (x1 - x3) * (x3 - x2)),
            ],
        ],
        dtype=complex,
    )


def u_series(t2: complex, h: complex) -> tuple[complex, complex, complex]:
    """Canonical coordinates near ``(-h^2/8, 0, h)`` truncated after the ``t2^4`` terms."""
    sh = cmath.sqrt(h)
    r2 = math.sqrt(2)
    u1 = -t2 ** 2 / (4 * h) + t2 ** 4 / (16 * h ** 4)
    even = -h * h / 4 + t2 ** 2 / (8 * h) - t2 ** 4 / (32 * h ** 4)
    odd = 1j * sh * t2 / r2 + 1j * t2 ** 3 / (16 * r2 * sh ** 5)
    return u1, even + odd, even - odd


def psi_series(t2: complex, h: complex) -> np.ndarray:
    """Psi near ``(-h^2/8, 0, h)`` through the linear term in ``t2``."""
    sh = cmath.sqrt(h)
    r2 = math.sqrt(2)
    P0 = np.array(
        [
            [1 / (r2 * sh), 0, sh / (4 * r2)],
            [1j / (2 * sh), -1 / (2 * r2), -1j * sh / 8],
            [1j / (2 * sh), 1 / (2 * r2), -1j * sh / 8],
        ],
        dtype=complex,
    )
    P1 = np.array(
        [
            [0, -1 / (2 * r2 * sh ** 3), 0],
            [-3 / (8 * r2 * h * h), -1j / (16 * sh ** 3), -5 / (32 * r2 * h)],
            [3 / (8 * r2 * h * h), -1j / (16 * sh ** 3), 5 / (32 * r2 * h)],
        ],
        dtype=complex,
    )
    return P0 + t2 * P1


# ---------------------------------------------------------------------------
# exact reference data

T = DEFAULT_TABLE
ETA = SymMatrix.antidiag([Fraction(1, 4)] * 3, T)
MU = (Fraction(-1, 4), Fraction(0), Fraction(1, 4))
R = SymMatrix.zeros(3, table=T)

_i = SymExpr.i(T)
_G34 = SymExpr.symbol("g34", T) * SymExpr.symbol("spi", T, -1)  # Gamma(3/4)/sqrt(pi)
_G14 = SymExpr.symbol("g14", T) * SymExpr.symbol("spi", T, -1)  # Gamma(1/4)/sqrt(pi)
_Q = SymExpr.symbol("s2", T)  # sqrt(2 pi)/sqrt(pi)

_S_EVEN = SymMatrix([[1, 0, -1], [0, 1, -1], [0, 0, 1]], T)
_S_ODD = SymMatrix([[1, 1, 1], [0, 1, 0], [0, 0, 1]], T)


def _c_rows(band: int, s: int):
    """Connection matrix rows of a band; ``s = +1`` reads the first sign of the table."""
    i = _i
    mid_even = [-s * _Q, s * _Q, 0]
    mid_odd = [0, s * _Q, -s * _Q]
    if band == 0:
        return [[-i * _G34, -i * _G34, (1 - i) * _G34], mid_even, [i * _G14, i * _G14, (1 + i) * _G14]]
    if band == 1:
        return [[(1 + i) * _G34, -i * _G34, -i * _G34], mid_odd, [(1 - i) * _G14, i * _G14, i * _G14]]
    if band == 2:
        return [[_G34, _G34, (1 + i) * _G34], mid_even, [_G14, _G14, (1 - i) * _G14]]
    if band == 3:
        return [[(i - 1) * _G34, _G34, _G34], mid_odd, [(-1 - i) * _G14, _G14, _G14]]
    if band == 4:
        return [[i * _G34, i * _G34, (i - 1) * _G34], mid_even, [-i * _G14, -i * _G14, (-1 - i) * _G14]]
    raise SymError(f"band must be 0..4, got {band}")


#: arg h interval of each band, in units of pi
BAND_RANGES = {0: ("-1/4", "1/4"), 1: ("1/4", "3/4"), 2: ("3/4", "5/4"), 3: ("5/4", "7/4"), 4: ("7/4", "9/4")}


def band_word(band: int) -> BraidWord:
    """Braid from band 0 (first cell) to ``band`` (first cell)."""
    half = BraidWord.of(1, 2, 1)
    full = center_braid(3)
    return {0: BraidWord(), 1: half, 2: full, 3: full * half, 4: full * full}[band]


def red_letter(band: int) -> BraidWord:
    """Braid exchanging the two cells at a band (a permutation matrix on S)."""
    return BraidWord.of(1) if band % 2 == 0 else BraidWord.of(2)


def a3_reference(band: int, cell: int = 1) -> MonodromyData:
    """Tabulated data in lexicographical order at ``(-h^2/8, 0, h)``, ``arg h`` in the given band."""
    if cell not in (1, 2):
        raise SymError("cell must be 1 or 2")
    S = _S_EVEN if band % 2 == 0 else _S_ODD
    C = SymMatrix(_c_rows(band, 1 if cell == 1 else -1), T)
    return MonodromyData(MU, R, ETA, S, C)


def unpermuted_data(sign: int = 1) -> MonodromyData:
    """Data in the labeling ``(u1, u2, u3) = (0, -h^2/4, -h^2/4)``; ``sign`` picks the cell."""
    S = SymMatrix([[1, 0, 0], [-1, 1, 0], [-1, 0, 1]], T)
    C = SymMatrix(
        [
            [(1 - _i) * _G34, -_i * _G34, -_i * _G34],
            [0, -sign * _Q, sign * _Q],
            [(1 + _i) * _G14, _i * _G14, _i * _G14],
        ],
        T,
    )
    return MonodromyData(MU, R, ETA, S, C, u=(0, -0.25, -0.25))


#: lexicographical relabelings of the two cells, as ``u'_i = u_{tau_i}``
CELL_PERMUTATIONS = {1: (2, 3, 1), 2: (3, 2, 1)}


def reproduce_a3_table() -> Report:
    rep = Report("A3 table")
    base = a3_reference(0, 1)
    rep.extend(check_constraints(base), "band0 ")
    for band in range(5):
        word = band_word(band)
        got1 = apply_braid(base, word)
        got2 = apply_braid(got1, red_letter(band))
        for cell, got in ((1, got1), (2, got2)):
            ref = a3_reference(band, cell)
            rep.add(f"band{band} cell{cell} S", got.S == ref.S, f"word '{word}'" + (f" + '{red_letter(band)}'" if cell == 2 else ""))
            rep.add(f"band{band} cell{cell} C", got.C == ref.C)
            rep.add(f"band{band} cell{cell} constraints", check_constraints(ref).passed)
    c = apply_braid(base, center_braid(3))
    M0inv = SymMatrix.diag([_i, 1, -_i], T)
    rep.add("center fixes S", c.S == base.S)
    rep.add("center acts as diag(i,1,-i) on C", c.C == M0inv * base.C)
    rep.add("M0^-1 = diag(i,1,-i)", monodromy_M0(base, -1) == M0inv)
    rep.add("band4 C = M0^-2 band0 C", apply_shift(base, 2).C == a3_reference(4, 1).C)
    for sign, cell in ((1, 1), (-1, 2)):
        lex = apply_permutation(unpermuted_data(sign), CELL_PERMUTATIONS[1])
        rep.add(f"unpermuted data (cell {cell}) relabels to band0", lex.same_data(a3_reference(0, cell)))
    return rep


# ---------------------------------------------------------------------------
# split configurations for chamber tracking


def split_configuration(h: complex, phase: float, eps: float) -> tuple[complex, complex, complex]:
    """Leading-order canonical coordinates at ``(-h^2/8, eps e^{i phase}, h)``."""
    r = eps * math.sqrt(abs(h))
    base = -h * h / 4
    ang = cmath.phase(h) / 2 + phase
    return 0j, base + r * cmath.exp(1j * (ang + math.pi / 2)), base + r * cmath.exp(1j * (ang - math.pi / 2))


#: split phase for the quarter-turn path; the (2,3) ray crosses the real line before u1 overtakes u2, u3
QUARTER_TURN_PHASE = 15 * math.pi / 16


def quarter_turn_path(samples: int = 400, eps: float = 0.01, phase: float = QUARTER_TURN_PHASE, theta0: float = 0.0):
    """Configurations along ``h = e^{i theta}``, ``theta`` from ``theta0`` to ``theta0 + pi/2``."""
    out = []
    for k in range(samples + 1):
        th = theta0 + (math.pi / 2) * k / samples
        out.append(split_configuration(cmath.exp(1j * th), phase, eps))
    return out
