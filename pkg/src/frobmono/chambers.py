"""Stokes rays, admissible lines, lexicographical order and braid extraction along paths."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .monodromy import BraidWord
from .symring import SymError

__all__ = [
    "RefinementError",
    "OrientedLine",
    "stokes_rays",
    "is_admissible",
    "lexicographic_order",
    "lexicographic_permutation",
    "track_braid",
    "rotation_path",
    "load_path",
]

TWO_PI = 2 * math.pi
BISECTION_DEPTH = 40


class RefinementError(SymError):
    """Two crossings could not be separated along the sampled path."""


@dataclass(frozen=True)
class OrientedLine:
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def direction(self) -> complex:
        return cmath.exp(1j * self.phi)


def _phi(line) -> float:
    return line.phi if isinstance(line, OrientedLine) else float(line)


def _scale(u: Sequence[complex]) -> float:
    return max((abs(x) for x in u), default=0.0)


def _coalescence_tol(u, tol):
    return 1e-9 * max(_scale(u), 1e-300) if tol is None else tol


def stokes_rays(u: Sequence[complex], tol: float | None = None) -> list[tuple[int, int, float]]:
    """Angles ``arg(-i conj(u_i - u_j))`` in ``[0, 2 pi)`` for ordered pairs (1-based)."""
    u = [complex(x) for x in u]
    tol = _coalescence_tol(u, tol)
    out = []
    for i in range(len(u)):
        for j in range(len(u)):
            d = u[i] - u[j]
            if i != j and abs(d) > tol:
                out.append((i + 1, j + 1, cmath.phase(-1j * d.conjugate()) % TWO_PI))
    return out


def is_admissible(u: Sequence[complex], line, tol: float = 1e-9) -> bool:
    """No Stokes ray within angular distance ``tol`` of either half of the line."""
    phi = _phi(line)
    for _, _, ang in stokes_rays(u):
        if abs(math.sin(ang - phi)) <= tol:
            return False
    return True


def lexicographic_order(u: Sequence[complex], line, tol: float = 1e-9) -> list[tuple[int, ...]]:
    """Labels (1-based) by increasing ``Re(u e^{i phi})``; coalescing labels form one group."""
    u = [complex(x) for x in u]
    if not is_admissible(u, line, tol):
        raise SymError("line is not admissible at this point")
    ctol = _coalescence_tol(u, None)
    e = cmath.exp(1j * _phi(line))
    order = sorted(range(len(u)), key=lambda k: ((u[k] * e).real, k))
    groups: list[list[int]] = []
    for k in order:
        if groups and abs(u[groups[-1][0]] - u[k]) <= ctol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return [tuple(k + 1 for k in g) for g in groups]


def lexicographic_permutation(u: Sequence[complex], line, tol: float = 1e-9) -> tuple[int, ...]:
    """Flattened lexicographical order, ties broken by index."""
    return tuple(k for g in lexicographic_order(u, line, tol) for k in g)


def _bisect(f, lo: float, hi: float) -> float:
    flo = f(lo)
    for _ in range(BISECTION_DEPTH):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def track_braid(path: Sequence[Sequence[complex]], line, tol: float = 1e-9) -> BraidWord:
    """Signed elementary braids emitted as Stokes rays cross the line along a sampled path.

    Samples are joined linearly.  Within a segment every pair's projected gap
    ``Re((u_a - u_b) e^{i phi})`` is located by bisection; a crossing of labels
    at positions ``p, p+1`` emits ``beta_p`` if the gap's imaginary part is
    negative there (counter-clockwise exchange) and ``beta_p^{-1}`` otherwise.
    """
    if not path:
        return BraidWord()
    phi = _phi(line)
    e = cmath.exp(1j * phi)
    pts = [[complex(x) for x in p] for p in path]
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise SymError("all configurations must have the same length")
    for end in (pts[0], pts[-1]):
        if not is_admissible(end, phi, tol):
            raise SymError("a Stokes ray lies on the line at an endpoint")
    ctol = _coalescence_tol(pts[0], None)
    for a in range(n):
        for b in range(a + 1, n):
            if abs(pts[0][a] - pts[0][b]) <= ctol:
                raise SymError("initial configuration has coalescing coordinates")
    pos = sorted(range(n), key=lambda k: (pts[0][k] * e).real)  # pos[p] = label at position p
    letters: list[tuple[int, int]] = []
    eps_s = 2.0 ** -BISECTION_DEPTH
    for k in range(len(pts) - 1):
        p0, p1 = pts[k], pts[k + 1]

        def at(s, p0=p0, p1=p1):
            return [x + s * (y - x) for x, y in zip(p0, p1)]

        events = []
        for a in range(n):
            for b in range(a + 1, n):
                # a zero gap counts as nonnegative, so each sign change is seen exactly once
                if ((((p0[a] - p0[b]) * e).real < 0)) != ((((p1[a] - p1[b]) * e).real < 0)):
                    s = _bisect(lambda s, a=a, b=b: ((at(s)[a] - at(s)[b]) * e).real, 0.0, 1.0)
                    events.append((s, a, b))
        events.sort()
        i = 0
        while i < len(events):
            j = i
            while j + 1 < len(events) and events[j + 1][0] - events[i][0] <= eps_s:
                j += 1
            batch = events[i : j + 1]
            steps = []
            used: set[int] = set()
            for s, a, b in batch:
                pa, pb = pos.index(a), pos.index(b)
                left, right = (a, b) if pa < pb else (b, a)
                p = min(pa, pb)
                if abs(pa - pb) != 1 or p in used or p + 1 in used:
                    raise RefinementError("simultaneous crossings of overlapping pairs cannot be ordered")
                used.update((p, p + 1))
                u = at(s)
                gap = (u[left] - u[right]) * e
                if abs(u[left] - u[right]) <= ctol:
                    raise RefinementError("path passes through a coalescence")
                steps.append((p, 1 if gap.imag < 0 else -1))
            for p, sign in sorted(steps):
                letters.append((p + 1, sign))
                pos[p], pos[p + 1] = pos[p + 1], pos[p]
            i = j + 1
    return BraidWord(tuple(letters))


def rotation_path(u: Sequence[complex], total_angle: float = TWO_PI, samples: int = 720):
    """Configurations ``u * e^{i theta}``, ``theta`` from 0 to ``total_angle``.

    Equivalent to turning the line counter-clockwise by ``total_angle``.
    """
    return [[complex(x) * cmath.exp(1j * total_angle * k / samples) for x in u] for k in range(samples + 1)]


def load_path(text: str):
    """Parse ``{"phi": .., "samples": [[[re, im], ...], ...]}``."""
    try:
        d = json.loads(text)
        phi = float(d["phi"])
        samples = [[complex(float(a), float(b)) for a, b in conf] for conf in d["samples"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise SymError(f"malformed path file: {exc}") from None
    return phi, samples
