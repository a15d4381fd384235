"""Self-contained numerical kernels: Hermitian eigenvalues, bracketed
root finding, and 1-D minimization.

Everything here is a pure function of its inputs; the kernels are sized
for small dense problems (matrix dimension <= 64, scalar solves).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, ValidationError

_EPS = np.finfo(float).eps
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

__all__ = [
    "Bracket",
    "as_hermitian_matrix",
    "eigvals_hermitian",
    "solve_root_bracketed",
    "minimize_scalar",
]


def as_hermitian_matrix(m, tol: float = 1e-12) -> np.ndarray:
    """Validate and return ``m`` as a square complex Hermitian ndarray.

    Accepts anything ``np.asarray`` understands (including the wire format
    of nested ``[re, im]`` pairs, which callers decode to complex first).
    Raises ``ValidationError`` naming the first offending entry.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError("matrix-shape", f"expected a square matrix, got shape {a.shape}")
    a = a.astype(complex)
    scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
    resid = a - a.conj().T
    bad = np.argwhere(np.abs(resid) > tol * scale)
    if bad.size:
        i, j = map(int, bad[0])
        raise ValidationError(
            "not-hermitian",
            f"entry ({i},{j})={a[i, j]:.6g} is not the conjugate of ({j},{i})={a[j, i]:.6g}",
        )
    d = np.abs(a.diagonal().imag)
    if d.size and float(d.max()) > tol * scale:
        i = int(np.argmax(d))
        raise ValidationError("not-hermitian", f"diagonal entry ({i},{i}) has imaginary part {a[i, i].imag:.3g}")
    return 0.5 * (a + a.conj().T)


def eigvals_hermitian(m) -> list[float]:
    """Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi.

    Each sweep annihilates every off-diagonal pair with a phased 2x2
    rotation; sweeps repeat until the off-diagonal Frobenius norm drops
    below 1e-13 times the matrix norm. Adequate for dimension <= 64.
    """
    a = as_hermitian_matrix(m).copy()
    d = a.shape[0]
    if d == 1:
        return [float(a[0, 0].real)]

    norm = float(np.linalg.norm(a))
    threshold = 1e-13 * max(norm, np.finfo(float).tiny)
    for _ in range(100):
        off = a.copy()
        np.fill_diagonal(off, 0.0)
        if float(np.linalg.norm(off)) < threshold:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                w = a[p, q]
                b = abs(w)
                if b <= threshold / (10.0 * d):
                    continue
                phase = w / b
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (app - aqq) / (2.0 * b)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(tau, 1.0)) if tau != 0.0 else 1.0
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                # column op: G = phase-fold on q then real rotation on (p, q)
                col_p = a[:, p].copy()
                col_q = a[:, q] * np.conj(phase)
                a[:, p] = c * col_p + s * col_q
                a[:, q] = -s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :] * phase
                a[p, :] = c * row_p + s * row_q
                a[q, :] = -s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
    else:
        raise DomainError("no-convergence", "Jacobi sweep limit reached without convergence")
    return sorted(float(x) for x in a.diagonal().real)


@dataclass(frozen=True)
class Bracket:
    """Closed interval known (or required) to straddle a root."""

    lo: float
    hi: float
    tolerance: float = 1e-13

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValidationError("bad-bracket", "bracket endpoints must be finite")
        if not self.lo < self.hi:
            raise ValidationError("bad-bracket", f"need lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tolerance > 0:
            raise ValidationError("bad-bracket", "tolerance must be positive")


def solve_root_bracketed(f: Callable[[float], float], bracket: Bracket) -> float:
    """Root of ``f`` inside ``bracket`` by bisection with secant acceleration.

    Requires a sign change (or an exact zero) on the endpoints. The secant
    step is taken whenever it lands strictly inside the current interval;
    otherwise the interval is bisected, so the 200-iteration cap is never
    binding in practice.
    """
    a, b = bracket.lo, bracket.hi
    fa, fb = float(f(a)), float(f(b))
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise DomainError("bad-bracket-signs", f"f({a})={fa:.6g} and f({b})={fb:.6g} have the same sign")

    widths = [b - a, b - a]
    for _ in range(200):
        width = b - a
        if width <= max(bracket.tolerance, 4.0 * _EPS * max(1.0, abs(a), abs(b))):
            break
        # secant step, but force a bisection whenever the bracket failed
        # to halve over the last two steps; plain secant can stagnate on
        # plateaus
        x_sec = None
        if width <= 0.5 * widths[0] and fb != fa:
            cand = b - fb * (b - a) / (fb - fa)
            if a + 0.01 * width < cand < b - 0.01 * width:
                x_sec = cand
        widths = [widths[1], width]
        x = x_sec if x_sec is not None else 0.5 * (a + b)
        fx = float(f(x))
        if fx == 0.0:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
    return a if abs(fa) <= abs(fb) else b


def minimize_scalar(
    f: Callable[[float], float],
    grid: Sequence[float],
    refine_tol: float = 1e-10,
) -> tuple[float, float]:
    """Minimize ``f``: coarse scan over ``grid``, then golden-section
    refinement inside the best grid cell.

    The grid guards against local minima of non-convex objectives; the
    returned minimum never exceeds any grid sample. Returns
    ``(argmin, minimum)``.
    """
    xs = sorted(float(x) for x in grid)
    if len(xs) < 3 or xs[0] == xs[-1]:
        raise ValidationError("bad-grid", "need at least 3 distinct grid points")
    ys = [float(f(x)) for x in xs]
    i = int(np.argmin(ys))
    best_x, best_y = xs[i], ys[i]

    lo = xs[max(0, i - 1)]
    hi = xs[min(len(xs) - 1, i + 1)]
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = float(f(x1)), float(f(x2))
    while hi - lo > refine_tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = float(f(x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = float(f(x2))
    for x, y in ((x1, f1), (x2, f2)):
        if y < best_y:
            best_x, best_y = x, y
    return best_x, best_y
