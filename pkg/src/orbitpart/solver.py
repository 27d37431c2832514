"""Colorful Caratheodory: find a colorful simplex containing the origin.

The heavy lifting lives in :mod:`orbitpart.kernels`; this module validates
inputs, manages seeds and restarts, and packages results.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .errors import InvalidParameterError, NumericalFailure, PreconditionError, SizeGuardError
from .testmap import ColorfulSelection

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10_000
BRUTE_FORCE_LIMIT = 10**7
ZERO_MEAN_TOL = 1e-8


def inner_cap(n):
    return 50 * n


@dataclass(frozen=True, eq=False)
class ColorClasses:
    """``points[j, g]`` is the g-th point of color j.

    With ``square=True`` (the default) the ambient dimension must be one less
    than the number of colors.
    """

    points: np.ndarray
    square: bool = True

    def __post_init__(self):
        P = np.array(self.points, dtype=float)
        if P.ndim != 3:
            raise InvalidParameterError("color classes must be an (N, r, D) array")
        if self.square and P.shape[2] != P.shape[0] - 1:
            raise InvalidParameterError(f"{P.shape[0]} colors need ambient dimension {P.shape[0] - 1}, got {P.shape[2]}")
        P.setflags(write=False)
        object.__setattr__(self, "points", P)
        rel = self.mean_residual()
        if rel > ZERO_MEAN_TOL:
            raise PreconditionError(f"class means are not zero (relative residual {rel:.3g})")

    @classmethod
    def from_testmap(cls, tm, square=None):
        sq = tm.N == tm.dim + 1 if square is None else square
        return cls(np.ascontiguousarray(tm.columns), square=sq)

    @property
    def n_colors(self):
        return self.points.shape[0]

    @property
    def class_size(self):
        return self.points.shape[1]

    @property
    def ambient_dim(self):
        return self.points.shape[2]

    def mean_residual(self):
        scale = np.linalg.norm(self.points, axis=2).max()
        if scale == 0:
            return 0.0
        return float(np.linalg.norm(self.points.mean(axis=1), axis=1).max() / scale)

    def combination(self, sel):
        return sel.weights @ self.points[np.arange(self.n_colors), sel.assignment]


@dataclass(frozen=True, eq=False)
class SolverResult:
    selection: ColorfulSelection
    residual: float
    iterations: int
    restarts_used: int
    converged: bool
    trace: np.ndarray = field(default_factory=lambda: np.zeros(0))
    status: int = 0


def min_norm_point(points, max_iter=None):
    """Minimum-norm point of conv(points) by Wolfe's method.

    Returns ``(x, coeffs)`` with ``x = coeffs @ points``.  Raises
    :class:`NumericalFailure` (carrying the last iterate) when the iteration
    cap is exceeded.
    """
    P = np.ascontiguousarray(np.atleast_2d(np.asarray(points, dtype=float)))
    if P.shape[0] == 0:
        raise InvalidParameterError("need at least one point")
    if not np.all(np.isfinite(P)):
        raise InvalidParameterError("points must be finite")
    cap = inner_cap(P.shape[0]) if max_iter is None else max_iter
    lam, x, _, status = kernels.wolfe_from_scratch(P, cap)
    if status != 0:
        raise NumericalFailure("minimum-norm-point iteration cap exceeded", best=(x, lam))
    return x, lam


def certificate_margin(points, x):
    """min_p <p - x, x> + 1e-10 (1 + |x| |p|); nonnegative means certified."""
    P = np.atleast_2d(points)
    nx = np.linalg.norm(x)
    return float(np.min(P @ x - x @ x + 1e-10 * (1 + nx * np.linalg.norm(P, axis=1))))


def _result(assign, lam, residual, pivots, status, trace, tol, restarts_used=1):
    lam = np.clip(lam, 0.0, None)
    lam = lam / lam.sum()
    return SolverResult(
        selection=ColorfulSelection(assign, lam),
        residual=float(residual),
        iterations=int(pivots),
        restarts_used=restarts_used,
        converged=bool(status == 0 and residual <= tol),
        trace=np.asarray(trace),
        status=int(status),
    )


def barany_onn_solve(classes, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER, seed=None, initial=None):
    """Colorful pivoting from a seeded random (or given) initial selection."""
    if tol <= 0:
        raise InvalidParameterError("tol must be positive")
    N, r = classes.n_colors, classes.class_size
    if initial is None:
        initial = np.random.default_rng(seed).integers(0, r, size=N)
    assign0 = np.asarray(initial, dtype=np.int64)
    if assign0.shape != (N,) or assign0.min() < 0 or assign0.max() >= r:
        raise InvalidParameterError("initial assignment has the wrong shape or range")
    out = kernels.barany_onn(classes.points, assign0, float(tol), int(max_iter), inner_cap(N))
    return _result(*out, tol)


def brute_force_solve(classes, limit=BRUTE_FORCE_LIMIT):
    N, r = classes.n_colors, classes.class_size
    if r**N > limit:
        raise SizeGuardError(f"{r}^{N} = {r**N} assignments exceed the limit {limit}")
    assign, lam, best = kernels.brute_force(classes.points, inner_cap(N))
    return _result(assign, lam, best, r**N, 0, np.zeros(0), DEFAULT_TOL, restarts_used=0)


def restart_seeds(seed, restarts):
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(restarts)]


def solve_with_restarts(classes, tol=DEFAULT_TOL, restarts=8, seed=0, max_iter=DEFAULT_MAX_ITER, threads=1):
    """Run pivoting from ``restarts`` seeded starts.

    Returns the converged run with the smallest restart index, otherwise the
    run with the smallest residual.  The answer does not depend on
    ``threads``.
    """
    if restarts < 1:
        raise InvalidParameterError("restarts must be >= 1")
    seeds = restart_seeds(seed, restarts)

    def run(i):
        return barany_onn_solve(classes, tol=tol, max_iter=max_iter, seed=seeds[i])

    results = []
    if threads <= 1:
        for i in range(restarts):
            res = run(i)
            results.append(res)
            if res.converged:
                break
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for start in range(0, restarts, threads):
                batch = list(pool.map(run, range(start, min(restarts, start + threads))))
                results.extend(batch)
                if any(r.converged for r in batch):
                    break
    pick = None
    for i, res in enumerate(results):
        if res.converged:
            pick = i
            break
    if pick is None:
        pick = min(range(len(results)), key=lambda i: (results[i].residual, tuple(results[i].selection.assignment)))
    best = results[pick]
    return SolverResult(
        selection=best.selection,
        residual=best.residual,
        iterations=best.iterations,
        restarts_used=pick + 1,
        converged=best.converged,
        trace=best.trace,
        status=best.status,
    )
