"""End-to-end: points -> test map -> colorful zero -> verified partition."""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import groups as gc
from .partition import OrbitPartition, VerificationReport, assemble, intersection_report, verify
from .solver import DEFAULT_MAX_ITER, DEFAULT_TOL, ColorClasses, SolverResult, solve_with_restarts
from .testmap import Configuration, build_testmap, evaluate_L


@dataclass(frozen=True, eq=False)
class PipelineResult:
    solver: SolverResult
    partition: Optional[OrbitPartition]
    report: Optional[VerificationReport]
    intersection: object = None

    @property
    def ok(self):
        return self.partition is not None and self.report.passed


def run(rep, points, rep_key="", tol=DEFAULT_TOL, restarts=8, seed=0, max_iter=DEFAULT_MAX_ITER, threads=1, verify_tol=None):
    """Solve and certify.  ``partition`` is None when the solver does not converge."""
    config = Configuration(np.asarray(points, dtype=float), rep_key)
    tm = build_testmap(rep, config)
    classes = ColorClasses.from_testmap(tm)
    res = solve_with_restarts(classes, tol=tol, restarts=restarts, seed=seed, max_iter=max_iter, threads=threads)
    if not res.converged:
        return PipelineResult(res, None, None)
    # soundness: recompute from the stored columns, not from the solver state
    recomputed = float(np.linalg.norm(evaluate_L(tm, res.selection)))
    if recomputed > 10 * tol:
        return PipelineResult(res, None, None)
    part = assemble(rep, config, res.selection)
    scale = 1.0 + float(np.abs(config.points).max())
    report = verify(part, rep, config, tol=verify_tol if verify_tol is not None else 10 * tol * scale * rep.order)
    inter = None
    if len(gc.kernel(rep)) > 1:
        inter = intersection_report(rep, part, config)
    return PipelineResult(res, part, report, inter)
