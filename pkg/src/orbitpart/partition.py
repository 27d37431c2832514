"""Turn a zero of the test map into a partition certificate and check it.

Subset indices are 0-based here; file formats convert to 1-based.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import groups as gc
from .errors import DegenerateInputError, NotApplicableError, NotAZeroError
from .solver import min_norm_point

LAMBDA_TOL = 1e-6
REGULARITY_TOL = 1e-6
DEFAULT_VERIFY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class OrbitPartition:
    subsets: dict
    hull_weights: dict
    witnesses: np.ndarray
    center: np.ndarray
    generator: np.ndarray
    residual: float
    free: bool
    full_dim: bool

    @property
    def r(self):
        return len(self.subsets)


def orbit_residual(rep, witnesses, center, generator):
    target = center + rep.mats @ generator
    return float(np.linalg.norm(np.asarray(witnesses) - target, axis=1).max())


def assemble(rep, config, sel):
    """Group the selection by color label and recover center and generator."""
    r = rep.order
    f = config.points
    t = sel.weights
    g_of = sel.assignment
    lam = np.bincount(g_of, weights=t, minlength=r)
    dev = np.abs(lam - 1.0 / r).max()
    if dev > LAMBDA_TOL:
        raise NotAZeroError(f"join weights deviate from 1/r by {dev:.3g}")
    subsets, weights = {}, {}
    witnesses = np.zeros((r, rep.dim))
    for g in range(r):
        J = np.nonzero((g_of == g) & (t > 0))[0]
        if J.size == 0:
            raise NotAZeroError(f"subset for element {g} is empty")
        w = t[J] / t[J].sum()
        subsets[g] = tuple(int(j) for j in J)
        weights[g] = w
        witnesses[g] = w @ f[J]
    center = t @ f
    generator = np.einsum("j,jkl,jk->l", t, rep.mats[g_of], f)
    return OrbitPartition(
        subsets=subsets,
        hull_weights=weights,
        witnesses=witnesses,
        center=center,
        generator=generator,
        residual=orbit_residual(rep, witnesses, center, generator),
        free=gc.stabilizer(rep, generator) == gc.kernel(rep),
        full_dim=gc.affine_dim_orbit(rep, generator) == rep.dim,
    )


@dataclass
class Check:
    passed: bool
    margin: float
    detail: str = ""


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks.values())

    def failed(self):
        return [k for k, c in self.checks.items() if not c.passed]

    def as_dict(self):
        return {
            k: {"passed": bool(c.passed), "margin": float(c.margin), "detail": c.detail}
            for k, c in self.checks.items()
        }


def verify(partition, rep, config, tol=DEFAULT_VERIFY_TOL):
    """Recompute every partition invariant from scratch; never raises on failure."""
    rep_r = rep.order
    f = config.points
    N = config.N
    scale = 1.0 + float(np.abs(f).max())
    rpt = VerificationReport()
    c = rpt.checks

    sizes = [len(partition.subsets.get(g, ())) for g in range(rep_r)]
    c["subset_count"] = Check(len(partition.subsets) == rep_r, float(abs(len(partition.subsets) - rep_r)))
    c["nonempty"] = Check(min(sizes) > 0, float(min(sizes)))
    all_idx = [j for g in partition.subsets for j in partition.subsets[g]]
    dup = len(all_idx) - len(set(all_idx))
    in_range = all(0 <= j < N for j in all_idx)
    c["disjoint"] = Check(dup == 0 and in_range, float(dup), "" if in_range else "index out of range")

    worst_w = 0.0
    worst_x = 0.0
    for g in range(rep_r):
        idx = list(partition.subsets.get(g, ()))
        w = np.asarray(partition.hull_weights.get(g, np.zeros(0)), dtype=float)
        if len(idx) != w.size:
            worst_w = math.inf
            worst_x = math.inf
            continue
        if w.size:
            worst_w = max(worst_w, abs(w.sum() - 1.0), float(max(0.0, -w.min())))
            x = w @ f[idx] if idx and in_range else np.full(rep.dim, np.nan)
            worst_x = max(worst_x, float(np.linalg.norm(x - partition.witnesses[g])))
    c["convex_weights"] = Check(worst_w <= 1e-12, worst_w)
    c["witness_recompute"] = Check(bool(worst_x <= 1e-12 * scale), worst_x)

    res = orbit_residual(rep, partition.witnesses, partition.center, partition.generator)
    c["orbit_equation"] = Check(res <= tol, res, f"tol {tol:g}")
    c["residual_recorded"] = Check(abs(res - partition.residual) <= 1e-12 * scale, abs(res - partition.residual))
    u = partition.generator
    free = gc.stabilizer(rep, u) == gc.kernel(rep)
    adim = gc.affine_dim_orbit(rep, u)
    c["free"] = Check(free, float(len(gc.stabilizer(rep, u))))
    c["full_dimensional"] = Check(adim == rep.dim, float(adim))
    return rpt


def polytope_report(rep, u, a):
    u = np.asarray(u, dtype=float)
    return {
        "vertices": np.asarray(a, dtype=float) + gc.orbit(rep, u),
        "is_free": bool(gc.stabilizer(rep, u) == gc.kernel(rep)),
        "affine_dim": gc.affine_dim_orbit(rep, u),
    }


def polygon_regularity(points):
    """Equal radii about the centroid and equal central angles.

    ``max_deviation`` is the larger of the relative radius spread and the
    largest relative error of a consecutive angular gap.
    """
    P = np.asarray(points, dtype=float)
    n = P.shape[0]
    if n < 3 or P.shape[1] != 2:
        raise DegenerateInputError("polygon regularity needs at least 3 planar points")
    dmin = min(np.linalg.norm(P[i] - P[j]) for i in range(n) for j in range(i + 1, n))
    span = np.abs(P - P.mean(axis=0)).max()
    if span == 0 or dmin <= 1e-12 * span:
        raise DegenerateInputError("repeated points")
    rel = P - P.mean(axis=0)
    rad = np.linalg.norm(rel, axis=1)
    rad_dev = (rad.max() - rad.min()) / rad.mean()
    ang = np.sort(np.arctan2(rel[:, 1], rel[:, 0]))
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
    step = 2 * math.pi / n
    ang_dev = np.abs(gaps - step).max() / step
    dev = float(max(rad_dev, ang_dev))
    return {"is_regular": bool(dev <= REGULARITY_TOL), "max_deviation": dev}


def distance_classes(points, rel_tol=1e-6):
    """Pairwise distances clustered into classes: list of (distance, count)."""
    P = np.asarray(points, dtype=float)
    n = P.shape[0]
    ds = sorted(float(np.linalg.norm(P[i] - P[j])) for i in range(n) for j in range(i + 1, n))
    classes = []
    for v in ds:
        if classes and v - classes[-1][0] <= rel_tol * max(ds[-1], 1e-300):
            classes[-1][1] += 1
        else:
            classes.append([v, 1])
    return [(d, c) for d, c in classes]


def cross_polytope_deviation(points, center):
    """Deviation of 2m points from a regular cross-polytope about ``center``.

    Pairs each vertex with its farthest partner; the m half-diagonals must be
    mutually orthogonal, of equal length, and bisected by ``center``.
    """
    P = np.asarray(points, dtype=float) - center
    n = P.shape[0]
    used, diags, bisect = set(), [], 0.0
    for i in range(n):
        if i in used:
            continue
        d = np.linalg.norm(P - P[i], axis=1)
        d[list(used) + [i]] = -1
        j = int(np.argmax(d))
        used |= {i, j}
        diags.append((P[i] - P[j]) / 2)
        bisect = max(bisect, float(np.linalg.norm(P[i] + P[j])))
    D = np.array(diags)
    norms = np.linalg.norm(D, axis=1)
    scale = norms.mean()
    gram = D @ D.T / scale**2
    off = np.abs(gram - np.diag(np.diag(gram))).max() if len(D) > 1 else 0.0
    return float(max(off, (norms.max() - norms.min()) / scale, bisect / scale))


def octahedron_deviation(points):
    """Deviation of 6 points from an (affine) octahedron with central diagonals.

    Pairs opposite vertices; the 3 diagonals must share their midpoint and the
    distance multiset must split into classes of sizes (3 diagonals, 12 edges).
    """
    P = np.asarray(points, dtype=float)
    if P.shape[0] != 6:
        raise DegenerateInputError("octahedron check needs 6 points")
    c = P.mean(axis=0)
    scale = np.linalg.norm(P - c, axis=1).mean()
    used, mids, diag_len = set(), [], []
    for i in range(6):
        if i in used:
            continue
        d = np.linalg.norm(P - P[i], axis=1)
        d[list(used) + [i]] = -1
        j = int(np.argmax(d))
        used |= {i, j}
        mids.append((P[i] + P[j]) / 2)
        diag_len.append(np.linalg.norm(P[i] - P[j]))
    mid_dev = max(float(np.linalg.norm(m - c)) for m in mids) / scale
    others = sorted(
        float(np.linalg.norm(P[i] - P[j])) for i in range(6) for j in range(i + 1, 6)
    )
    diag_set = sorted(diag_len)
    # the 3 longest distances must be the diagonals
    order_dev = max(0.0, (others[11] - diag_set[0]) / scale)
    return float(max(mid_dev, order_dev))


@dataclass(frozen=True, eq=False)
class IntersectionReport:
    cosets: list
    targets: np.ndarray
    membership_residuals: np.ndarray
    witness_gaps: np.ndarray
    regularity: dict

    @property
    def r1(self):
        return len(self.cosets)

    @property
    def r2(self):
        return len(self.cosets[0])


def cosets_of_kernel(rep):
    K = gc.kernel(rep)
    G = rep.group
    seen, cosets = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        coset = sorted(int(G.mul[g, k]) for k in K)
        seen.update(coset)
        cosets.append(coset)
    return cosets


def intersection_report(rep, partition, config):
    """Group subsets by cosets gK of the kernel and certify common points.

    All subsets in one coset share the target ``a + rho(g) u``; its distance
    to each of their convex hulls is certified independently by a
    minimum-norm-point computation.
    """
    if len(gc.kernel(rep)) == 1:
        raise NotApplicableError("representation is faithful; nothing intersects")
    f = config.points
    cosets = cosets_of_kernel(rep)
    targets = np.array([partition.center + rep.mats[c[0]] @ partition.generator for c in cosets])
    members = []
    gaps = []
    for i, coset in enumerate(cosets):
        row, grow = [], []
        for g in coset:
            idx = list(partition.subsets[g])
            x, _ = min_norm_point(f[idx] - targets[i])
            row.append(float(np.linalg.norm(x)))
            grow.append(float(np.linalg.norm(partition.witnesses[g] - targets[i])))
        members.append(row)
        gaps.append(grow)
    regularity = polygon_regularity(targets) if rep.dim == 2 and len(cosets) >= 3 else {}
    return IntersectionReport(
        cosets=[[list(partition.subsets[g]) for g in c] for c in cosets],
        targets=targets,
        membership_residuals=np.array(members),
        witness_gaps=np.array(gaps),
        regularity=regularity,
    )
