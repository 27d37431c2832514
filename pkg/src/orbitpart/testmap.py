"""The affine equivariant test map on the N-fold join of G.

Each joined vertex ``v_j^g`` is sent to a vector of ``W (+) R^perp[G]``
expressed in orthonormal coordinates, so the whole map is the column array
``columns[j, g, :]`` of shape ``(N, r, N - 1)``.  A colorful selection
``sum_j t_j v_j^{g_j}`` is sent to ``sum_j t_j columns[j, g_j]``.
"""
import warnings
from dataclasses import dataclass

import numpy as np

from . import groups as gc
from .errors import InvalidParameterError, PointCountError, PreconditionError


class DegeneratePointsWarning(UserWarning):
    """Input points lie in an affine hyperplane."""


def required_N(r, d):
    if r < 3:
        raise InvalidParameterError(f"orbit partitions need group order r >= 3, got {r}")
    if d < 1:
        raise InvalidParameterError(f"dimension must be positive, got {d}")
    return (r - 2) * (d + 1) + 2


@dataclass(frozen=True, eq=False)
class Configuration:
    points: np.ndarray
    rep_key: str = ""

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2:
            raise InvalidParameterError("points must be an (N, d) array")
        if not np.all(np.isfinite(pts)):
            raise InvalidParameterError("points must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def N(self):
        return self.points.shape[0]

    @property
    def d(self):
        return self.points.shape[1]


@dataclass(frozen=True, eq=False)
class ColorfulSelection:
    assignment: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        a = np.array(self.assignment, dtype=np.int64)
        t = np.array(self.weights, dtype=float)
        if a.shape != t.shape or a.ndim != 1:
            raise InvalidParameterError("assignment and weights must be equal-length vectors")
        if (t < 0).any():
            raise InvalidParameterError("weights must be nonnegative")
        if abs(t.sum() - 1.0) > 1e-12:
            raise InvalidParameterError(f"weights sum to {t.sum()!r}, not 1")
        a.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "assignment", a)
        object.__setattr__(self, "weights", t)

    def act(self, G, h):
        """Left action h . sum t_j v_j^{g_j} = sum t_j v_j^{g_j h^-1}."""
        return ColorfulSelection(G.mul[self.assignment, G.inv[h]], self.weights)


@dataclass(frozen=True, eq=False)
class TestMap:
    __test__ = False  # not a pytest class

    columns: np.ndarray
    basis_W: gc.SubspaceBasis
    basis_Rperp: gc.SubspaceBasis
    N: int
    r: int

    @property
    def dim(self):
        return self.columns.shape[2]

    @property
    def dim_W(self):
        return self.basis_W.dim

    def column(self, j, g):
        return self.columns[j, g]


def raw_F_column(rep, config, j, g):
    """F at the pure vertex v_j^g, as a flat vector of R^d[G]."""
    r, d = rep.order, rep.dim
    f = config.points[j]
    M = rep.mats
    blocks = -f / r - (M @ (M[g].T @ f)) / r
    blocks[g] += f
    return blocks.reshape(r * d)


def raw_R_column(r, g):
    out = np.full(r, -1.0 / r)
    out[g] += 1.0
    return out


def _check_points(points, d):
    X = points - points.mean(axis=0)
    s = np.linalg.svd(X, compute_uv=False)
    if points.shape[0] <= d or s[0] == 0 or np.sum(s > 1e-8 * s[0]) < d:
        warnings.warn(
            "input points lie in an affine hyperplane; no full-dimensional orbit polytope can be inscribed",
            DegeneratePointsWarning,
            stacklevel=3,
        )


def build_testmap(rep, config, allow_any_N=False):
    """Column array of the test map.

    Since W is the orthogonal complement of V_0 + V_rho, projecting F at
    ``v_j^g`` onto W only sees the term ``f(v_j) e_g``; likewise R at ``g``
    projects to the ``g``-th row of the sum-zero basis.
    """
    r, d = rep.order, rep.dim
    if config.d != d:
        raise InvalidParameterError(f"points have dimension {config.d}, representation has {d}")
    N_req = required_N(r, d)
    if not allow_any_N and config.N != N_req:
        raise PointCountError(N_req, config.N)
    if gc.has_trivial_subrep(rep):
        raise PreconditionError("representation contains a trivial subrepresentation")
    _check_points(config.points, d)
    BW = gc.basis_W(rep)
    BR = gc.basis_Rperp(r)
    Wg = BW.basis.reshape(r, d, BW.dim)
    Fpart = np.einsum("jk,gkm->jgm", config.points, Wg)
    Rpart = np.broadcast_to(BR.basis[None, :, :], (config.N, r, r - 1))
    cols = np.concatenate([Fpart, Rpart], axis=2)
    cols.setflags(write=False)
    return TestMap(columns=cols, basis_W=BW, basis_Rperp=BR, N=config.N, r=r)


def build_testmap_raw(rep, config, basis_W=None, allow_any_N=False):
    """Same map, column by column from the literal formulas (slow path)."""
    r, d = rep.order, rep.dim
    if not allow_any_N and config.N != required_N(r, d):
        raise PointCountError(required_N(r, d), config.N)
    BW = basis_W or gc.basis_W(rep)
    BR = gc.basis_Rperp(r)
    cols = np.empty((config.N, r, BW.dim + r - 1))
    for j in range(config.N):
        for g in range(r):
            cols[j, g, : BW.dim] = BW.basis.T @ raw_F_column(rep, config, j, g)
            cols[j, g, BW.dim :] = BR.basis.T @ raw_R_column(r, g)
    return TestMap(columns=cols, basis_W=BW, basis_Rperp=BR, N=config.N, r=r)


def evaluate_L(tm, sel):
    return np.einsum("j,jm->m", sel.weights, tm.columns[np.arange(tm.N), sel.assignment])


def c0(rep, config, sel):
    return sel.weights @ config.points / rep.order


def c_rho(rep, config, sel):
    # rho(g)^-1 = rho(g)^T
    pulled = np.einsum("jkl,jk->jl", rep.mats[sel.assignment], config.points)
    return sel.weights @ pulled / rep.order


def class_mean_residual(tm):
    """max_j |sum_g column(j, g)| relative to the largest column norm."""
    sums = np.linalg.norm(tm.columns.sum(axis=1), axis=1)
    scale = np.linalg.norm(tm.columns, axis=2).max()
    return float(sums.max() / scale) if scale > 0 else 0.0


def random_points(N, d, seed):
    return np.random.default_rng(seed).standard_normal((N, d))
