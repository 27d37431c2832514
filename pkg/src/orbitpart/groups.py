"""Finite groups, orthogonal representations and their subspaces of R^d[G].

Groups are abstract index sets ``0..r-1`` with a multiplication table;
representations attach one ``d x d`` matrix per index.  Vectors of
``R^d[G]`` are stored flat with the ``g``-block in rows ``g*d:(g+1)*d``.
The left action of ``h`` on ``R^d[G]`` is the block permutation
``(h.w)_g = w_{g h}``.
"""
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DegenerateRepresentationError,
    InvalidGroupError,
    InvalidMatrixError,
    InvalidOrderError,
    NotFiniteError,
    PreconditionError,
)

MAX_ORDER = 1024
TOL_STRUCT = 1e-10
TOL_MATCH = 1e-8
TOL_RANK = 1e-8


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mul: np.ndarray
    identity: int
    inv: np.ndarray
    labels: Optional[tuple] = None

    def __post_init__(self):
        r = self.order
        if r < 1:
            raise InvalidOrderError(f"group order must be positive, got {r}")
        if r > MAX_ORDER:
            raise InvalidOrderError(f"group order {r} exceeds {MAX_ORDER}")
        mul = np.asarray(self.mul, dtype=np.int64)
        inv = np.asarray(self.inv, dtype=np.int64)
        mul.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "mul", mul)
        object.__setattr__(self, "inv", inv)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        _check_axioms(self)

    @classmethod
    def from_table(cls, mul, labels=None):
        mul = np.asarray(mul, dtype=np.int64)
        r = mul.shape[0]
        if mul.shape != (r, r):
            raise InvalidGroupError("multiplication table must be square")
        ids = [e for e in range(r) if np.array_equal(mul[e], np.arange(r))]
        if not ids:
            raise InvalidGroupError("no identity element in table")
        e = ids[0]
        inv = np.empty(r, dtype=np.int64)
        for g in range(r):
            hits = np.nonzero(mul[g] == e)[0]
            if hits.size != 1:
                raise InvalidGroupError(f"element {g} has no unique inverse")
            inv[g] = hits[0]
        return cls(order=r, mul=mul, identity=e, inv=inv, labels=labels)

    def label(self, g):
        return self.labels[g] if self.labels is not None else str(g)

    def left_perm(self, g):
        """Permutation h -> g h."""
        return self.mul[g].copy()

    def right_perm(self, g):
        """Permutation h -> h g."""
        return self.mul[:, g].copy()


def _check_axioms(G):
    r, mul, e, inv = G.order, G.mul, G.identity, G.inv
    if mul.shape != (r, r) or inv.shape != (r,):
        raise InvalidGroupError("table shapes do not match the order")
    if mul.min() < 0 or mul.max() >= r:
        raise InvalidGroupError("table entries out of range")
    target = np.arange(r)
    if not (np.all(np.sort(mul, axis=1) == target) and np.all(np.sort(mul, axis=0) == target[:, None])):
        raise InvalidGroupError("multiplication table is not a Latin square")
    if not (np.array_equal(mul[e], target) and np.array_equal(mul[:, e], target)):
        raise InvalidGroupError("identity element does not act trivially")
    if not np.all(mul[target, inv] == e):
        raise InvalidGroupError("inverse table is wrong")
    if r <= 128:
        left = mul[mul[:, :, None], np.arange(r)[None, None, :]]  # (ab)c
        right = mul[np.arange(r)[:, None, None], mul[None, :, :]]  # a(bc)
        if not np.array_equal(left, right):
            raise InvalidGroupError("multiplication is not associative")
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, r, size=(3, 20000))
        if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
            raise InvalidGroupError("multiplication is not associative")


def cyclic_group(r):
    if r < 1:
        raise InvalidOrderError(f"cyclic group needs r >= 1, got {r}")
    a = np.arange(r)
    mul = (a[:, None] + a[None, :]) % r
    inv = (-a) % r
    return FiniteGroup(order=r, mul=mul, identity=0, inv=inv, labels=tuple(str(k) for k in a))


def direct_product(G, H):
    """Componentwise product; the pair (g, h) is encoded as ``g*|H| + h``."""
    m = H.order
    r = G.order * m
    idx = np.arange(r)
    g, h = idx // m, idx % m
    mul = G.mul[g[:, None], g[None, :]] * m + H.mul[h[:, None], h[None, :]]
    inv = G.inv[g] * m + H.inv[h]
    labels = tuple(f"({G.label(a)},{H.label(b)})" for a, b in zip(g, h))
    return FiniteGroup(order=r, mul=mul, identity=G.identity * m + H.identity, inv=inv, labels=labels)


@dataclass(frozen=True, eq=False)
class OrthogonalRepresentation:
    group: FiniteGroup
    dim: int
    mats: np.ndarray
    tol_ortho: float = TOL_STRUCT
    name: str = ""

    def __post_init__(self):
        G, d = self.group, self.dim
        mats = np.array(self.mats, dtype=float)
        if mats.shape != (G.order, d, d):
            raise InvalidMatrixError(f"expected matrices of shape {(G.order, d, d)}, got {mats.shape}")
        if not np.all(np.isfinite(mats)):
            raise InvalidMatrixError("non-finite matrix entry")
        mats[G.identity] = np.eye(d)
        mats.setflags(write=False)
        object.__setattr__(self, "mats", mats)
        ortho, hom = representation_residuals(self)
        if ortho > self.tol_ortho:
            raise InvalidMatrixError(f"matrices are not orthogonal (residual {ortho:.3g})")
        if hom > self.tol_ortho:
            raise InvalidMatrixError(f"matrices do not respect the group law (residual {hom:.3g})")

    @property
    def order(self):
        return self.group.order

    def act(self, g, v):
        return self.mats[g] @ v


def representation_residuals(rep):
    """Max-norm orthogonality and homomorphism residuals."""
    M, G = rep.mats, rep.group
    d = M.shape[1]
    ortho = np.abs(np.einsum("gji,gjk->gik", M, M) - np.eye(d)).max()
    prod = np.einsum("aij,bjk->abik", M, M)
    hom = np.abs(prod - M[G.mul]).max()
    return float(ortho), float(hom)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    ambient_dim: int
    basis: np.ndarray
    name: str

    @property
    def dim(self):
        return self.basis.shape[1]

    def project(self, v):
        return self.basis @ (self.basis.T @ v)


def _nullspace(A, name):
    """Orthonormal basis of ker A from the SVD; rank decided relatively."""
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0)), 0
    _, s, vt = np.linalg.svd(A, full_matrices=True)
    rank = int(np.sum(s > TOL_RANK * s[0])) if s.size and s[0] > 0 else 0
    return vt[rank:].T.copy(), rank


def _match_matrices(cands, mats, tol):
    """Index into ``mats`` of each candidate, -1 when nothing is within tol."""
    a = cands.reshape(len(cands), -1)
    b = mats.reshape(len(mats), -1)
    out = np.full(len(a), -1, dtype=np.int64)
    chunk = max(1, 2_000_000 // max(1, len(b) * b.shape[1]))
    for s in range(0, len(a), chunk):
        diff = np.abs(a[s : s + chunk, None, :] - b[None, :, :]).max(axis=2)
        best = diff.argmin(axis=1)
        ok = diff[np.arange(len(best)), best] <= tol
        out[s : s + chunk] = np.where(ok, best, -1)
    return out


def group_from_matrices(mats, labels=None, tol=TOL_MATCH, name=""):
    """Group table of a finite set of matrices closed under multiplication.

    The identity matrix must be present; it is moved to index 0.
    """
    mats = np.asarray(mats, dtype=float)
    r, d, _ = mats.shape
    eye_idx = _match_matrices(np.eye(d)[None], mats, tol)[0]
    if eye_idx < 0:
        raise InvalidGroupError("identity matrix missing from the set")
    order = [eye_idx] + [i for i in range(r) if i != eye_idx]
    mats = mats[order]
    if labels is not None:
        labels = [labels[i] for i in order]
    prods = np.einsum("aij,bjk->abik", mats, mats).reshape(r * r, d, d)
    table = _match_matrices(prods, mats, tol)
    if (table < 0).any():
        raise InvalidGroupError("matrix set is not closed under multiplication")
    G = FiniteGroup.from_table(table.reshape(r, r), labels=labels)
    return G, OrthogonalRepresentation(G, d, mats, name=name)


def group_from_generators(mats, cap=MAX_ORDER, tol=TOL_MATCH, name=""):
    """Close a list of orthogonal matrices under products."""
    gens = [np.asarray(m, dtype=float) for m in mats]
    if not gens:
        raise InvalidMatrixError("need at least one generator")
    d = gens[0].shape[0]
    for m in gens:
        if m.shape != (d, d):
            raise InvalidMatrixError("generators must be square and of equal size")
        if np.abs(m.T @ m - np.eye(d)).max() > tol:
            raise InvalidMatrixError("generator is not orthogonal")
    elems = [np.eye(d)]
    stack = np.eye(d)[None]
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for m in gens:
                p = elems[i] @ m
                if _match_matrices(p[None], stack, tol)[0] < 0:
                    elems.append(p)
                    stack = np.concatenate([stack, p[None]])
                    nxt.append(len(elems) - 1)
                    if len(elems) > cap:
                        raise NotFiniteError(f"closure exceeds {cap} elements")
        frontier = nxt
    return group_from_matrices(np.array(elems), tol=tol, name=name)


def kernel(rep):
    dev = np.abs(rep.mats - np.eye(rep.dim)).max(axis=(1, 2))
    return sorted(int(g) for g in np.nonzero(dev <= TOL_MATCH)[0])


def fixed_projector(rep):
    return rep.mats.mean(axis=0)


def has_trivial_subrep(rep):
    return np.abs(fixed_projector(rep)).max() > TOL_STRUCT


def _stack_rho(rep):
    # (dr x d): block g is rho(g)
    return rep.mats.reshape(rep.order * rep.dim, rep.dim)


def basis_V0(rep):
    r, d = rep.order, rep.dim
    B = np.tile(np.eye(d), (r, 1)) / np.sqrt(r)
    return SubspaceBasis(r * d, B, "V0")


def basis_V_rho(rep):
    r, d = rep.order, rep.dim
    return SubspaceBasis(r * d, _stack_rho(rep) / np.sqrt(r), "Vrho")


def basis_W0(rep):
    r, d = rep.order, rep.dim
    B, _ = _nullspace(np.tile(np.eye(d), (1, r)), "W0")
    return SubspaceBasis(r * d, B, "W0")


def basis_W_rho(rep):
    r, d = rep.order, rep.dim
    B, _ = _nullspace(_stack_rho(rep).T, "Wrho")
    return SubspaceBasis(r * d, B, "Wrho")


def basis_W(rep):
    """Orthonormal basis of W = {w : sum_g w_g = 0, sum_g rho(g)^-1 w_g = 0}."""
    if has_trivial_subrep(rep):
        raise PreconditionError("representation contains a trivial subrepresentation")
    r, d = rep.order, rep.dim
    A = np.vstack([np.tile(np.eye(d), (1, r)), _stack_rho(rep).T])
    B, rank = _nullspace(A, "W")
    if rank != min(2 * d, r * d):
        raise DegenerateRepresentationError(f"constraint rank {rank}, expected {2 * d}")
    if B.shape[1] != d * (r - 2) and r >= 2:
        raise DegenerateRepresentationError(f"dim W = {B.shape[1]}, expected {d * (r - 2)}")
    return SubspaceBasis(r * d, B, "W")


def basis_Rperp(r):
    """Helmert basis of the sum-zero hyperplane of R^r (r x (r-1))."""
    B = np.zeros((r, r - 1))
    for k in range(1, r):
        B[:k, k - 1] = 1.0
        B[k, k - 1] = -k
        B[:, k - 1] /= np.sqrt(k * (k + 1))
    return SubspaceBasis(r, B, "RperpG")


def _max_cos(A, B):
    if A.shape[1] == 0 or B.shape[1] == 0:
        return 0.0
    return float(np.linalg.svd(A.T @ B, compute_uv=False).max())


def decomposition_checks(rep):
    """Named pass/fail checks for the complementary decompositions."""
    r, d = rep.order, rep.dim
    V, Wr = basis_V_rho(rep), basis_W_rho(rep)
    checks = {
        "dim_Vrho": V.dim == d,
        "dim_Wrho": Wr.dim == d * (r - 1),
        "Vrho+Wrho": V.dim + Wr.dim == d * r,
        "Vrho_cap_Wrho": _max_cos(V.basis, Wr.basis) < 1 - TOL_RANK,
    }
    if not has_trivial_subrep(rep):
        Vp = np.hstack([basis_V0(rep).basis, V.basis])
        s = np.linalg.svd(Vp, compute_uv=False)
        dim_vp = int(np.sum(s > TOL_RANK * s[0]))
        W = basis_W(rep)
        checks["V0_cap_Vrho"] = dim_vp == 2 * d
        checks["V'+W"] = dim_vp + W.dim == d * r
        checks["V'_cap_W"] = _max_cos(np.linalg.qr(Vp)[0], W.basis) < 1 - TOL_RANK
    return checks


def verify_decomposition(rep):
    return all(decomposition_checks(rep).values())


def act_on_blocks(G, h, w, d):
    """Left action of h on R^d[G]: (h.w)_g = w_{g h}."""
    blocks = np.asarray(w).reshape(G.order, d, *np.shape(w)[1:])
    return blocks[G.mul[:, h]].reshape(np.shape(w))


def orbit(rep, u):
    return rep.mats @ np.asarray(u, dtype=float)


def stabilizer(rep, u):
    u = np.asarray(u, dtype=float)
    dev = np.linalg.norm(orbit(rep, u) - u, axis=1)
    return [int(g) for g in np.nonzero(dev <= TOL_MATCH * (1 + np.linalg.norm(u)))[0]]


def affine_rank(points, rel=TOL_RANK):
    pts = np.asarray(points, dtype=float)
    X = pts - pts.mean(axis=0)
    s = np.linalg.svd(X, compute_uv=False)
    # rounding noise of the centroid is not spread
    if s.size == 0 or s[0] <= 1e-13 * max(1.0, float(np.abs(pts).max())):
        return 0
    return int(np.sum(s > rel * s[0]))


def affine_dim_orbit(rep, u):
    return affine_rank(orbit(rep, u))


def max_orbit_dim(rep, samples=8, seed=0):
    rng = np.random.default_rng(seed)
    return max(affine_dim_orbit(rep, rng.standard_normal(rep.dim)) for _ in range(samples))


def character_norm(rep):
    """(1/r) sum_g tr(rho(g))^2; 1 means absolutely irreducible."""
    tr = np.trace(rep.mats, axis1=1, axis2=2)
    return float(np.mean(tr**2))


def trivial_rep(G, d=1):
    return OrthogonalRepresentation(G, d, np.tile(np.eye(d), (G.order, 1, 1)), name="trivial")
