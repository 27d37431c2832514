"""Orthogonal symmetries of a single orbit G.u.

A permutation of G is realized by an orthogonal map on the orbit exactly
when it preserves the Gram matrix of the orbit points.  We quantize the Gram
entries into classes and count automorphisms of the resulting edge-colored
complete graph by orbit-stabilizer along a base, where each orbit is found
by an individualize-and-refine existence search.
"""
from dataclasses import dataclass

import numpy as np

from . import groups as gc
from .errors import PreconditionError, SizeGuardError

DEFAULT_QUANTIZATION = 1e-6
MAX_SYMMETRY_ORDER = 200


@dataclass(frozen=True, eq=False)
class SymmetryReport:
    gram: np.ndarray
    osym_order: int
    osym_generators: list
    contains_left_regular: bool
    quantization: float


def gram(rep, u):
    O = gc.orbit(rep, u)
    return O @ O.T


def quantize(M, quantization, scale=1.0):
    """Integer class labels for the entries of M.

    Sorted values are cut wherever consecutive gaps exceed
    ``quantization * scale``, so near-equal entries never straddle a
    bucket boundary the way plain rounding can.
    """
    flat = M.ravel()
    order = np.argsort(flat, kind="stable")
    gaps = np.diff(flat[order]) > quantization * scale
    ids = np.empty(flat.size, dtype=np.int64)
    ids[order] = np.concatenate([[0], np.cumsum(gaps)])
    return ids.reshape(M.shape)


def _refine(C, col_a, col_b):
    """Jointly refine colorings of the same graph until stable.

    Returns the refined pair or None when the color histograms diverge.
    """
    r = C.shape[0]
    while True:
        ncol = int(max(col_a.max(), col_b.max())) + 1
        rows = []
        for col in (col_a, col_b):
            sig = np.sort(C * ncol + col[None, :], axis=1)
            rows.append(np.concatenate([col[:, None], sig], axis=1))
        _, inv = np.unique(np.vstack(rows), axis=0, return_inverse=True)
        inv = inv.ravel()
        new_a, new_b = inv[:r], inv[r:]
        if not np.array_equal(np.bincount(new_a, minlength=inv.max() + 1), np.bincount(new_b, minlength=inv.max() + 1)):
            return None
        if len(np.unique(new_a)) == len(np.unique(col_a)):
            return new_a, new_b
        col_a, col_b = new_a, new_b


def _individualize(col, v, tag):
    out = col.copy()
    out[v] = tag
    return out


def _extend(C, col_a, col_b):
    """Find one automorphism compatible with the two colorings, or None."""
    ref = _refine(C, col_a, col_b)
    if ref is None:
        return None
    col_a, col_b = ref
    counts = np.bincount(col_a)
    if counts.max() == 1:
        perm = np.empty(C.shape[0], dtype=np.int64)
        pos_b = np.empty(counts.size, dtype=np.int64)
        pos_b[col_b] = np.arange(C.shape[0])
        perm[:] = pos_b[col_a]
        return perm if np.array_equal(C[np.ix_(perm, perm)], C) else None
    cell = int(np.nonzero(counts > 1)[0][0])
    v = int(np.nonzero(col_a == cell)[0][0])
    tag = int(max(col_a.max(), col_b.max())) + 1
    a2 = _individualize(col_a, v, tag)
    for w in np.nonzero(col_b == cell)[0]:
        perm = _extend(C, a2, _individualize(col_b, int(w), tag))
        if perm is not None:
            return perm
    return None


def automorphisms(C):
    """Order and a generating set of the automorphism group of class matrix C."""
    r = C.shape[0]
    col = np.zeros(r, dtype=np.int64)
    base_col = _refine(C, col, col)[0]
    order = 1
    gens = []
    fixed = base_col
    while True:
        counts = np.bincount(fixed)
        if counts.max() == 1:
            return order, gens
        cell = int(np.nonzero(counts > 1)[0][0])
        members = np.nonzero(fixed == cell)[0]
        v = int(members[0])
        tag = int(fixed.max()) + 1
        src = _individualize(fixed, v, tag)
        orbit_size = 1
        for w in members[1:]:
            perm = _extend(C, src, _individualize(fixed, int(w), tag))
            if perm is not None:
                orbit_size += 1
                gens.append([int(x) for x in perm])
        order *= orbit_size
        fixed = _refine(C, src, src)[0]


def osym(rep, u, quantization=DEFAULT_QUANTIZATION):
    """Permutations of G realized by orthogonal maps on the orbit of ``u``.

    ``quantization`` is relative to ``|u|^2`` so the result does not depend
    on the overall scale of ``u``.
    """
    r = rep.order
    if r > MAX_SYMMETRY_ORDER:
        raise SizeGuardError(f"symmetry search limited to r <= {MAX_SYMMETRY_ORDER}, got {r}")
    u = np.asarray(u, dtype=float)
    nu2 = float(u @ u)
    if nu2 == 0.0:
        raise PreconditionError("u must be nonzero")
    if gc.affine_dim_orbit(rep, u) < rep.dim:
        raise PreconditionError("orbit of u does not affinely span the space")
    M = gram(rep, u)
    C = quantize(M, quantization, scale=nu2)
    order, gens = automorphisms(C)
    G = rep.group
    left_ok = all(np.array_equal(C[np.ix_(G.mul[h], G.mul[h])], C) for h in range(r))
    return SymmetryReport(
        gram=M,
        osym_order=int(order),
        osym_generators=gens,
        contains_left_regular=bool(left_ok),
        quantization=float(quantization),
    )
