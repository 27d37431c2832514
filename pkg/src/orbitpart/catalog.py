"""Named group/representation constructions with their point-count bounds.

Every constructor returns a validated :class:`CatalogEntry`.  ``resolve`` maps
string keys such as ``"cyclic:4"``, ``"prism:3"``, ``"Q8"`` or
``"nonfaithful:12:4"`` to entries; ``default_keys`` lists the table printed by
``catalog list``.
"""
import itertools
import math
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import groups as gc
from .errors import InvalidParameterError, NotFullDimensionalError, UnknownKeyError

PHI = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    key: str
    rep: gc.OrthogonalRepresentation
    r: int
    d: int
    N_bound: int
    polytope_name: str
    expected_iso_order: Optional[int]
    faithful: bool
    full_dimensional: bool
    note: str = ""

    def summary(self):
        return {
            "key": self.key,
            "r": self.r,
            "d": self.d,
            "N_bound": self.N_bound,
            "polytope_name": self.polytope_name,
            "expected_iso_order": self.expected_iso_order,
        }


def _entry(key, rep, polytope_name, expected_iso_order=None, note=""):
    r, d = rep.order, rep.dim
    return CatalogEntry(
        key=key,
        rep=rep,
        r=r,
        d=d,
        N_bound=(r - 2) * (d + 1) + 2,
        polytope_name=polytope_name,
        expected_iso_order=expected_iso_order,
        faithful=len(gc.kernel(rep)) == 1,
        full_dimensional=gc.max_orbit_dim(rep) == d,
        note=note,
    )


def rotation2(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _cyclic_mats(r, r1):
    return np.array([rotation2(2 * math.pi * (k % r1) / r1) for k in range(r)])


def cyclic_rotation(r):
    if r < 3:
        raise NotFullDimensionalError(f"Z_{r} acting by rotations is not full-dimensional for r < 3")
    G = gc.cyclic_group(r)
    rep = gc.OrthogonalRepresentation(G, 2, _cyclic_mats(r, r), name=f"cyclic:{r}")
    return _entry(f"cyclic:{r}", rep, f"regular {r}-gon", 2 * r)


def nonfaithful_cyclic(r, r1):
    """Z_r acting on the plane through k -> rotation by 2 pi k / r1."""
    if r1 < 3:
        raise NotFullDimensionalError(f"r1 = {r1} < 3 is not full-dimensional")
    if r < 1 or r % r1:
        raise InvalidParameterError(f"r1 = {r1} does not divide r = {r}")
    r2 = r // r1
    G = gc.cyclic_group(r)
    key = f"nonfaithful:{r}:{r1}"
    rep = gc.OrthogonalRepresentation(G, 2, _cyclic_mats(r, r1), name=key)
    return _entry(key, rep, f"regular {r1}-gon (kernel of order {r2})", 2 * r1)


def _block(a, b):
    d1, d2 = a.shape[0], b.shape[0]
    out = np.zeros((d1 + d2, d1 + d2))
    out[:d1, :d1] = a
    out[d1:, d1:] = b
    return out


def prism_rep(n):
    if n < 3:
        raise InvalidParameterError(f"prism needs n >= 3, got {n}")
    G = gc.direct_product(gc.cyclic_group(n), gc.cyclic_group(2))
    mats = [_block(rotation2(2 * math.pi * (e // 2) / n), np.array([[(-1.0) ** (e % 2)]])) for e in range(2 * n)]
    rep = gc.OrthogonalRepresentation(G, 3, np.array(mats), name=f"prism:{n}")
    return _entry(f"prism:{n}", rep, "right regular n-prism", 4 * n)


def antiprism_rep(n):
    if n < 2:
        raise InvalidParameterError(f"antiprism needs n >= 2, got {n}")
    G = gc.cyclic_group(2 * n)
    mats = [_block(rotation2(math.pi * k / n), np.array([[(-1.0) ** k]])) for k in range(2 * n)]
    rep = gc.OrthogonalRepresentation(G, 3, np.array(mats), name=f"antiprism:{n}")
    name = {2: "isosceles tetrahedron", 3: "octahedron"}.get(n, "right regular n-antiprism")
    return _entry(f"antiprism:{n}", rep, name, 4 * n)


def dihedral_rep(n):
    """Standard action of the order-2n dihedral group on the plane."""
    if n < 3:
        raise InvalidParameterError(f"dihedral rep needs n >= 3, got {n}")
    refl = np.diag([1.0, -1.0])
    mats = [rotation2(2 * math.pi * k / n) for k in range(n)]
    mats += [rotation2(2 * math.pi * k / n) @ refl for k in range(n)]
    labels = [f"r{k}" for k in range(n)] + [f"r{k}s" for k in range(n)]
    G, rep = gc.group_from_matrices(np.array(mats), labels=labels, name=f"dihedral:{n}")
    return _entry(f"dihedral:{n}", rep, "equiangular 2n-gon", 2 * n)


# --- quaternions -----------------------------------------------------------

def quat_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def left_mult_matrix(q):
    """Matrix of x -> q x on H = R^4 with basis (1, i, j, k)."""
    a, b, c, d = q
    return np.array([
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ])


def _quat_label(q):
    names = ("1", "i", "j", "k")
    nz = [(v, n) for v, n in zip(q, names) if abs(v) > 1e-12]
    if len(nz) == 1:
        v, n = nz[0]
        return ("" if v > 0 else "-") + n
    return "(" + ",".join(f"{v:.6g}" for v in q) + ")"


def _even_perms(n):
    out = []
    for p in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        if inversions % 2 == 0:
            out.append(p)
    return out


def binary_dihedral_units(r):
    units = []
    for k in range(2 * r):
        c, s = math.cos(math.pi * k / r), math.sin(math.pi * k / r)
        units.append(np.array([c, s, 0.0, 0.0]))
    for k in range(2 * r):
        c, s = math.cos(math.pi * k / r), math.sin(math.pi * k / r)
        # (c + s i) j = c j + s k
        units.append(np.array([0.0, 0.0, c, s]))
    return units


def hurwitz_units():
    units = []
    for i in range(4):
        for s in (1.0, -1.0):
            q = np.zeros(4)
            q[i] = s
            units.append(q)
    for signs in itertools.product((0.5, -0.5), repeat=4):
        units.append(np.array(signs))
    return units


def icosian_units():
    units = hurwitz_units()
    base = (0.0, 0.5, 0.5 / PHI, 0.5 * PHI)
    for p in _even_perms(4):
        for signs in itertools.product((1.0, -1.0), repeat=3):
            vals = [base[p[i]] for i in range(4)]
            q = np.array(vals)
            nz = [i for i in range(4) if base[p[i]] != 0.0]
            for i, s in zip(nz, signs):
                q[i] *= s
            units.append(q)
    return units


def _quaternion_group(units, key):
    Q = np.array(units)
    # identity first, otherwise generation order
    idx = [int(i) for i in range(len(Q)) if np.allclose(Q[i], [1, 0, 0, 0])]
    rest = [i for i in range(len(Q)) if i not in idx]
    Q = Q[idx + rest]
    r = len(Q)
    prods = np.array([quat_mul(Q[a], Q[b]) for a in range(r) for b in range(r)])
    dist = np.abs(prods[:, None, :] - Q[None, :, :]).max(axis=2)
    table = dist.argmin(axis=1)
    if dist[np.arange(r * r), table].max() > 1e-9:
        raise InvalidParameterError(f"{key}: unit set is not closed")
    G = gc.FiniteGroup.from_table(table.reshape(r, r), labels=[_quat_label(q) for q in Q])
    mats = np.array([left_mult_matrix(q) for q in Q])
    rep = gc.OrthogonalRepresentation(G, 4, mats, name=key)
    return rep, Q


def quaternion_group_rep(kind, r=None):
    """Finite subgroups of the unit quaternions acting on R^4 by left multiplication.

    ``kind`` is ``"binary_dihedral"`` (with ``r >= 2``; ``r = 2`` is Q8),
    ``"binary_tetrahedral"`` or ``"binary_icosahedral"``.
    """
    if kind == "binary_dihedral":
        if r is None or r < 2:
            raise InvalidParameterError("binary_dihedral needs r >= 2")
        key = "Q8" if r == 2 else f"binary_dihedral:{r}"
        rep, Q = _quaternion_group(binary_dihedral_units(r), key)
        name = "4-dimensional cross-polytope" if r == 2 else "fusil"
        return _entry(key, rep, name, None), Q
    if kind == "binary_tetrahedral":
        rep, Q = _quaternion_group(hurwitz_units(), "binary_tetrahedral")
        return _entry("binary_tetrahedral", rep, "24-cell", None), Q
    if kind == "binary_icosahedral":
        rep, Q = _quaternion_group(icosian_units(), "binary_icosahedral")
        return _entry("binary_icosahedral", rep, "600-cell", None), Q
    raise InvalidParameterError(f"unknown quaternion group kind {kind!r}")


# --- 3-dimensional point groups --------------------------------------------

C3 = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
FLIP = np.diag([1.0, -1.0, -1.0])
C4 = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
# rotation by 2 pi / 5 about the icosahedron vertex (0, 1, phi)
C5 = 0.5 * np.array([
    [1 / PHI, -PHI, 1.0],
    [PHI, 1.0, 1 / PHI],
    [-1.0, 1 / PHI, PHI],
])

_ROTATION = {
    "tetrahedral": ([C3, FLIP], "icosahedron (snub tetrahedron)", 12),
    "octahedral": ([C3, C4], "snub cube", 24),
    "icosahedral": ([C3, FLIP, C5], "snub dodecahedron", 60),
}


def rotation_group_rep(kind):
    if kind not in _ROTATION:
        raise InvalidParameterError(f"unknown rotation group {kind!r}")
    gens, name, order = _ROTATION[kind]
    _, rep = gc.group_from_generators(gens, cap=order, name=kind)
    return _entry(kind, rep, name, order)


def _signed_perms(even_only):
    mats = []
    for p in itertools.permutations(range(3)):
        for signs in itertools.product((1.0, -1.0), repeat=3):
            if even_only and np.prod(signs) < 0:
                continue
            m = np.zeros((3, 3))
            for i in range(3):
                m[p[i], i] = signs[i]
            mats.append(m)
    return np.array(mats)


def full_polyhedral_rep(kind):
    """Full 3-D reflection groups of orders 24, 48 and 120."""
    if kind == "full_octahedral":
        _, rep = gc.group_from_matrices(_signed_perms(True), name=kind)
        return _entry(kind, rep, "truncated octahedron", 24)
    if kind == "full_octahedral_x2":
        _, rep = gc.group_from_matrices(_signed_perms(False), name=kind)
        return _entry(kind, rep, "truncated cuboctahedron", 48)
    if kind == "full_icosahedral_x2":
        _, rep = gc.group_from_generators([C3, FLIP, C5, -np.eye(3)], cap=120, name=kind)
        return _entry(kind, rep, "truncated icosidodecahedron", 120)
    raise InvalidParameterError(f"unknown reflection group {kind!r}")


def helmert(n):
    return gc.basis_Rperp(n).basis


def _perm_matrix(p):
    n = len(p)
    m = np.zeros((n, n))
    m[list(p), range(n)] = 1.0
    return m


def symmetric_permutahedron_rep(n):
    """S_n permuting coordinates, restricted to the sum-zero subspace."""
    if not 3 <= n <= 5:
        raise InvalidParameterError(f"permutahedron supported for 3 <= n <= 5, got {n}")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (s t)(i) = s(t(i))
    mul = np.array([[index[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms])
    G = gc.FiniteGroup.from_table(mul, labels=["".join(str(v + 1) for v in p) for p in perms])
    H = helmert(n)
    mats = np.array([H.T @ _perm_matrix(p) @ H for p in perms])
    rep = gc.OrthogonalRepresentation(G, n - 1, mats, name=f"permutahedron:{n}")
    return _entry(f"permutahedron:{n}", rep, "permutahedron", math.factorial(n))


def regular_perp_rep(G, key=None):
    """G permuting coordinates of R^r by h.e_g = e_{g h^-1}, on the sum-zero part."""
    r = G.order
    if r < 3:
        raise InvalidParameterError(f"regular simplex rep needs |G| >= 3, got {r}")
    H = helmert(r)
    mats = []
    for h in range(r):
        P = np.zeros((r, r))
        P[G.mul[np.arange(r), G.inv[h]], np.arange(r)] = 1.0
        mats.append(H.T @ P @ H)
    key = key or f"regular_perp:{r}"
    rep = gc.OrthogonalRepresentation(G, r - 1, np.array(mats), name=key)
    return _entry(key, rep, "regular-action simplex", None)


# --- registry --------------------------------------------------------------

def _int_args(parts, count, key):
    if len(parts) != count:
        raise UnknownKeyError(f"catalog key {key!r} needs {count} integer argument(s)")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise UnknownKeyError(f"catalog key {key!r} has a non-integer argument") from None


_CALL_ALIASES = {
    "cyclic_rotation": "cyclic",
    "nonfaithful_cyclic": "nonfaithful",
    "prism_rep": "prism",
    "antiprism_rep": "antiprism",
    "dihedral_rep": "dihedral",
    "symmetric_permutahedron_rep": "permutahedron",
    "binary_dihedral": "binary_dihedral",
}
_CALL_RE = re.compile(r"^\s*(\w+)\s*\(([^)]*)\)\s*$")


def canonical_key(key):
    """Accept call syntax such as ``prism_rep(3)`` or ``rotation_group_rep(tetrahedral)``."""
    m = _CALL_RE.match(key)
    if not m:
        return key.strip()
    name, args = m.group(1), [a.strip() for a in m.group(2).split(",") if a.strip()]
    if name in ("rotation_group_rep", "full_polyhedral_rep", "quaternion_group_rep") and len(args) == 1:
        return args[0]
    if name in _CALL_ALIASES:
        return ":".join([_CALL_ALIASES[name], *args])
    return key.strip()


def resolve(key):
    key = canonical_key(key)
    head, *args = key.split(":")
    if head == "cyclic":
        return cyclic_rotation(*_int_args(args, 1, key))
    if head == "nonfaithful":
        return nonfaithful_cyclic(*_int_args(args, 2, key))
    if head == "prism":
        return prism_rep(*_int_args(args, 1, key))
    if head == "antiprism":
        return antiprism_rep(*_int_args(args, 1, key))
    if head == "dihedral":
        return dihedral_rep(*_int_args(args, 1, key))
    if head == "Q8" and not args:
        return quaternion_group_rep("binary_dihedral", 2)[0]
    if head == "binary_dihedral":
        return quaternion_group_rep("binary_dihedral", *_int_args(args, 1, key))[0]
    if head in ("binary_tetrahedral", "binary_icosahedral") and not args:
        return quaternion_group_rep(head)[0]
    if head in _ROTATION and not args:
        return rotation_group_rep(head)
    if head in ("full_octahedral", "full_octahedral_x2", "full_icosahedral_x2") and not args:
        return full_polyhedral_rep(head)
    if head == "permutahedron":
        return symmetric_permutahedron_rep(*_int_args(args, 1, key))
    if head == "regular_perp":
        (n,) = _int_args(args, 1, key)
        return regular_perp_rep(gc.cyclic_group(n), key)
    raise UnknownKeyError(f"unknown catalog key {key!r}")


def default_keys():
    keys = [f"cyclic:{r}" for r in range(3, 9)]
    keys += [f"prism:{n}" for n in range(3, 6)]
    keys += [f"antiprism:{n}" for n in range(2, 6)]
    keys += ["Q8", "binary_tetrahedral", "binary_icosahedral"]
    keys += ["full_octahedral", "full_octahedral_x2", "full_icosahedral_x2"]
    keys += ["tetrahedral", "octahedral", "icosahedral"]
    keys += ["permutahedron:3", "permutahedron:4", "dihedral:4", "regular_perp:4"]
    keys += ["nonfaithful:12:4", "nonfaithful:12:3"]
    return keys


def catalog_list(keys=None):
    return [resolve(k) for k in (keys or default_keys())]
