"""SVG (planar) and OBJ (spatial) drawings of a partition."""
from dataclasses import replace

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import RenderUnsupportedError

SIZE = 800
MARGIN = 0.05
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
)
WITNESS_STROKE = "#000000"


def parse_projection(spec, d):
    try:
        axes = [int(t) for t in spec.split(",")]
    except ValueError:
        raise RenderUnsupportedError(f"bad projection {spec!r}; expected 'i,j,k'") from None
    if len(axes) != 3 or len(set(axes)) != 3 or not all(0 <= a < d for a in axes):
        raise RenderUnsupportedError(f"projection needs 3 distinct axes in 0..{d - 1}")
    return axes


def project(points, partition_witnesses, axes):
    return np.asarray(points)[:, axes], np.asarray(partition_witnesses)[:, axes]


def _hull_order_2d(P):
    """Vertex indices of the planar hull in counterclockwise order, or all points if degenerate."""
    if len(P) >= 3:
        try:
            return list(ConvexHull(P).vertices)
        except QhullError:
            pass
    return list(range(len(P)))


def _angular_order(P):
    c = P.mean(axis=0)
    return list(np.argsort(np.arctan2(P[:, 1] - c[1], P[:, 0] - c[0]), kind="stable"))


def svg(points, partition, labels=None):
    P = np.asarray(points, dtype=float)
    X = partition.witnesses
    allpts = np.vstack([P, X])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = max(float((hi - lo).max()), 1e-12)
    inner = SIZE * (1 - 2 * MARGIN)
    off = (SIZE - inner * (hi - lo) / span) / 2

    def tx(p):
        x = off[0] + (p[0] - lo[0]) / span * inner
        y = SIZE - (off[1] + (p[1] - lo[1]) / span * inner)
        return f"{x:.3f},{y:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for g in sorted(partition.subsets):
        color = PALETTE[g % len(PALETTE)]
        idx = list(partition.subsets[g])
        name = labels[g] if labels else str(g)
        S = P[idx]
        out.append(f'<g id="subset-{name}">')
        if len(idx) >= 2:
            ring = " ".join(tx(S[i]) for i in _hull_order_2d(S))
            out.append(f'<polygon points="{ring}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="2"/>')
        for p in S:
            c = tx(p).split(",")
            out.append(f'<circle cx="{c[0]}" cy="{c[1]}" r="5" fill="{color}"/>')
        out.append("</g>")
    ring = " ".join(tx(X[i]) for i in _angular_order(X))
    out.append(f'<polygon id="witness" points="{ring}" fill="none" stroke="{WITNESS_STROKE}" stroke-width="3" stroke-dasharray="8,4"/>')
    for x in X:
        c = tx(x).split(",")
        out.append(f'<circle cx="{c[0]}" cy="{c[1]}" r="4" fill="{WITNESS_STROKE}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def hull_edges(P, tol=1e-9):
    """Edges of the 3-D convex hull, merging coplanar triangles into faces."""
    hull = ConvexHull(P)
    eq = hull.equations
    face_id = np.empty(len(eq), dtype=np.int64)
    reps = []
    scale = max(1.0, float(np.abs(P).max()))
    for i, e in enumerate(eq):
        for k, f in enumerate(reps):
            if np.abs(e - f).max() <= tol * scale:
                face_id[i] = k
                break
        else:
            face_id[i] = len(reps)
            reps.append(e)
    owners = {}
    for s, simplex in enumerate(hull.simplices):
        for a in range(3):
            e = tuple(sorted((int(simplex[a]), int(simplex[(a + 1) % 3]))))
            owners.setdefault(e, set()).add(int(face_id[s]))
    return sorted(e for e, faces in owners.items() if len(faces) > 1)


def obj(points, partition, labels=None):
    P = np.asarray(points, dtype=float)
    X = partition.witnesses
    out = ["# points, subset hulls, witness polytope"]
    for p in P:
        out.append("v %.17g %.17g %.17g" % tuple(p))
    for x in X:
        out.append("v %.17g %.17g %.17g" % tuple(x))
    for g in sorted(partition.subsets):
        idx = list(partition.subsets[g])
        name = labels[g] if labels else str(g)
        out.append(f"g subset_{name}")
        faces = []
        if len(idx) >= 4:
            try:
                faces = ConvexHull(P[idx]).simplices
            except QhullError:
                faces = []
        if len(faces):
            for f in faces:
                out.append("f " + " ".join(str(idx[k] + 1) for k in f))
        elif len(idx) >= 2:
            out.append("l " + " ".join(str(j + 1) for j in idx + idx[:1]))
        else:
            out.append(f"p {idx[0] + 1}")
    out.append("g witness")
    base = len(P)
    try:
        edges = hull_edges(X)
    except QhullError:
        edges = [(i, j) for i in range(len(X)) for j in range(i + 1, len(X))]
    for i, j in edges:
        out.append(f"l {base + i + 1} {base + j + 1}")
    return "\n".join(out) + "\n"


def render(points, partition, d, projection=None, labels=None):
    """Return ``(text, extension)``; planar data gives SVG, spatial data OBJ."""
    P = np.asarray(points, dtype=float)
    if projection is not None:
        axes = parse_projection(projection, d)
        P, W = project(P, partition.witnesses, axes)
        partition = replace(partition, witnesses=W)
        d = 3
    if d == 2:
        return svg(P, partition, labels), "svg"
    if d == 3:
        return obj(P, partition, labels), "obj"
    raise RenderUnsupportedError(f"cannot render dimension {d}; pass --project \"i,j,k\" to pick 3 coordinates")

