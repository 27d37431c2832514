"""File formats: points (CSV or JSON), representations and partitions.

JSON floats are written with Python's shortest round-trip repr, so
``parse(write(x)) == x`` bit for bit.  CSV uses 17 significant digits.
"""
import json
import os

import numpy as np

from .errors import ParseError
from .groups import FiniteGroup, OrthogonalRepresentation
from .partition import OrbitPartition


def _offset(text, char_pos):
    return len(text[:char_pos].encode("utf-8"))


def _read_text(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(path, exc.start, "not valid UTF-8") from None


def load_json(path):
    text = _read_text(path)
    if not text.strip():
        raise ParseError(path, 0, "empty file")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(path, _offset(text, exc.pos), exc.msg) from None


def dump_json(obj, path=None):
    text = json.dumps(obj, indent=2, allow_nan=False) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def format_points_csv(points):
    return "".join(",".join("%.17g" % v for v in row) + "\n" for row in np.asarray(points, dtype=float))


def write_points_csv(points, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_points_csv(points))


def _points_from_json(path, text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(path, _offset(text, exc.pos), exc.msg) from None
    pts = obj.get("points") if isinstance(obj, dict) else None
    if not isinstance(pts, list) or not pts:
        raise ParseError(path, 0, 'expected an object with a nonempty "points" list')
    width = None
    for row in pts:
        if not isinstance(row, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in row):
            raise ParseError(path, 0, "points must be lists of numbers")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(path, 0, "points have inconsistent dimensions")
    return np.array(pts, dtype=float)


def _points_from_csv(path, text):
    rows = []
    width = None
    pos = 0
    for line in text.splitlines(keepends=True):
        start = pos
        pos += len(line.encode("utf-8"))
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        try:
            row = [float(tok) for tok in body.split(",")]
        except ValueError:
            raise ParseError(path, start, f"cannot parse row {body!r}") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(path, start, f"expected {width} columns, got {len(row)}")
        rows.append(row)
    if not rows:
        raise ParseError(path, 0, "no points")
    return np.array(rows, dtype=float)


def read_points(path):
    """Points as an (N, d) array from CSV or JSON (by content)."""
    text = _read_text(path)
    if not text.strip():
        raise ParseError(path, 0, "empty file")
    if text.lstrip().startswith("{"):
        pts = _points_from_json(path, text)
    else:
        pts = _points_from_csv(path, text)
    if not np.all(np.isfinite(pts)):
        raise ParseError(path, 0, "non-finite coordinate")
    return pts


def rep_to_dict(rep):
    G = rep.group
    return {
        "order": G.order,
        "mul": G.mul.tolist(),
        "labels": [G.label(g) for g in range(G.order)],
        "dim": rep.dim,
        "mats": [m.tolist() for m in rep.mats],
    }


def rep_from_dict(obj):
    G = FiniteGroup.from_table(obj["mul"], labels=obj.get("labels"))
    if G.order != obj["order"]:
        raise ValueError("order does not match table")
    mats = np.array(obj["mats"], dtype=float).reshape(G.order, obj["dim"], obj["dim"])
    return OrthogonalRepresentation(G, int(obj["dim"]), mats)


def _vec(x):
    return [float(v) for v in np.asarray(x).ravel()]


def partition_to_dict(partition, rep, rep_key, checks=None, extra=None):
    """JSON-ready dict; subset indices are 1-based into the points file."""
    G = rep.group
    lab = [G.label(g) for g in range(G.order)]
    out = {
        "rep_key": rep_key,
        "subsets": {lab[g]: [j + 1 for j in partition.subsets[g]] for g in range(G.order)},
        "weights": {lab[g]: _vec(partition.hull_weights[g]) for g in range(G.order)},
        "witnesses": {lab[g]: _vec(partition.witnesses[g]) for g in range(G.order)},
        "center": _vec(partition.center),
        "generator": _vec(partition.generator),
        "residual": float(partition.residual),
        "free": bool(partition.free),
        "full_dim": bool(partition.full_dim),
        "checks": checks or {},
    }
    if extra:
        out.update(extra)
    return out


def partition_from_dict(obj, rep, path="<partition>"):
    G = rep.group
    lab = [G.label(g) for g in range(G.order)]
    try:
        subsets = {g: tuple(int(j) - 1 for j in obj["subsets"][lab[g]]) for g in range(G.order)}
        weights = {g: np.array(obj["weights"][lab[g]], dtype=float) for g in range(G.order)}
        witnesses = np.array([obj["witnesses"][lab[g]] for g in range(G.order)], dtype=float)
        return OrbitPartition(
            subsets=subsets,
            hull_weights=weights,
            witnesses=witnesses.reshape(G.order, rep.dim),
            center=np.array(obj["center"], dtype=float),
            generator=np.array(obj["generator"], dtype=float),
            residual=float(obj["residual"]),
            free=bool(obj.get("free", False)),
            full_dim=bool(obj.get("full_dim", False)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(path, 0, f"malformed partition: {exc!s}") from None


def read_partition(path, rep):
    return partition_from_dict(load_json(path), rep, path=os.fspath(path))
