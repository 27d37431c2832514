from dataclasses import replace

import numpy as np
import pytest

from orbitpart import groups as gc
from orbitpart import partition as P
from orbitpart.catalog import cyclic_rotation
from orbitpart.errors import DegenerateInputError, NotApplicableError, NotAZeroError
from orbitpart.testmap import ColorfulSelection, Configuration

from conftest import entry, solved


def test_assemble_z3():
    pts, out = solved("cyclic:3", 0)
    part = out.partition
    assert part.r == 3 and all(len(part.subsets[g]) > 0 for g in range(3))
    assert part.residual <= 1e-8
    assert part.free and part.full_dim


def test_square_witness_z4():
    _, out = solved("cyclic:4", 0)
    X = out.partition.witnesses
    D = np.linalg.norm(X[:, None] - X[None], axis=2)
    # cyclic order 0,1,2,3: four equal sides, two equal diagonals
    sides = [D[g, (g + 1) % 4] for g in range(4)]
    assert max(sides) - min(sides) <= 1e-6 * max(sides)
    assert abs(D[0, 2] - D[1, 3]) <= 1e-6 * D[0, 2]


def test_exact_zero_fixture():
    """Points placed so that a known selection is an exact zero.

    Put f_1..f_4 at the square a + rho(g) u, each taking its own element;
    the other four points take arbitrary labels with weight 0.
    """
    rep = cyclic_rotation(4).rep
    a, u = np.array([0.5, -0.25]), np.array([1.0, 0.0])
    square = a + gc.orbit(rep, u)
    extra = np.array([[3.0, 1.0], [-2.0, 0.5], [0.1, 4.0], [1.0, -3.0]])
    cfg = Configuration(np.vstack([square, extra]))
    sel = ColorfulSelection([0, 1, 2, 3, 0, 1, 2, 3], [0.25] * 4 + [0.0] * 4)
    part = P.assemble(rep, cfg, sel)
    assert part.residual <= 1e-12
    assert np.allclose(part.center, a) and np.allclose(part.generator, u)
    assert P.verify(part, rep, cfg).passed


def test_assemble_rejects_nonzero():
    rep = cyclic_rotation(3).rep
    cfg = Configuration(np.random.default_rng(0).standard_normal((5, 2)))
    with pytest.raises(NotAZeroError):
        P.assemble(rep, cfg, ColorfulSelection([0, 0, 0, 1, 2], [0.2] * 5))
    with pytest.raises(NotAZeroError):
        P.assemble(rep, cfg, ColorfulSelection([0, 1, 1, 1, 1], [1 / 3, 1 / 3, 1 / 3, 0, 0]))


def test_verify_round_trip_and_sensitivity():
    pts, out = solved("cyclic:5", 1)
    rep = entry("cyclic:5").rep
    cfg = Configuration(pts)
    part = out.partition
    assert P.verify(part, rep, cfg).passed

    W = part.witnesses.copy()
    W[2, 0] += 1e-3
    rpt = P.verify(replace(part, witnesses=W), rep, cfg)
    assert not rpt.checks["orbit_equation"].passed
    assert rpt.checks["orbit_equation"].margin == pytest.approx(1e-3, rel=1e-2)
    assert not rpt.checks["witness_recompute"].passed

    # move one point from subset 0 to subset 1
    subsets = dict(part.subsets)
    j0, j1 = subsets[0][0], subsets[1][0]
    subsets[0] = (j1,) + subsets[0][1:]
    subsets[1] = (j0,) + subsets[1][1:]
    rpt = P.verify(replace(part, subsets=subsets), rep, cfg)
    assert not rpt.checks["witness_recompute"].passed


def test_verify_detects_overlap():
    pts, out = solved("cyclic:3", 2)
    part = out.partition
    subsets = dict(part.subsets)
    subsets[1] = tuple(subsets[1]) + (subsets[0][0],)
    weights = dict(part.hull_weights)
    weights[1] = np.append(weights[1], 0.0)
    rpt = P.verify(replace(part, subsets=subsets, hull_weights=weights), entry("cyclic:3").rep, Configuration(pts))
    assert not rpt.checks["disjoint"].passed


def test_polytope_report():
    rep = cyclic_rotation(4).rep
    rpt = P.polytope_report(rep, [0, 0], [0, 0])
    assert rpt["affine_dim"] == 0 and not rpt["is_free"]
    rpt = P.polytope_report(rep, [1, 0], [0, 0])
    assert np.allclose(rpt["vertices"], [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=1e-15)
    assert rpt["is_free"] and rpt["affine_dim"] == 2


def test_q8_polytope_is_cross_polytope():
    _, out = solved("Q8", 0)
    p = out.partition
    rpt = P.polytope_report(entry("Q8").rep, p.generator, p.center)
    V = rpt["vertices"]
    assert len(np.unique(np.round(V, 8), axis=0)) == 8 and rpt["affine_dim"] == 4
    assert P.cross_polytope_deviation(V, p.center) <= 1e-6


def test_polygon_regularity():
    sq = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    assert P.polygon_regularity(sq)["is_regular"]
    rect = np.array([[0, 0], [2, 0], [2, 1], [0, 1]], dtype=float)
    r = P.polygon_regularity(rect)
    assert not r["is_regular"]
    # central angles of a 2x1 rectangle: 2 atan(1/2) against pi/2
    expected = abs(2 * np.arctan(0.5) - np.pi / 2) / (np.pi / 2)
    assert r["max_deviation"] == pytest.approx(expected, rel=1e-12)
    with pytest.raises(DegenerateInputError):
        P.polygon_regularity(np.array([[0, 0], [1, 0], [1, 0]], dtype=float))
    with pytest.raises(DegenerateInputError):
        P.polygon_regularity(sq[:2])


def test_z6_witnesses_regular():
    _, out = solved("cyclic:6", 3)
    assert P.polygon_regularity(out.partition.witnesses)["max_deviation"] <= 1e-6


def test_octahedron_distance_classes():
    _, out = solved("antiprism:3", 0)
    X = out.partition.witnesses
    counts = sorted(c for _, c in P.distance_classes(X))
    assert counts in ([3, 6, 6], [3, 12])
    assert P.octahedron_deviation(X) <= 1e-6
    # a generic hexagon in space is not an octahedron
    bad = np.random.default_rng(0).standard_normal((6, 3))
    assert P.octahedron_deviation(bad) > 1e-3


def test_intersection_report_z12():
    for r1, r2 in ((4, 3), (3, 4)):
        pts, out = solved(f"nonfaithful:12:{r1}", 0)
        it = out.intersection
        assert (it.r1, it.r2) == (r1, r2)
        assert it.membership_residuals.shape == (r1, r2)
        assert it.membership_residuals.max() <= 1e-8
        assert it.regularity["is_regular"]


def test_intersection_not_applicable():
    pts, out = solved("cyclic:4", 0)
    with pytest.raises(NotApplicableError):
        P.intersection_report(entry("cyclic:4").rep, out.partition, Configuration(pts))


def test_witness_orbit_congruence():
    for key in ("cyclic:5", "prism:3", "tetrahedral"):
        _, out = solved(key, 1)
        p = out.partition
        V = p.center + gc.orbit(entry(key).rep, p.generator)

        def dists(Z):
            return np.sort(np.linalg.norm(Z[:, None] - Z[None], axis=2).ravel())

        assert np.abs(dists(V) - dists(p.witnesses)).max() <= 1e-8


def test_cosets_cover_group():
    cos = P.cosets_of_kernel(entry("nonfaithful:12:4").rep)
    assert cos == [[0, 4, 8], [1, 5, 9], [2, 6, 10], [3, 7, 11]]
