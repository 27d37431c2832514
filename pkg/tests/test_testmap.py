import math
import warnings

import numpy as np
import pytest

from orbitpart import groups as gc
from orbitpart import testmap as T
from orbitpart.catalog import cyclic_rotation
from orbitpart.errors import InvalidParameterError, PointCountError, PreconditionError

from conftest import entry


def test_required_N():
    assert T.required_N(4, 2) == 8
    assert T.required_N(8, 4) == 32
    assert T.required_N(120, 4) == 592
    with pytest.raises(InvalidParameterError):
        T.required_N(2, 3)


def test_raw_F_by_hand():
    # Z_3 rotations, f(v_1) = (1, 0), g = identity
    rep = cyclic_rotation(3).rep
    cfg = T.Configuration(np.array([[1.0, 0.0]] * 5))
    col = T.raw_F_column(rep, cfg, 0, 0).reshape(3, 2)
    s = math.sqrt(3) / 6
    expected = np.array([[1 / 3, 0.0], [-1 / 6, -s], [-1 / 6, s]])
    assert np.allclose(col, expected, atol=1e-15)


def test_raw_F_lies_in_W(rng):
    e = entry("prism:3")
    cfg = T.Configuration(rng.standard_normal((e.N_bound, 3)))
    for j in range(3):
        for g in range(e.r):
            blocks = T.raw_F_column(e.rep, cfg, j, g).reshape(e.r, 3)
            assert np.abs(blocks.sum(axis=0)).max() <= 1e-12
            pulled = np.einsum("hkl,hk->l", e.rep.mats, blocks)
            assert np.abs(pulled).max() <= 1e-12


def test_raw_R():
    assert np.allclose(T.raw_R_column(3, 0), [2 / 3, -1 / 3, -1 / 3])
    assert np.allclose(T.raw_R_column(4, 2), [-0.25, -0.25, 0.75, -0.25])
    assert abs(T.raw_R_column(7, 5).sum()) <= 1e-15


def test_codomain_dimensions(rng):
    e = entry("cyclic:3")
    tm = T.build_testmap(e.rep, T.Configuration(rng.standard_normal((5, 2))))
    assert tm.dim == 4 and tm.columns.shape == (5, 3, 4)
    q = entry("Q8")
    tmq = T.build_testmap(q.rep, T.Configuration(rng.standard_normal((32, 4))))
    assert tmq.dim == 31 and tmq.dim_W == 24


def test_fast_and_literal_paths_agree(rng):
    for key in ("cyclic:4", "antiprism:3", "Q8"):
        e = entry(key)
        cfg = T.Configuration(rng.standard_normal((e.N_bound, e.d)))
        fast = T.build_testmap(e.rep, cfg)
        slow = T.build_testmap_raw(e.rep, cfg, basis_W=fast.basis_W)
        assert np.abs(fast.columns - slow.columns).max() <= 1e-12


def test_zero_mean_classes(rng):
    for key in ("cyclic:5", "tetrahedral", "nonfaithful:12:4"):
        e = entry(key)
        tm = T.build_testmap(e.rep, T.Configuration(rng.standard_normal((e.N_bound, e.d))))
        assert T.class_mean_residual(tm) <= 1e-9


def test_errors(rng):
    rep = cyclic_rotation(4).rep
    with pytest.raises(PointCountError, match="requires 8 points"):
        T.build_testmap(rep, T.Configuration(rng.standard_normal((7, 2))))
    triv = gc.trivial_rep(gc.cyclic_group(3), 2)
    with pytest.raises(PreconditionError):
        T.build_testmap(triv, T.Configuration(rng.standard_normal((5, 2))))
    with pytest.raises(InvalidParameterError):
        T.Configuration(np.array([[np.nan, 0.0]]))


def test_hyperplane_points_warn():
    rep = cyclic_rotation(3).rep
    pts = np.column_stack([np.arange(5.0), np.zeros(5)])
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        T.build_testmap(rep, T.Configuration(pts))
    assert any(issubclass(w.category, T.DegeneratePointsWarning) for w in rec)


def test_c0_crho_single_term(rng):
    e = entry("cyclic:3")
    cfg = T.Configuration(rng.standard_normal((5, 2)))
    sel = T.ColorfulSelection([0, 1, 2, 0, 1], [1, 0, 0, 0, 0])
    assert np.allclose(T.c0(e.rep, cfg, sel), cfg.points[0] / 3)
    assert np.allclose(T.c_rho(e.rep, cfg, sel), cfg.points[0] / 3)


def test_crho_under_group_action(rng):
    e = entry("prism:4")
    cfg = T.Configuration(rng.standard_normal((e.N_bound, 3)))
    t = rng.random(e.N_bound)
    sel = T.ColorfulSelection(rng.integers(0, e.r, e.N_bound), t / t.sum())
    G = e.rep.group
    for h in range(e.r):
        # g_j -> g_j h^-1 gives rho(g_j h^-1)^T f = rho(h) rho(g_j)^T f
        moved = T.c_rho(e.rep, cfg, sel.act(G, h))
        assert np.allclose(moved, e.rep.mats[h] @ T.c_rho(e.rep, cfg, sel), atol=1e-12)


def test_evaluate_L_single_weight(rng):
    e = entry("cyclic:4")
    cfg = T.Configuration(rng.standard_normal((8, 2)))
    tm = T.build_testmap(e.rep, cfg)
    w = np.zeros(8)
    w[3] = 1.0
    sel = T.ColorfulSelection([1, 2, 3, 0, 1, 2, 3, 0], w)
    assert np.array_equal(T.evaluate_L(tm, sel), tm.column(3, 0))


def test_selection_validation():
    with pytest.raises(InvalidParameterError):
        T.ColorfulSelection([0, 1], [0.5, 0.6])
    with pytest.raises(InvalidParameterError):
        T.ColorfulSelection([0, 1], [1.5, -0.5])
