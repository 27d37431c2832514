"""Property-based checks of the structural invariants."""
import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from orbitpart import catalog
from orbitpart import groups as gc
from orbitpart import solver as S
from orbitpart import testmap as T

from conftest import entry

SMALL_KEYS = [
    "cyclic:3", "cyclic:4", "cyclic:7", "prism:3", "antiprism:2", "antiprism:4", "dihedral:4",
    "Q8", "tetrahedral", "permutahedron:3", "regular_perp:4", "nonfaithful:12:3",
]
ALL_KEYS = catalog.default_keys()

keys = st.sampled_from(SMALL_KEYS)
seeds = st.integers(0, 2**32 - 1)
SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@pytest.mark.parametrize("key", ALL_KEYS)
def test_structure_of_every_entry(key):
    e = entry(key)
    G = e.rep.group
    r = G.order
    for row in G.mul:
        assert sorted(row) == list(range(r))
    assert np.array_equal(G.mul[G.identity], np.arange(r))
    assert np.all(G.mul[np.arange(r), G.inv] == G.identity)
    ortho, hom = gc.representation_residuals(e.rep)
    assert ortho <= 1e-10 and hom <= 1e-10
    Pf = gc.fixed_projector(e.rep)
    assert np.abs(Pf @ Pf - Pf).max() <= 1e-9
    if r <= 60:
        W = gc.basis_W(e.rep)
        assert W.dim == e.d * (r - 2)
        B = W.basis.reshape(r, e.d, W.dim)
        assert np.abs(B.sum(axis=0)).max() <= 1e-9
        assert np.abs(np.einsum("gkl,gkm->lm", e.rep.mats, B)).max() <= 1e-9
        assert T.required_N(r, e.d) - 1 == e.d * (r - 2) + (r - 1)


@SETTINGS
@given(keys, seeds)
def test_W_is_invariant(key, seed):
    e = entry(key)
    W = gc.basis_W(e.rep)
    rng = np.random.default_rng(seed)
    h = int(rng.integers(e.r))
    w = W.basis @ rng.standard_normal(W.dim)
    # h acts by permuting blocks: (h.w)_g = w_{g h}
    v = gc.act_on_blocks(e.rep.group, h, w, e.d)
    assert np.linalg.norm(v - W.project(v)) <= 1e-8 * (1 + np.linalg.norm(v))


@SETTINGS
@given(keys, seeds)
def test_raw_testmap_equivariance(key, seed):
    e = entry(key)
    rng = np.random.default_rng(seed)
    cfg = T.Configuration(rng.standard_normal((3, e.d)))
    G = e.rep.group
    j = int(rng.integers(3))
    g, h = (int(x) for x in rng.integers(e.r, size=2))
    lhs = T.raw_F_column(e.rep, cfg, j, G.mul[g, G.inv[h]]).reshape(e.r, e.d)
    rhs = gc.act_on_blocks(G, h, T.raw_F_column(e.rep, cfg, j, g), e.d).reshape(e.r, e.d)
    assert np.abs(lhs - rhs).max() <= 1e-10
    rl = T.raw_R_column(e.r, G.mul[g, G.inv[h]])
    rr = gc.act_on_blocks(G, h, T.raw_R_column(e.r, g), 1)
    assert np.abs(rl - rr).max() <= 1e-15


@SETTINGS
@given(keys, seeds)
def test_zero_mean_and_affinity(key, seed):
    e = entry(key)
    rng = np.random.default_rng(seed)
    tm = T.build_testmap(e.rep, T.Configuration(rng.standard_normal((e.N_bound, e.d))))
    assert T.class_mean_residual(tm) <= 1e-9
    a = rng.integers(0, e.r, e.N_bound)
    t1, t2 = rng.random(e.N_bound), rng.random(e.N_bound)
    s1, s2 = T.ColorfulSelection(a, t1 / t1.sum()), T.ColorfulSelection(a, t2 / t2.sum())
    mix = 0.3 * s1.weights + 0.7 * s2.weights
    s3 = T.ColorfulSelection(a, mix / mix.sum())
    lhs = T.evaluate_L(tm, s3)
    rhs = 0.3 * T.evaluate_L(tm, s1) + 0.7 * T.evaluate_L(tm, s2)
    assert np.abs(lhs - rhs).max() <= 1e-12 * (1 + np.abs(tm.columns).max())


@SETTINGS
@given(st.integers(1, 12), st.integers(1, 10), seeds, st.floats(0.0, 3.0))
def test_min_norm_point_certificate(n, d, seed, shift):
    rng = np.random.default_rng(seed)
    P = rng.standard_normal((n, d)) + shift * rng.standard_normal(d)
    x, c = S.min_norm_point(P)
    assert S.certificate_margin(P, x) >= 0
    assert abs(c.sum() - 1) <= 1e-12 and c.min() >= 0


@SETTINGS
@given(keys, seeds)
def test_pivot_trace_monotone_and_sound(key, seed):
    e = entry(key)
    rng = np.random.default_rng(seed)
    tm = T.build_testmap(e.rep, T.Configuration(rng.standard_normal((e.N_bound, e.d))))
    cl = S.ColorClasses.from_testmap(tm)
    res = S.barany_onn_solve(cl, seed=seed)
    tr = res.trace
    assert np.all(np.diff(tr) <= 1e-12 * (1 + tr[:-1]))
    if res.converged:
        assert np.linalg.norm(T.evaluate_L(tm, res.selection)) <= S.DEFAULT_TOL


@SETTINGS
@given(st.sampled_from(["cyclic:5", "prism:3", "Q8"]), seeds)
def test_basis_independence(key, seed):
    """Residual at a zero does not depend on which orthonormal basis of W is used."""
    e = entry(key)
    rng = np.random.default_rng(seed)
    cfg = T.Configuration(rng.standard_normal((e.N_bound, e.d)))
    tm = T.build_testmap(e.rep, cfg)
    res = S.solve_with_restarts(S.ColorClasses.from_testmap(tm), seed=seed)
    Qm, _ = np.linalg.qr(rng.standard_normal((tm.dim_W, tm.dim_W)))
    other = gc.SubspaceBasis(tm.basis_W.ambient_dim, tm.basis_W.basis @ Qm, "W")
    tm2 = T.build_testmap_raw(e.rep, cfg, basis_W=other)
    a = np.linalg.norm(T.evaluate_L(tm, res.selection))
    b = np.linalg.norm(T.evaluate_L(tm2, res.selection))
    assert abs(a - b) <= 1e-9


@pytest.mark.parametrize("key", ["cyclic:5", "prism:4", "antiprism:3", "Q8", "tetrahedral", "octahedral"])
def test_stabilizer_equals_kernel_at_random_u(key):
    e = entry(key)
    rng = np.random.default_rng(7)
    K = gc.kernel(e.rep)
    for _ in range(100):
        assert gc.stabilizer(e.rep, rng.standard_normal(e.d)) == K
