import math

import numpy as np
import pytest

from orbitpart import groups as gc
from orbitpart.catalog import cyclic_rotation, nonfaithful_cyclic, rotation2
from orbitpart.errors import (
    DegenerateRepresentationError,
    InvalidGroupError,
    InvalidMatrixError,
    InvalidOrderError,
    NotFiniteError,
    PreconditionError,
)

from conftest import entry


def test_cyclic_group_basics():
    G = gc.cyclic_group(1)
    assert G.order == 1 and G.identity == 0
    G4 = gc.cyclic_group(4)
    assert list(G4.inv) == [0, 3, 2, 1]
    assert gc.cyclic_group(12).order == 12
    with pytest.raises(InvalidOrderError):
        gc.cyclic_group(0)


def test_direct_product_z3_z2_is_cyclic():
    G = gc.direct_product(gc.cyclic_group(3), gc.cyclic_group(2))
    assert G.order == 6

    def order_of(g):
        k, x = 1, g
        while x != G.identity:
            x = G.mul[x, g]
            k += 1
        return k

    assert max(order_of(g) for g in range(6)) == 6


def test_klein_four():
    V = gc.direct_product(gc.cyclic_group(2), gc.cyclic_group(2))
    assert V.order == 4
    assert all(V.inv[g] == g for g in range(4))


def test_bad_table_rejected():
    with pytest.raises(InvalidGroupError):
        gc.FiniteGroup.from_table([[0, 1], [1, 1]])
    # Latin square without associativity
    L = np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    with pytest.raises(InvalidGroupError):
        gc.FiniteGroup.from_table(L)


def test_generators_closure():
    G, rep = gc.group_from_generators([np.eye(3)])
    assert G.order == 1
    G5, rep5 = gc.group_from_generators([rotation2(2 * math.pi / 5)])
    assert G5.order == 5 and rep5.dim == 2
    assert np.array_equal(rep5.mats[0], np.eye(2))


def test_octahedral_generators_close_to_24():
    a = np.array([[0.0, 0, 1], [1, 0, 0], [0, 1, 0]])
    b = np.array([[1.0, 0, 0], [0, 0, -1], [0, 1, 0]])
    G, _ = gc.group_from_generators([a, b])
    assert G.order == 24


def test_generators_errors():
    with pytest.raises(NotFiniteError):
        gc.group_from_generators([rotation2(1.0)], cap=50)
    with pytest.raises(InvalidMatrixError):
        gc.group_from_generators([np.array([[2.0, 0], [0, 1]])])


def test_kernel():
    assert gc.kernel(cyclic_rotation(5).rep) == [0]
    assert gc.kernel(gc.trivial_rep(gc.cyclic_group(4), 2)) == [0, 1, 2, 3]
    # rho(k) = I exactly when 4 | k
    assert gc.kernel(nonfaithful_cyclic(12, 4).rep) == [0, 4, 8]


def test_fixed_projector():
    assert np.abs(gc.fixed_projector(cyclic_rotation(3).rep)).max() <= 1e-10
    assert np.allclose(gc.fixed_projector(gc.trivial_rep(gc.cyclic_group(3), 2)), np.eye(2))
    assert np.abs(gc.fixed_projector(entry("prism:3").rep)).max() <= 1e-10


def test_basis_W_dimensions():
    assert gc.basis_W(cyclic_rotation(3).rep).dim == 2
    assert gc.basis_W(entry("Q8").rep).dim == 24
    G2 = gc.cyclic_group(2)
    sign = gc.OrthogonalRepresentation(G2, 1, np.array([[[1.0]], [[-1.0]]]))
    assert gc.basis_W(sign).dim == 0


def test_basis_W_requires_no_trivial_subrep():
    with pytest.raises(PreconditionError):
        gc.basis_W(gc.trivial_rep(gc.cyclic_group(3), 2))


def test_decomposition_dimensions():
    rep = cyclic_rotation(3).rep
    assert gc.basis_V_rho(rep).dim == 2
    assert gc.basis_W_rho(rep).dim == 4
    assert gc.verify_decomposition(rep)
    triv = gc.trivial_rep(gc.cyclic_group(1), 3)
    assert gc.basis_V_rho(triv).dim == 3
    assert gc.basis_W_rho(triv).dim == 0
    prism = entry("prism:4").rep
    assert gc.basis_W_rho(prism).dim == 3 * (8 - 1)
    assert all(gc.decomposition_checks(prism).values())


def test_orbit_stabilizer_affine_dim():
    rep = cyclic_rotation(4).rep
    assert gc.stabilizer(rep, [0, 0]) == [0, 1, 2, 3]
    assert gc.affine_dim_orbit(rep, [0, 0]) == 0
    O = gc.orbit(rep, [1, 0])
    assert np.allclose(O, [[1, 0], [0, 1], [-1, 0], [0, -1]], atol=1e-15)
    assert gc.stabilizer(rep, [1, 0]) == [0]
    assert gc.affine_dim_orbit(rep, [1, 0]) == 2


def test_q8_orbit_is_cross_polytope(rng):
    u = rng.standard_normal(4)
    O = gc.orbit(entry("Q8").rep, u)
    Gm = O @ O.T
    n2 = u @ u
    # each vertex is orthogonal to all but itself and its antipode
    for g in range(8):
        row = np.sort(np.abs(Gm[g]) / n2)
        assert np.allclose(row[:6], 0, atol=1e-12)
        assert np.allclose(row[6:], 1, atol=1e-12)


def test_max_orbit_dim():
    for r in (3, 5, 8):
        assert gc.max_orbit_dim(cyclic_rotation(r).rep) == 2
    assert gc.max_orbit_dim(gc.trivial_rep(gc.cyclic_group(3), 2)) == 0
    assert gc.max_orbit_dim(entry("antiprism:4").rep) == 3


def test_character_norm_values():
    assert gc.character_norm(gc.trivial_rep(gc.cyclic_group(1), 1)) == pytest.approx(1.0, abs=1e-12)
    assert gc.character_norm(cyclic_rotation(5).rep) == pytest.approx(2.0, abs=1e-12)
    assert gc.character_norm(entry("dihedral:4").rep) == pytest.approx(1.0, abs=1e-12)


def test_degenerate_representation_error_type():
    assert issubclass(DegenerateRepresentationError, ValueError)


def test_act_on_blocks_is_a_left_action(rng):
    G = gc.cyclic_group(5)
    w = rng.standard_normal(5 * 2)
    for h in range(5):
        for k in range(5):
            lhs = gc.act_on_blocks(G, h, gc.act_on_blocks(G, k, w, 2), 2)
            rhs = gc.act_on_blocks(G, G.mul[h, k], w, 2)
            assert np.array_equal(lhs, rhs)
