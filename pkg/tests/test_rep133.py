import numpy as np
import pytest

from e7_forge.generators import structure_constants
from e7_forge.rep133 import (DIM, J_OFFSET, MIXED_OFFSET, build_adjoint_133, coefficient_scan,
                             constants_to_tensor, e6_u1_indices, exhaustive_triples, jacobi_check,
                             jacobi_residual, jacobi_triples, labels_133, mixed_index,
                             tits_constants_tensor, tits_structure_constants)

H = range(0, J_OFFSET)
J = range(J_OFFSET, MIXED_OFFSET)


@pytest.fixture(scope="module")
def unit_scale(float_basis):
    return constants_to_tensor(tits_structure_constants(float_basis, h_scale=1.0))


def test_layout():
    assert len(labels_133()) == DIM
    assert labels_133()[0] == "Psi_1"
    assert mixed_index(0, 0) == 55
    assert mixed_index(2, 25) == 132
    assert len(e6_u1_indices()) == 79


def test_h_algebra_at_unit_scale(unit_scale):
    assert unit_scale[0, 1, 2] == pytest.approx(2.0)
    assert unit_scale[1, 2, 0] == pytest.approx(2.0)
    assert unit_scale[1, 0, 2] == pytest.approx(-2.0)


def test_default_scale(adjoint_sc):
    assert adjoint_sc.tensor[0, 1, 2] == pytest.approx(2 / np.sqrt(6.0))


def test_h_commutes_with_f4(unit_scale):
    for h in H:
        for j in J:
            assert np.max(np.abs(unit_scale[h, j])) == 0.0


def test_adjoint_shape(adjoint):
    assert len(adjoint) == DIM
    assert adjoint.rep_dim == DIM
    assert adjoint.labels == labels_133()


def test_adjoint_matrices_are_ad(adjoint, float_basis):
    c = tits_constants_tensor(float_basis).tensor
    m = adjoint.dense()
    for a in (0, 4, 60, 120):
        assert np.allclose(m[a].real, c[a].T)


def test_structure_constants_solve_back(adjoint_sc, float_basis):
    c = tits_constants_tensor(float_basis).tensor
    assert np.max(np.abs(adjoint_sc.tensor - c)) < 1e-9


def test_antisymmetry(float_basis):
    sc = tits_constants_tensor(float_basis)
    assert sc.antisymmetry_residual() < 1e-15


def test_jacobi_on_low_block(float_basis):
    sc = tits_constants_tensor(float_basis)
    worst, _ = jacobi_check(sc, jacobi_triples(DIM, n_random=2000, low_block=6, seed=1))
    assert worst < 1e-9


def test_jacobi_residual_reports_triple():
    c = np.zeros((3, 3, 3))
    worst, triple = jacobi_residual(c, np.array([[0, 1, 2]]))
    assert worst == 0.0
    assert triple == (0, 1, 2)
    assert jacobi_residual(c, np.zeros((0, 3), dtype=int)) == (0.0, None)


def test_jacobi_detects_bad_bracket():
    # [e0, e1] = e1, [e0, e2] = e1, [e1, e2] = e0 violates Jacobi
    c = np.zeros((3, 3, 3))
    c[0, 1, 1], c[1, 0, 1] = 1, -1
    c[0, 2, 1], c[2, 0, 1] = 1, -1
    c[1, 2, 0], c[2, 1, 0] = 1, -1
    worst, triple = jacobi_check(c, exhaustive_triples(3))
    assert worst > 0.5
    assert triple == (0, 1, 2)


def test_triples_are_seeded():
    a = jacobi_triples(DIM, n_random=50, low_block=2, seed=7)
    b = jacobi_triples(DIM, n_random=50, low_block=2, seed=7)
    assert np.array_equal(a, b)
    assert len(a) == 8 + 50


def test_coefficient_scan(float_basis):
    results = coefficient_scan(float_basis, cases=((1.0, 4.0, 1.0), (1.0, 4.0, 1.01)), n_random=500)
    (_, _, _, good), (_, _, _, bad) = results
    assert good < 1e-9
    assert bad > 1e-6


def test_exact_adjoint_is_exact(exact_basis):
    g = build_adjoint_133(exact_basis)
    assert g.exact
    assert g.metadata["scalar"] == "exact"


@pytest.mark.slow
def test_full_jacobi_sweep(float_basis):
    sc = tits_constants_tensor(float_basis)
    worst, triple = jacobi_check(sc, jacobi_triples(DIM, n_random=100_000, seed=0))
    assert worst < 1e-9, triple


@pytest.mark.slow
def test_solved_constants_are_consistent(adjoint):
    sc = structure_constants(adjoint.to_float())
    assert sc.residual < 1e-10
    assert sc.antisymmetry_residual() < 1e-10
