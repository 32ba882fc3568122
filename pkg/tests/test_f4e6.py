from fractions import Fraction

import numpy as np

from e7_forge.f4e6 import N_E6, N_F4, TRACE_NORM, f4_structure, f4e6_checks, mixed_alpha
from e7_forge.scalars import I, SQRT6

J27 = 26


def test_counts(exact_basis):
    assert len(exact_basis.C) == N_F4 == 52
    assert len(exact_basis.Ctilde) == 26
    assert len(exact_basis.A) == 27
    assert len(exact_basis.e6) == N_E6 == 78


def test_exact_identities(exact_basis):
    assert exact_basis.exact
    for name, residual in f4e6_checks(exact_basis).items():
        assert residual <= 1e-12, name


def test_float_identities(float_basis):
    for name, residual in f4e6_checks(float_basis).items():
        assert residual <= 1e-10, name


def test_f4_antisymmetric_and_kill_identity_direction(exact_basis):
    for m in exact_basis.C:
        assert (m + m.T).is_zero()
        assert all(r != J27 and c != J27 for (r, c) in m.entries)


def test_normalization(exact_basis):
    for k in (0, 17, 51, 52, 77):
        phi = exact_basis.phi(k)
        assert phi.trace_product(phi) == -TRACE_NORM
    assert exact_basis.phi(3).trace_product(exact_basis.phi(60)) == 0


def test_ctilde_row_27(exact_basis):
    target = -I * SQRT6 * Fraction(1, 3)
    for a in (0, 7, 16, 25):
        m = exact_basis.Ctilde[a]
        for b in range(26):
            assert m.get(J27, b) == (target if a == b else 0)


def test_ctilde_traceless_block_symmetric(exact_basis):
    for m in exact_basis.Ctilde:
        for (r, c), v in m.items():
            if r < J27 and c < J27:
                assert m.get(c, r) == v


def test_freudenthal_matrices(exact_basis):
    a_mats = exact_basis.A
    for a in range(26):
        for b in range(26):
            expected = -SQRT6 * Fraction(1, 6) if a == b else 0
            assert a_mats[a].get(b, J27) == expected
        assert a_mats[a].get(J27, J27) == 0
    assert a_mats[J27].get(J27, J27) == SQRT6 * Fraction(1, 3)


def test_cubic_tensor_symmetric(exact_basis):
    cubic = exact_basis.cubic
    for (a, b, c), v in list(cubic.items())[:2000]:
        for key in ((b, a, c), (c, b, a), (a, c, b), (b, c, a)):
            assert cubic[key] == v


def test_freudenthal_matrices_are_three_halves_cubic(exact_basis):
    for (a, b, c), v in list(exact_basis.cubic.items())[:2000]:
        assert exact_basis.A[a].get(b, c) == v * Fraction(3, 2)


def test_f4_structure_closes(float_basis):
    structure = f4_structure(float_basis)
    assert structure
    c = [m.to_dense() for m in float_basis.C]
    for (i, j), coeffs in list(structure.items())[:100]:
        recon = sum(v * c[k] for k, v in coeffs.items())
        assert np.max(np.abs(c[i] @ c[j] - c[j] @ c[i] - recon)) < 1e-10


def test_mixed_alpha_in_f4_span(float_basis):
    alpha = mixed_alpha(float_basis)
    assert alpha
    for (a, b), coeffs in alpha.items():
        assert all(0 <= k < N_F4 for k in coeffs)

