import numpy as np
import pytest

from e7_forge.errors import DimensionMismatch, NotClosed, NotSubalgebra
from e7_forge.generators import (GeneratorSet, closure_residual, from_dense, killing_signature,
                                 structure_constants, weyl_trick)
from e7_forge.rep133 import e6_u1_indices
from e7_forge.sparse import SparseMatrix


def su2():
    # i sigma_k / 2: [X_a, X_b] = -eps_abc X_c
    mats = np.array([
        [[0, 1j], [1j, 0]],
        [[0, 1], [-1, 0]],
        [[1j, 0], [0, -1j]],
    ]) / 2
    return from_dense("su2", mats, ["X_1", "X_2", "X_3"])


def test_generator_set_basics():
    g = su2()
    assert len(g) == 3
    assert g.rep_dim == 2
    assert not g.exact
    assert g.dense().shape == (3, 2, 2)
    assert g.subset([0, 2]).labels == ["X_1", "X_3"]


def test_shape_checks():
    with pytest.raises(DimensionMismatch):
        GeneratorSet("bad", 3, [SparseMatrix.identity(2)])
    with pytest.raises(DimensionMismatch):
        GeneratorSet("bad", 2, [SparseMatrix.identity(2)], labels=["a", "b"])


def test_su2_structure_constants():
    sc = structure_constants(su2())
    assert sc.residual < 1e-14
    assert sc.tensor[0, 1, 2] == pytest.approx(-1.0)
    assert sc.tensor[1, 2, 0] == pytest.approx(-1.0)
    assert sc.tensor[1, 0, 2] == pytest.approx(1.0)
    assert sc.antisymmetry_residual() < 1e-14


def test_su2_killing_form():
    sc = structure_constants(su2())
    assert np.allclose(sc.killing(), -2 * np.eye(3))
    assert killing_signature(sc) == (0, 3)
    assert killing_signature(su2()) == (0, 3)


def test_not_closed():
    mats = su2().dense()[:2]
    with pytest.raises(NotClosed) as info:
        structure_constants(from_dense("half", mats))
    assert info.value.residual > 0.1


def test_weyl_trick_to_sl2():
    g = weyl_trick(su2(), [2])
    assert g.metadata["weyl_compact"] == [2]
    assert killing_signature(g) == (2, 1)


def test_weyl_trick_identity():
    g = su2()
    same = weyl_trick(g, range(3))
    assert np.array_equal(same.dense(), g.dense())


def test_weyl_trick_rejects_non_subalgebra():
    with pytest.raises(NotSubalgebra):
        weyl_trick(su2(), [0, 1])


def test_closure_residual():
    mats = su2().dense()
    assert closure_residual(list(mats)) < 1e-14
    assert closure_residual(list(mats[:2])) > 0.1


def test_ad_matrices():
    sc = structure_constants(su2())
    ad = sc.ad_matrices()
    assert np.allclose(ad[0], sc.ad(0))
    # ad is a representation: [ad X_1, ad X_2] = -ad X_3
    assert np.allclose(ad[0] @ ad[1] - ad[1] @ ad[0], -ad[2])


def test_tits_constants_match_adjoint(adjoint_sc):
    assert adjoint_sc.residual < 1e-10
    assert killing_signature(adjoint_sc) == (0, 133)


@pytest.mark.slow
def test_real_form_signatures(tits, split, evi):
    assert killing_signature(weyl_trick(tits.to_float(), e6_u1_indices())) == (54, 79)
    assert killing_signature(split.real_form()) == (70, 63)
    assert killing_signature(evi.real_form()) == (64, 69)
