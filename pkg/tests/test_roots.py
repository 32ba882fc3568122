import numpy as np
import pytest
import scipy.linalg

from e7_forge.errors import NotClosed, NotCommuting, WrongType
from e7_forge.generators import from_dense
from e7_forge.rep56 import SPLIT_TORUS, evi_m7
from e7_forge.roots import (E7_CARTAN, E7_HIGHEST, F4_HIGHEST, SPLIT_SIMPLE_NAMES, bourbaki_e7_order,
                            cartan_matrix, classify_e7, commutant_evi, commutant_ideals,
                            extract_roots, f4_order, find_simple, fundamental_weights, in_span,
                            lex_positive, restricted_roots_evi, split_root, split_roots_closed_form)


@pytest.fixture(scope="module")
def split_roots(split, split_sc):
    return extract_roots(split, SPLIT_TORUS, sc=split_sc)


@pytest.fixture(scope="module")
def evi_commutant(evi, evi_sc):
    return commutant_evi(evi, sc=evi_sc)


def test_lex_positive():
    roots = np.array([[1.0, 0.0], [0.0, -1.0], [-1.0, 1e-9]])
    assert lex_positive(roots).tolist() == [True, False, False]


def test_find_simple_a2():
    roots = np.array([[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]], dtype=float)
    positive = np.array([True, True, True, False, False, False])
    assert find_simple(roots, positive) == [0, 1]


def test_cartan_and_weights_a2():
    s = np.array([[np.sqrt(2.0), 0.0], [-np.sqrt(2.0) / 2, np.sqrt(6.0) / 2]])
    assert cartan_matrix(s).tolist() == [[2, -1], [-1, 2]]
    w = fundamental_weights(s)
    assert np.allclose(s @ w.T, np.eye(2))


def test_bourbaki_order():
    assert bourbaki_e7_order(E7_CARTAN) == list(range(7))
    a7 = 2 * np.eye(7, dtype=int) - np.eye(7, k=1, dtype=int) - np.eye(7, k=-1, dtype=int)
    with pytest.raises(WrongType):
        bourbaki_e7_order(a7)


def test_f4_order_rejects_equal_lengths():
    with pytest.raises(WrongType):
        f4_order(np.eye(4))


def test_split_root_names():
    assert np.linalg.norm(split_root("12")) == pytest.approx(np.sqrt(2.0))
    assert np.linalg.norm(split_root("1234")) == pytest.approx(np.sqrt(2.0))
    with pytest.raises(ValueError):
        split_root("123")


def test_closed_form_roots():
    names, roots = split_roots_closed_form()
    assert len(names) == 63
    assert roots.shape == (63, 7)
    assert np.allclose(np.einsum("ij,ij->i", roots, roots), 2.0)


def test_split_roots(split_roots):
    assert len(split_roots) == 126
    assert split_roots.rank == 7
    assert split_roots.zero_dim == 7
    assert split_roots.multiplicity_histogram() == {1: 126}
    assert split_roots.cartan == ["D_1", "D_2", "D_3", "D_4", "D_5", "D_6", "D_7"]


def test_split_roots_match_closed_form(split_roots):
    _, closed = split_roots_closed_form()
    expected = np.concatenate([closed, -closed])
    for root in split_roots.roots:
        assert np.min(np.max(np.abs(expected - root), axis=1)) < 1e-8


def test_split_is_e7(split_roots):
    report = classify_e7(split_roots)
    assert report["cartan"] == E7_CARTAN.tolist()
    assert report["highest_coefficients"] == E7_HIGHEST
    assert report["duality_residual"] < 1e-10
    assert report["norm_residual"] < 1e-8
    assert report["named_residual"] < 1e-8
    assert "Root Count     : 126" in report["datum"].get_as_string()


def test_classify_rejects_wrong_simple_names(split_roots):
    with pytest.raises(WrongType):
        classify_e7(split_roots, named=tuple(reversed(SPLIT_SIMPLE_NAMES)))
    assert classify_e7(split_roots, named=None)["named_residual"] is None


def test_extract_roots_rejects_non_commuting(split, split_sc):
    with pytest.raises(NotCommuting):
        extract_roots(split, [0, 1], sc=split_sc)


def test_evi_restricted_roots(evi, evi_sc):
    rd = restricted_roots_evi(evi, sc=evi_sc)
    assert rd.metadata["type"] == "F4"
    assert rd.multiplicity_histogram() == {1: 24, 4: 24}
    assert rd.highest_coefficients() == F4_HIGHEST
    assert rd.zero_dim == 13


def test_evi_commutant(evi_commutant):
    assert len(evi_commutant) == 9
    coeffs = evi_commutant.metadata["coefficients"]
    assert np.allclose(coeffs @ coeffs.T, np.eye(9))
    assert in_span(evi_m7(), coeffs) < 1e-8


def test_evi_commutant_ideals(evi_commutant, evi):
    six, three = commutant_ideals(evi_commutant, evi)
    assert len(six) == 6
    assert len(three) == 3
    assert six.metadata["residual"] < 1e-8


def test_commutant_ideals_reject_open_subspace(evi_commutant, evi):
    coeffs = evi_commutant.metadata["coefficients"]
    f4 = set(evi.metadata["f4_members"])
    outside = [k for k in range(len(evi)) if k not in f4]
    inner = scipy.linalg.null_space(coeffs[:, outside].T, rcond=1e-10)
    rest = scipy.linalg.null_space(inner.T)
    rows = np.vstack([inner.T @ coeffs, rest.T @ coeffs])
    # tilt two su(2) rows toward compact generators outside F4 and the commutant
    free = [k for k in evi.compact_indices if k not in f4]
    weight = np.linalg.norm(coeffs[:, free], axis=0)
    j1, j2 = (free[k] for k in np.argsort(weight)[:2])
    rows[6, j1] += 1.0
    rows[7, j2] += 1.0
    mats = np.tensordot(rows, evi.to_float().dense(), axes=1)
    bent = from_dense("evi-commutant", mats, metadata={"coefficients": rows})
    with pytest.raises(NotClosed):
        commutant_ideals(bent, evi)


def test_in_span():
    rows = np.eye(3)[:2]
    assert in_span([1.0, 2.0, 0.0], rows) == 0.0
    assert in_span([0.0, 0.0, 3.0], rows) == pytest.approx(3.0)
