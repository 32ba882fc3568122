import numpy as np
import pytest

from e7_forge.errors import DimensionMismatch, NotUnitary, OutOfRange
from e7_forge.euler import (TITS_FORWARD, TITS_INVERSE, GroupElement, SplitHaarSampler, assemble,
                            chebyshev_center, haar_sample_split, haar_su8, integrate_tits_density,
                            resolve_tits_bounds, root_density, split_alcove_points,
                            split_density_determinant, su8_embed, tits_density, tits_density_xyz,
                            tits_ranges, tits_to_xyz, xyz_to_tits)
from e7_forge.measures import tits_weight_integral
from e7_forge.rep56 import DIM


def test_tits_coordinate_maps():
    assert np.allclose(TITS_FORWARD @ TITS_INVERSE, np.eye(3))
    x52, x53, x54 = xyz_to_tits(3.0, 2.0, 1.0)
    assert np.allclose(tits_to_xyz(x52, x53, x54), (3.0, 2.0, 1.0))


def test_tits_jacobian(tits_chart):
    assert abs(np.linalg.det(TITS_INVERSE)) == pytest.approx(tits_chart.metadata["jacobian_xyz"])
    assert tits_chart.metadata["jacobian_xyz"] == pytest.approx(1 / (2 * np.sqrt(2.0)))


def test_tits_density():
    assert tits_density(0.0, 0.0, 0.0) == 0.0
    x, y, z = 2.5, 1.5, 0.5
    assert tits_density(*xyz_to_tits(x, y, z)) == pytest.approx(tits_density_xyz(x, y, z))
    assert tits_density_xyz(x, y, z) > 0


def test_tits_ranges():
    ranges = tits_ranges()
    assert len(ranges) == 133
    assert ranges[0]["lower_value"] == 0.0
    assert ranges[0]["upper_value"] == pytest.approx(np.sqrt(2.0 / 3.0) * np.pi)
    assert ranges[132]["upper_value"] == pytest.approx(4 * np.pi)
    # coupled to x26
    assert ranges[26]["lower_value"] is None
    assert ranges[51]["upper_value"] is None
    assert ranges[54]["upper_value"] == pytest.approx(2 * np.sqrt(2.0 / 3.0) * np.pi)
    assert ranges[5]["lower_value"] == pytest.approx(-np.pi / 2)


def test_resolve_tits_bounds():
    ranges = tits_ranges()
    values = np.zeros(133)
    values[25] = np.sqrt(3.0)
    values[79] = 2 * np.sqrt(3.0)
    bounds = resolve_tits_bounds(ranges, values)
    assert bounds[26] == pytest.approx((-1.0, 1.0))
    assert bounds[80] == pytest.approx((-2.0, 2.0))
    assert bounds[51] == (None, None)
    assert bounds[1] == pytest.approx((0.0, 2 * np.pi))
    with pytest.raises(DimensionMismatch):
        resolve_tits_bounds(ranges, np.zeros(7))


def test_integrate_tits_density():
    assert integrate_tits_density() == pytest.approx(float(tits_weight_integral()), rel=1e-6)


def test_tits_chart(tits_chart):
    assert tits_chart.rank == 3
    assert tits_chart.coords == ["x52", "x53", "x54"]
    assert tits_chart.contains(xyz_to_tits(3.0, 2.0, 1.0))
    assert not tits_chart.contains(xyz_to_tits(3.0, 1.0, 2.0))
    center, radius = chebyshev_center(tits_chart)
    assert radius > 0
    assert tits_chart.contains(center)


def test_assemble_identity(tits_chart):
    g = assemble(None, np.zeros(3), None, tits_chart)
    assert np.allclose(g.matrix, np.eye(DIM))
    assert g.trace() == pytest.approx(DIM)


def test_assemble_rejects_out_of_range(split_chart):
    center, _ = chebyshev_center(split_chart)
    with pytest.raises(OutOfRange):
        assemble(None, -center, None, split_chart)


def test_group_element_product(tits_chart):
    a = GroupElement(tits_chart.torus_element([0.3, 0.1, -0.2]), "tits")
    b = a @ a
    assert b.unitarity_residual() < 1e-12
    assert np.allclose(b.matrix, tits_chart.torus_element([0.6, 0.2, -0.4]))


def test_root_density():
    density = root_density([[1.0, 0.0]], [2])
    assert density([np.pi / 2, 0.0]) == pytest.approx(1.0)
    assert density(np.array([[np.pi / 6, 0.0], [0.0, 1.0]])) == pytest.approx([0.25, 0.0])


def test_su8_embed(rng):
    assert np.allclose(su8_embed(np.eye(8)).matrix, np.eye(DIM))
    u, v = haar_su8(rng), haar_su8(rng)
    assert abs(np.linalg.det(u) - 1) < 1e-12
    gu, gv = su8_embed(u), su8_embed(v)
    assert gu.unitarity_residual() < 1e-12
    assert np.allclose((gu @ gv).matrix, su8_embed(u @ v).matrix)


def test_su8_embed_diagonal_phases():
    phases = np.exp(1j * np.arange(8) * 0.25)
    phases /= np.linalg.det(np.diag(phases)) ** (1.0 / 8.0)
    g = su8_embed(np.diag(phases)).matrix
    assert np.allclose(g, np.diag(np.diag(g)))
    # e_1 ^ e_2 picks up the product of the first two phases
    assert g[0, 0] == pytest.approx(phases[0] * phases[1])
    assert g[28, 28] == pytest.approx(np.conj(phases[0] * phases[1]))


def test_su8_embed_rejects():
    with pytest.raises(DimensionMismatch):
        su8_embed(np.eye(4))
    with pytest.raises(NotUnitary):
        su8_embed(2 * np.eye(8))
    with pytest.raises(NotUnitary):
        su8_embed(np.diag([-1.0] + [1.0] * 7))


def test_split_chart(split_chart):
    assert split_chart.rank == 7
    assert len(split_chart.roots) == 63
    assert split_chart.density(np.zeros(7)) == 0.0
    center, radius = chebyshev_center(split_chart)
    assert radius > 0
    assert split_chart.density(center) > 0


def test_split_density_matches_determinant(split_chart, split):
    points = split_alcove_points(split_chart, 100, np.random.default_rng(0))
    assert np.all(split_chart.inequalities[:-1] @ points.T > 0)
    for y in points:
        f = float(split_chart.density(y))
        assert abs(split_density_determinant(y, split) - f) <= 1e-8 * f


def test_evi_chart(evi_chart):
    assert evi_chart.rank == 4
    mult = evi_chart.multiplicities
    assert len(mult) == 24
    assert int(np.sum(mult == 1)) == 12
    assert int(np.sum(mult == 4)) == 12
    assert len(evi_chart.metadata["torus_labels"]) == 4
    center, radius = chebyshev_center(evi_chart)
    assert radius > 0
    assert evi_chart.density(center) > 0


def test_su8_chart(su8_chart, split_chart):
    assert su8_chart.construction == "split-su8"
    assert su8_chart.rank == 7
    assert su8_chart.metadata["coord_map"].shape == (7, 7)
    assert np.array_equal(su8_chart.inequalities, split_chart.inequalities)


@pytest.mark.slow
def test_haar_sampler_is_deterministic(su8_chart):
    a = haar_sample_split(seed=5, n=2, chart=su8_chart)
    b = haar_sample_split(seed=5, n=2, chart=su8_chart)
    for x, y in zip(a, b):
        assert np.array_equal(x.matrix, y.matrix)
        assert x.unitarity_residual() < 1e-8


@pytest.mark.slow
def test_haar_sampler_coords_in_alcove(su8_chart):
    sampler = SplitHaarSampler(su8_chart, seed=1)
    for _ in range(5):
        y = sampler.draw_coords()
        assert su8_chart.contains(y, strict=False)
    assert 0 < sampler.acceptance_rate <= 1
