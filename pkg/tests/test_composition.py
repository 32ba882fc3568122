import numpy as np

from e7_forge.composition import (FANO_LINES, H_UNITS, Octonion, Quaternion, associator, commutator,
                                  inner, left_matrix, oct_derivation, oct_mul, quat_derivation,
                                  quat_mul, right_matrix)


def e(a, scale=1):
    return Octonion.unit(a, scale)


def random_octonion(rng, imaginary=False):
    coords = rng.normal(size=8).tolist()
    if imaginary:
        coords[0] = 0.0
    return Octonion(coords)


def random_quaternion(rng):
    return Quaternion([int(x) for x in rng.integers(-5, 6, size=4)])


def close(x, y, tol=1e-12):
    return np.allclose(np.array(x.coords, dtype=float), np.array(y.coords, dtype=float), atol=tol)


def test_fano_products():
    assert oct_mul(e(1), e(2)) == e(3)
    assert oct_mul(e(2), e(1)) == e(3, -1)
    for a, b, c in FANO_LINES:
        assert oct_mul(e(a), e(b)) == e(c)
        assert oct_mul(e(b), e(c)) == e(a)
        assert oct_mul(e(c), e(a)) == e(b)


def test_imaginary_units_square_to_minus_one():
    for a in range(1, 8):
        assert oct_mul(e(a), e(a)) == e(0, -1)


def test_associator_of_units():
    value = associator(e(1), e(2), e(4))
    assert value == e(7, 2)
    assert associator(e(2), e(1), e(4)) == -value


def test_quaternionic_triples_associate(rng):
    for _ in range(50):
        x, y, z = (Octonion([int(v) for v in rng.integers(-4, 5, size=4)] + [0, 0, 0, 0]) for _ in range(3))
        assert associator(x, y, z).is_zero()


def test_associator_alternating(rng):
    for _ in range(50):
        x, y, z = (random_octonion(rng) for _ in range(3))
        assert close(associator(x, y, z), -associator(y, x, z))
        assert close(associator(x, y, z), associator(y, z, x))
        assert close(associator(x, x, y), Octonion.zero())


def test_norm_is_multiplicative(rng):
    for _ in range(100):
        x, y = random_octonion(rng), random_octonion(rng)
        assert np.isclose(oct_mul(x, y).norm2(), x.norm2() * y.norm2(), rtol=1e-12)


def test_inner_product_on_units():
    for a in range(8):
        for b in range(8):
            assert inner(e(a), e(b)) == (1 if a == b else 0)


def test_inner_is_real_part_of_conjugate_product(rng):
    for _ in range(50):
        x, y = random_octonion(rng), random_octonion(rng)
        assert np.isclose(inner(x, y), (x.conj() * y).re)


def test_quaternion_relations():
    h1, h2, h3 = H_UNITS
    assert quat_mul(h1, h2) == h3
    assert quat_mul(h2, h3) == h1
    assert quat_mul(h3, h1) == h2
    assert commutator(h1, h2) == Quaternion.unit(3, 2)


def test_quaternion_derivation_values():
    h1, h2, h3 = H_UNITS
    d = quat_derivation(h1, h2)
    assert d(h3).is_zero()
    assert d(h1) == Quaternion.unit(2, 4)
    for c in H_UNITS:
        assert d(c) == commutator(commutator(h1, h2), c)


def test_quaternion_derivation_leibniz(rng):
    h1, h2, _ = H_UNITS
    d = quat_derivation(h1, h2)
    for _ in range(50):
        x, y = random_quaternion(rng), random_quaternion(rng)
        assert d(x * y) == d(x) * y + x * d(y)


def test_octonion_derivation_identity(rng):
    for _ in range(50):
        a, b, c = (random_octonion(rng, imaginary=True) for _ in range(3))
        expected = commutator(commutator(a, b), c) - 3 * associator(a, b, c)
        assert close(oct_derivation(a, b)(c), expected, 1e-10)


def test_octonion_derivation_leibniz(rng):
    for _ in range(30):
        a, b = random_octonion(rng, imaginary=True), random_octonion(rng, imaginary=True)
        x, y = random_octonion(rng), random_octonion(rng)
        d = oct_derivation(a, b)
        assert close(d(x * y), d(x) * y + x * d(y), 1e-9)


def test_inner_product_identity(rng):
    for _ in range(50):
        a, b, c = (random_octonion(rng, imaginary=True) for _ in range(3))
        lhs = b * inner(c, a) - a * inner(c, b)
        rhs = commutator(commutator(b, a), c) * -0.25 + associator(c, b, a) * 0.5
        assert close(lhs, rhs, 1e-10)


def test_left_and_right_matrices(rng):
    x, y = random_octonion(rng), random_octonion(rng)
    yv = np.array(y.coords)
    assert np.allclose(np.array(left_matrix(x), dtype=float) @ yv, np.array((x * y).coords))
    assert np.allclose(np.array(right_matrix(x), dtype=float) @ yv, np.array((y * x).coords))
