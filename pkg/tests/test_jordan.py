from fractions import Fraction

import pytest

from e7_forge.composition import Octonion
from e7_forge.errors import NotTraceless
from e7_forge.jordan import (JordanMatrix, det_form, freudenthal, jordan_basis, jordan_mul, star,
                             trace_form)
from e7_forge.scalars import SQRT3, SQRT6


def frac(rng):
    return Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4)))


def random_jordan(rng, traceless=False):
    a, b, c = frac(rng), frac(rng), frac(rng)
    if traceless:
        c = -a - b
    off = [Octonion([frac(rng) for _ in range(8)]) for _ in range(3)]
    return JordanMatrix((a, b, c), off)


@pytest.fixture(scope="module")
def jb():
    return jordan_basis(exact=True)


def test_gram_is_twice_identity(jb):
    gram = jb.gram()
    for a in range(27):
        for b in range(27):
            assert gram[a][b] == (2 if a == b else 0)


def test_distinguished_elements(jb):
    assert jb[0] == JordanMatrix((1, -1, 0))
    third = SQRT3 * Fraction(1, 3)
    assert jb[17] == JordanMatrix((third, third, -2 * third))
    assert jb[26] == JordanMatrix.identity(SQRT6 * Fraction(1, 3))
    assert jb[0].trace() == 0 and jb[17].trace() == 0


def test_identity_square():
    one = JordanMatrix.identity(1)
    assert jordan_mul(one, one) == one


def test_diagonal_square():
    j1 = JordanMatrix((1, -1, 0))
    assert jordan_mul(j1, j1) == JordanMatrix((1, 1, 0))


def test_off_diagonal_product():
    x = JordanMatrix(off=[Octonion.unit(1), Octonion.zero(), Octonion.zero()])
    y = JordanMatrix(off=[Octonion.unit(2), Octonion.zero(), Octonion.zero()])
    # e1 conj(e2) + e2 conj(e1) = 0 on the diagonal
    product = jordan_mul(x, y)
    assert product.is_zero()


def test_jordan_product_commutes(rng):
    for _ in range(10):
        x, y = random_jordan(rng), random_jordan(rng)
        assert jordan_mul(x, y) == jordan_mul(y, x)
        assert trace_form(x, y) == trace_form(y, x)
        assert trace_form(x, y) == jordan_mul(x, y).trace()


def test_star_is_traceless_and_commutative(rng):
    for _ in range(10):
        x, y = random_jordan(rng, True), random_jordan(rng, True)
        assert star(x, y).trace() == 0
        assert star(x, y) == star(y, x)


def test_star_rejects_trace():
    with pytest.raises(NotTraceless):
        star(JordanMatrix.identity(1), JordanMatrix((1, -1, 0)))


def test_star_of_diagonal_basis_elements(jb):
    value = star(jb[0], jb[17])
    assert value.trace() == 0
    assert all(o.is_zero() for o in value.off)
    # diag(1,-1,0) o diag(1,1,-2)/sqrt3 = diag(1,-1,0)/sqrt3, orthogonal to the identity
    assert value == jb[0] * (SQRT3 * Fraction(1, 3))


def test_cubic_identity_on_traceless(rng):
    for _ in range(10):
        x = random_jordan(rng, True)
        square = jordan_mul(x, x)
        # X o X minus its trace part
        p = square - JordanMatrix.identity(square.trace() * Fraction(1, 3))
        assert star(x, p) == x * (trace_form(x, x) * Fraction(1, 6))
        cube = jordan_mul(x, square)
        lhs = cube - JordanMatrix.identity(trace_form(x, square) * Fraction(1, 3))
        assert lhs == x * (trace_form(x, x) * Fraction(1, 2))


def test_freudenthal_of_identity():
    one = JordanMatrix.identity(1)
    assert freudenthal(one, one) == one
    assert det_form(one, one, one) == 1


def test_determinant_form_matches_freudenthal(rng):
    for _ in range(10):
        x, y, z = random_jordan(rng), random_jordan(rng), random_jordan(rng)
        d = det_form(x, y, z)
        assert d == Fraction(1, 3) * jordan_mul(freudenthal(x, y), z).trace()
        assert d == det_form(z, x, y)
        assert d == det_form(y, x, z)


def test_determinant_form_on_basis_triples(jb):
    for a in (0, 1, 10, 17, 18, 26):
        for b in (0, 5, 17, 20, 26):
            for c in (0, 9, 17, 25, 26):
                d = det_form(jb[a], jb[b], jb[c])
                assert d == jordan_mul(freudenthal(jb[a], jb[b]), jb[c]).trace() * Fraction(1, 3)


def test_determinant_of_diagonal():
    x = JordanMatrix((2, 3, 5))
    assert det_form(x, x, x) == 30


def test_freudenthal_is_symmetric(rng):
    x, y = random_jordan(rng), random_jordan(rng)
    assert freudenthal(x, y) == freudenthal(y, x)


def test_coordinates_round_trip(jb, rng):
    x = random_jordan(rng)
    assert jb.from_coords(jb.coords(x)) == x


def test_left_multiplication_by_scalar_element(jb):
    m = jb.left_mult(jb[26])
    assert m.nnz == 27
    for k in range(27):
        assert m.get(k, k) == SQRT6 * Fraction(1, 3)
