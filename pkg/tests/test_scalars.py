import math
from fractions import Fraction

import numpy as np
import pytest

from e7_forge.errors import ExactFieldOverflow
from e7_forge.scalars import (HALF, I, ONE, SQRT2, SQRT3, SQRT6, ZERO, ExactScalar, exs_arith,
                              exs_embed, exs_invert)


def random_scalar(rng, nonzero=False):
    while True:
        re = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for _ in range(4)]
        im = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for _ in range(4)]
        value = ExactScalar(re, im)
        if not nonzero or not value.is_zero():
            return value


def test_basis_products():
    assert exs_arith(SQRT2, SQRT3, "mul") == SQRT6
    assert SQRT2 * SQRT6 == 2 * SQRT3
    assert SQRT3 * SQRT6 == 3 * SQRT2
    assert I * I == -1


def test_inverse_pair():
    assert exs_arith(SQRT6 * Fraction(1, 6), SQRT6, "mul") == ONE


def test_imaginary_square():
    x = I * SQRT2
    assert exs_arith(x, x, "mul") == -2


def test_add_sub():
    assert exs_arith(SQRT2, SQRT2, "add") == 2 * SQRT2
    assert exs_arith(SQRT2, SQRT2, "sub") == ZERO
    with pytest.raises(ValueError):
        exs_arith(ONE, ONE, "div")


def test_invert():
    assert exs_invert(ExactScalar.rational(2)) == HALF
    assert exs_invert(SQRT6) == SQRT6 * Fraction(1, 6)
    assert exs_invert(ONE + SQRT2) == SQRT2 - 1
    assert exs_invert(I) == -I


def test_invert_zero():
    with pytest.raises(ZeroDivisionError):
        exs_invert(ZERO)


def test_embed():
    z = exs_embed(SQRT6)
    assert z.imag == 0.0
    assert abs(z.real - math.sqrt(6.0)) <= 4 * np.spacing(math.sqrt(6.0))
    z = exs_embed(I * SQRT6 * Fraction(1, 3))
    assert z.real == 0.0
    assert abs(z.imag - 0.816496580927726) < 1e-15
    assert exs_embed(ZERO) == 0j


def test_field_axioms(rng):
    for _ in range(1000):
        a, b, c = (random_scalar(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a


def test_inverse_random(rng):
    for _ in range(200):
        a = random_scalar(rng, nonzero=True)
        assert a * a.inverse() == ONE


def test_conjugation(rng):
    for _ in range(200):
        a, b = random_scalar(rng), random_scalar(rng)
        assert a.conj().conj() == a
        assert (a * b).conj() == a.conj() * b.conj()
        assert (a + b).conj() == a.conj() + b.conj()


def test_embedding_of_nonzero_is_nonzero(rng):
    for _ in range(500):
        a = random_scalar(rng, nonzero=True)
        assert abs(exs_embed(a)) > 1e-15


def test_embedding_is_a_homomorphism(rng):
    for _ in range(200):
        a, b = random_scalar(rng), random_scalar(rng)
        assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-10 * (1 + abs(complex(a * b)))


def test_sqrt():
    assert ExactScalar.rational(2, 3).sqrt() == SQRT6 * Fraction(1, 3)
    assert ExactScalar.rational(9, 4).sqrt() == ExactScalar.rational(3, 2)
    assert ExactScalar.rational(8).sqrt() == 2 * SQRT2
    assert ZERO.sqrt() == ZERO
    with pytest.raises(ExactFieldOverflow):
        ExactScalar.rational(5).sqrt()
    with pytest.raises(ExactFieldOverflow):
        ExactScalar.rational(-2).sqrt()


def test_predicates():
    assert ExactScalar.rational(3, 7).is_rational()
    assert not SQRT2.is_rational()
    assert SQRT2.is_real()
    assert not (I * SQRT2).is_real()


def test_text_form():
    assert SQRT6.to_text() == "0/1,0/1,0/1,1/1;0/1,0/1,0/1,0/1"
    value = ExactScalar([Fraction(1, 3), 0, Fraction(-2, 5), 0], [0, 0, 0, Fraction(7, 2)])
    assert ExactScalar.parse(value.to_text()) == value


@pytest.mark.parametrize("text", ["", "1/2", "1,2,3;4,5,6,7", "a/b,0,0,0;0,0,0,0", "1/0,0,0,0;0,0,0,0"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        ExactScalar.parse(text)


def test_float_promotion():
    assert abs(SQRT2 * 0.5 - math.sqrt(2.0) / 2) < 1e-15
    assert isinstance(SQRT2 + 1.0, complex)
