"""Exact arithmetic in the number field Q(i, sqrt2, sqrt3).

Every coefficient that appears in the generator matrices lives in this field.
An :class:`ExactScalar` stores two coordinate vectors over the rational basis
{1, sqrt2, sqrt3, sqrt6}: one for the real part and one for the imaginary part.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import ExactFieldOverflow

# basis products b_i * b_j = c * b_k over {1, sqrt2, sqrt3, sqrt6}
_MUL = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 1): (0, 2), (1, 2): (3, 1), (1, 3): (2, 2),
    (2, 2): (0, 3), (2, 3): (1, 3),
    (3, 3): (0, 6),
}

_RADICANDS = (1, 2, 3, 6)
_ZERO4 = (Fraction(0),) * 4

# 40-digit rational approximations, so embedding rounds once
_SCALE = 10 ** 40
_ROOTS = tuple(Fraction(math.isqrt(r * _SCALE * _SCALE), _SCALE) for r in _RADICANDS)


def _vec(values):
    return tuple(Fraction(v) for v in values)


def _radd(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def _rsub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])


def _rneg(a):
    return (-a[0], -a[1], -a[2], -a[3])


def _rmul(a, b):
    out = [Fraction(0)] * 4
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            k, c = _MUL[(i, j) if i <= j else (j, i)]
            out[k] += c * x * y
    return tuple(out)


def _rscale(a, q):
    return (a[0] * q, a[1] * q, a[2] * q, a[3] * q)


def _flip(a, mask):
    return tuple(-x if m else x for x, m in zip(a, mask))


_SIGMA2 = (False, True, False, True)
_SIGMA3 = (False, False, True, True)


def _rinv(a):
    """Inverse in the real subfield Q(sqrt2, sqrt3) via the Galois norm."""
    conj2 = _flip(a, _SIGMA2)
    n1 = _rmul(a, conj2)  # lies in Q(sqrt3)
    n1_conj = _flip(n1, _SIGMA3)
    norm = _rmul(n1, n1_conj)[0]
    if norm == 0:
        raise ZeroDivisionError("inverse of zero ExactScalar")
    return _rscale(_rmul(conj2, n1_conj), 1 / norm)


class ExactScalar:
    """Element of Q(i, sqrt2, sqrt3).

    Args:
        re (sequence): Four rationals, coefficients of {1, sqrt2, sqrt3, sqrt6}.
        im (sequence): Four rationals for the imaginary part.
    """

    __slots__ = ("_re", "_im", "_complex")

    def __init__(self, re=_ZERO4, im=_ZERO4):
        if len(re) != 4 or len(im) != 4:
            raise ValueError("ExactScalar needs four real and four imaginary coefficients")
        self._re = _vec(re)
        self._im = _vec(im)
        self._complex = None

    @classmethod
    def _raw(cls, re, im):
        obj = cls.__new__(cls)
        obj._re = re
        obj._im = im
        obj._complex = None
        return obj

    # constructors

    @classmethod
    def zero(cls):
        return cls._raw(_ZERO4, _ZERO4)

    @classmethod
    def one(cls):
        return cls.rational(1)

    @classmethod
    def rational(cls, p, q=1):
        return cls._raw((Fraction(p, q), Fraction(0), Fraction(0), Fraction(0)), _ZERO4)

    @classmethod
    def from_int(cls, n: int):
        return cls.rational(n)

    @classmethod
    def i(cls):
        return cls._raw(_ZERO4, (Fraction(1), Fraction(0), Fraction(0), Fraction(0)))

    @classmethod
    def sqrt2(cls):
        return cls._raw((Fraction(0), Fraction(1), Fraction(0), Fraction(0)), _ZERO4)

    @classmethod
    def sqrt3(cls):
        return cls._raw((Fraction(0), Fraction(0), Fraction(1), Fraction(0)), _ZERO4)

    @classmethod
    def sqrt6(cls):
        return cls._raw((Fraction(0), Fraction(0), Fraction(0), Fraction(1)), _ZERO4)

    @classmethod
    def coerce(cls, value):
        """Convert an int, Fraction or ExactScalar to an ExactScalar."""
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Rational)):
            return cls.rational(Fraction(value))
        raise TypeError(f"cannot convert {type(value).__name__} to ExactScalar")

    # accessors

    @property
    def re_coeffs(self):
        return self._re

    @property
    def im_coeffs(self):
        return self._im

    @property
    def real(self):
        return ExactScalar._raw(self._re, _ZERO4)

    @property
    def imag(self):
        return ExactScalar._raw(self._im, _ZERO4)

    def is_zero(self):
        return not any(self._re) and not any(self._im)

    def is_real(self):
        return not any(self._im)

    def is_rational(self):
        return self.is_real() and not any(self._re[1:])

    def conj(self):
        return ExactScalar._raw(self._re, _rneg(self._im))

    # arithmetic

    def _other(self, other):
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Rational)):
            return ExactScalar.rational(Fraction(other))
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return ExactScalar._raw(_radd(self._re, o._re), _radd(self._im, o._im))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return ExactScalar._raw(_rsub(self._re, o._re), _rsub(self._im, o._im))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ExactScalar._raw(_rneg(self._re), _rneg(self._im))

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        if isinstance(other, (int, Rational)):
            q = Fraction(other)
            return ExactScalar._raw(_rscale(self._re, q), _rscale(self._im, q))
        ar, ai, br, bi = self._re, self._im, o._re, o._im
        re = _rsub(_rmul(ar, br), _rmul(ai, bi))
        im = _radd(_rmul(ar, bi), _rmul(ai, br))
        return ExactScalar._raw(re, im)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse.

        Raises:
            ZeroDivisionError: If the value is zero.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero ExactScalar")
        # 1/(x + iy) = (x - iy) / (x^2 + y^2), with x, y real
        modulus = _radd(_rmul(self._re, self._re), _rmul(self._im, self._im))
        inv = _rinv(modulus)
        return ExactScalar._raw(_rmul(self._re, inv), _rneg(_rmul(self._im, inv)))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ExactScalar.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sqrt(self):
        """Square root of a positive rational of the form s^2 * {1, 2, 3, 6}.

        Raises:
            ExactFieldOverflow: If the root leaves Q(i, sqrt2, sqrt3) or the
                value is not a nonnegative rational.
        """
        if self.is_zero():
            return ExactScalar.zero()
        if not self.is_rational() or self._re[0] < 0:
            raise ExactFieldOverflow(f"sqrt({self}) is not in the supported field")
        q = self._re[0]
        m = q.numerator * q.denominator
        for slot, r in enumerate(_RADICANDS):
            if m % r:
                continue
            root = math.isqrt(m // r)
            if root * root == m // r:
                coeffs = [Fraction(0)] * 4
                coeffs[slot] = Fraction(root, q.denominator)
                return ExactScalar._raw(tuple(coeffs), _ZERO4)
        raise ExactFieldOverflow(f"sqrt({q}) leaves Q(i, sqrt2, sqrt3)")

    # comparisons and conversion

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self):
        return hash((self._re, self._im))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        if self._complex is None:
            re = sum((c * r for c, r in zip(self._re, _ROOTS)), Fraction(0))
            im = sum((c * r for c, r in zip(self._im, _ROOTS)), Fraction(0))
            self._complex = complex(float(re), float(im))
        return self._complex

    def __float__(self):
        if not self.is_real():
            raise TypeError("ExactScalar with imaginary part has no float value")
        return complex(self).real

    def to_text(self):
        """Render as ``p0/q0,p1/q1,p2/q2,p3/q3;r0/s0,r1/s1,r2/s2,r3/s3``."""
        def part(vec):
            return ",".join(f"{c.numerator}/{c.denominator}" for c in vec)
        return f"{part(self._re)};{part(self._im)}"

    @classmethod
    def parse(cls, text: str):
        """Inverse of :meth:`to_text`."""
        try:
            re_txt, im_txt = text.strip().split(";")
            re = [Fraction(t) for t in re_txt.split(",")]
            im = [Fraction(t) for t in im_txt.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad exact scalar {text!r}") from exc
        if len(re) != 4 or len(im) != 4:
            raise ValueError(f"bad exact scalar {text!r}")
        return cls._raw(tuple(re), tuple(im))

    def __repr__(self):
        return f"ExactScalar({self.to_text()!r})"

    def __str__(self):
        names = ("", "√2", "√3", "√6")
        terms = []
        for vec, unit in ((self._re, ""), (self._im, "i")):
            for c, name in zip(vec, names):
                if c:
                    mag = "" if (abs(c) == 1 and (name or unit)) else str(abs(c))
                    sign = "-" if c < 0 else "+"
                    terms.append(f"{sign}{mag}{unit}{name}")
        if not terms:
            return "0"
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text


# operations in functional form

def exs_arith(a: ExactScalar, b: ExactScalar, which: str) -> ExactScalar:
    if which == "add":
        return a + b
    if which == "sub":
        return a - b
    if which == "mul":
        return a * b
    raise ValueError("which must be 'add', 'sub' or 'mul'")


def exs_invert(a: ExactScalar) -> ExactScalar:
    return a.inverse()


def exs_embed(a: ExactScalar) -> complex:
    return complex(a)


# helpers shared by the exact and floating-point code paths

def to_complex(x) -> complex:
    return complex(x)


def is_zero(x, tol: float = 0.0) -> bool:
    if isinstance(x, ExactScalar):
        return x.is_zero()
    return abs(x) <= tol


def sqrt_scalar(x):
    """Square root in whichever arithmetic ``x`` lives in."""
    if isinstance(x, ExactScalar):
        return x.sqrt()
    z = complex(x)
    if abs(z.imag) <= 1e-14 * max(1.0, abs(z.real)) and z.real >= 0:
        return complex(math.sqrt(z.real), 0.0)
    return z ** 0.5


def conj_scalar(x):
    if isinstance(x, ExactScalar):
        return x.conj()
    return complex(x).conjugate()


def as_scalar(x, exact: bool):
    """Coerce ``x`` to an ExactScalar (exact mode) or a Python complex."""
    if exact:
        return ExactScalar.coerce(x)
    return complex(x)


ZERO = ExactScalar.zero()
ONE = ExactScalar.one()
I = ExactScalar.i()
SQRT2 = ExactScalar.sqrt2()
SQRT3 = ExactScalar.sqrt3()
SQRT6 = ExactScalar.sqrt6()
HALF = ExactScalar.rational(1, 2)
