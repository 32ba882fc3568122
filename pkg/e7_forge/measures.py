"""Group volumes in exact arithmetic and the ordered-simplex integral.

Volumes are products r * sqrt2^a * sqrt3^b * pi^n with r rational and
a, b in {0, 1}; Macdonald's formula only ever produces such numbers for the
groups involved here.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import roots_legendre

from .errors import NotRepresentable

logger = logging.getLogger(__name__)


class SymbolicVolume:
    """r * sqrt2^a * sqrt3^b * pi^n, normalized so that a, b are 0 or 1.

    Args:
        rational (Fraction or int): Rational factor r.
        sqrt2 (int): Exponent of sqrt2; any integer, reduced on construction.
        sqrt3 (int): Exponent of sqrt3; any integer, reduced on construction.
        pi (int): Power of pi.
    """

    __slots__ = ("rational", "sqrt2", "sqrt3", "pi")

    def __init__(self, rational=1, sqrt2=0, sqrt3=0, pi=0):
        r = Fraction(rational)
        half2, e2 = divmod(int(sqrt2), 2)
        half3, e3 = divmod(int(sqrt3), 2)
        r *= Fraction(2) ** half2 * Fraction(3) ** half3
        self.rational = r
        self.sqrt2 = e2
        self.sqrt3 = e3
        self.pi = int(pi)

    def _key(self):
        return (self.rational, self.sqrt2, self.sqrt3, self.pi)

    def __eq__(self, other):
        if not isinstance(other, SymbolicVolume):
            other = SymbolicVolume(other)
        if self.rational == 0 and other.rational == 0:
            return True
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __mul__(self, other):
        if not isinstance(other, SymbolicVolume):
            other = SymbolicVolume(other)
        return SymbolicVolume(self.rational * other.rational, self.sqrt2 + other.sqrt2,
                              self.sqrt3 + other.sqrt3, self.pi + other.pi)

    __rmul__ = __mul__

    def inverse(self):
        if self.rational == 0:
            raise ZeroDivisionError("inverse of a zero volume")
        return SymbolicVolume(1 / self.rational, -self.sqrt2, -self.sqrt3, -self.pi)

    def __truediv__(self, other):
        if not isinstance(other, SymbolicVolume):
            other = SymbolicVolume(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return SymbolicVolume(other) * self.inverse()

    def __pow__(self, n):
        out = SymbolicVolume(1)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(int(n))):
            out = out * base
        return out

    @property
    def is_rational(self):
        return self.sqrt2 == 0 and self.sqrt3 == 0 and self.pi == 0

    def to_fraction(self):
        """The value as a Fraction.

        Raises:
            NotRepresentable: If a square root or a power of pi remains.
        """
        if not self.is_rational and self.rational != 0:
            raise NotRepresentable(f"{self} is not rational")
        return self.rational

    def __float__(self):
        return (float(self.rational) * math.sqrt(2.0) ** self.sqrt2 * math.sqrt(3.0) ** self.sqrt3
                * math.pi ** self.pi)

    def __repr__(self):
        return (f"SymbolicVolume({self.rational!r}, sqrt2={self.sqrt2}, sqrt3={self.sqrt3}, "
                f"pi={self.pi})")

    def __str__(self):
        parts = []
        radical = "·".join(s for s, e in (("√2", self.sqrt2), ("√3", self.sqrt3)) if e)
        if radical:
            parts.append(radical)
        parts.append(render_fraction(self.rational))
        if self.pi:
            parts.append("π" if self.pi == 1 else f"π^{self.pi}")
        return " · ".join(parts)


def _factorize(n):
    factors = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _render_int(n):
    if n == 1:
        return "1", 1
    factors = _factorize(n)
    text = "·".join(str(p) if e == 1 else f"{p}^{e}" for p, e in sorted(factors.items()))
    return text, len(factors)


def render_fraction(q: Fraction):
    """Prime-factored rendering, e.g. 2^5/(3^12·5^5·17)."""
    sign = "-" if q < 0 else ""
    num, _ = _render_int(abs(q.numerator))
    if q.denominator == 1:
        return sign + num
    den, count = _render_int(q.denominator)
    if count > 1:
        den = f"({den})"
    return f"{sign}{num}/{den}"


@dataclass(frozen=True)
class GroupVolumeDescriptor:
    """Data entering Macdonald's formula.

    Attributes:
        name (str): Group name.
        torus_volume (SymbolicVolume): Volume of the maximal torus.
        sphere_dims (tuple): Odd dimensions d_i of the spheres in the rational
            cohomology.
        n_roots (int): Number of roots; every coroot has norm sqrt2.
    """

    name: str
    torus_volume: SymbolicVolume
    sphere_dims: tuple
    n_roots: int


E7_DESCRIPTOR = GroupVolumeDescriptor("E7", SymbolicVolume(1, sqrt2=1), (3, 11, 15, 19, 23, 27, 35), 126)
E6_DESCRIPTOR = GroupVolumeDescriptor("E6", SymbolicVolume(1, sqrt3=1), (3, 9, 11, 15, 17, 23), 72)
SO8_DESCRIPTOR = GroupVolumeDescriptor("SO8", SymbolicVolume(2), (3, 7, 7, 11), 24)
DESCRIPTORS = {d.name: d for d in (E7_DESCRIPTOR, E6_DESCRIPTOR, SO8_DESCRIPTOR)}

# period of Y_1, T_g = 2 sqrt6 pi
U1_VOLUME = SymbolicVolume(2, sqrt2=1, sqrt3=1, pi=1)

TARGETS = ("E7", "E6", "SO8", "U1", "U", "E7modU")


def sphere_volume(d):
    """Vol(S^d) = 2 pi^k / (k-1)! with k = (d+1)/2, for odd d."""
    if d < 1 or d % 2 == 0:
        raise ValueError(f"sphere dimension must be odd and positive, got {d}")
    k = (d + 1) // 2
    return SymbolicVolume(Fraction(2, math.factorial(k - 1)), pi=k)


def macdonald_volume(desc: GroupVolumeDescriptor) -> SymbolicVolume:
    """V_T * prod Vol(S^{d_i}) * prod over roots of |coroot|."""
    out = desc.torus_volume
    for d in desc.sphere_dims:
        out = out * sphere_volume(d)
    return out * SymbolicVolume(1, sqrt2=desc.n_roots)


def quotient_volume(g: SymbolicVolume, h: SymbolicVolume) -> SymbolicVolume:
    """Vol(G) / Vol(H).

    Raises:
        NotRepresentable: If ``h`` is zero.
    """
    if h.rational == 0:
        raise NotRepresentable("quotient by a zero volume")
    return g / h


def group_volume(target) -> SymbolicVolume:
    """Volume of E7, E6, SO8, U1, U = (E6 x U(1)) / Z3 or E7/U."""
    if target in DESCRIPTORS:
        return macdonald_volume(DESCRIPTORS[target])
    if target == "U1":
        return U1_VOLUME
    if target == "U":
        return group_volume("E6") * U1_VOLUME / 3
    if target == "E7modU":
        return quotient_volume(group_volume("E7"), group_volume("U"))
    raise ValueError(f"unknown volume target {target!r}; expected one of {', '.join(TARGETS)}")


def integral_closed(a, b, c) -> Fraction:
    """I(a,b,c) over 0 <= z <= y <= x <= 1 of (x-y)^(a-1) (y-z)^(b-1) (x-z)^(c-1).

    Equals (a-1)! (b-1)! / (a+b-1)! / (s (s-1)) with s = a + b + c.
    """
    if min(a, b, c) < 1:
        raise ValueError(f"exponents must be positive integers, got ({a}, {b}, {c})")
    s = a + b + c
    return Fraction(math.factorial(a - 1) * math.factorial(b - 1), math.factorial(a + b - 1)) / (s * (s - 1))


def integral_quadrature(a, b, c, n=32) -> float:
    """Tensor Gauss-Legendre estimate of I(a,b,c) with n nodes per axis."""
    if n < 8:
        raise ValueError(f"quadrature needs at least 8 nodes, got {n}")
    if min(a, b, c) < 1:
        raise ValueError(f"exponents must be positive integers, got ({a}, {b}, {c})")
    nodes, weights = roots_legendre(n)
    u = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    u1, u2, u3 = np.meshgrid(u, u, u, indexing="ij")
    w1, w2, w3 = np.meshgrid(w, w, w, indexing="ij")
    x = u1
    y = x * u2
    z = y * u3
    f = (x - y) ** (a - 1) * (y - z) ** (b - 1) * (x - z) ** (c - 1)
    return float(np.sum(w1 * w2 * w3 * x * y * f))


def tits_weight_integral() -> Fraction:
    """Integral of W over the ordered (x, y, z) simplex, 8 I(9,9,9)."""
    return 8 * integral_closed(9, 9, 9)


def tits_covering_integral(halved=False) -> SymbolicVolume:
    """(T_g / 3) (Vol(E6) / Vol(SO8)) (1 / 2sqrt2) * 8 I(9,9,9).

    Args:
        halved (bool): Use the x1 range reduced by the central identification.
    """
    period = U1_VOLUME / 2 if halved else U1_VOLUME
    jacobian = SymbolicVolume(Fraction(1, 4), sqrt2=1)
    out = (period / 3) * quotient_volume(group_volume("E6"), group_volume("SO8")) * jacobian
    return out * tits_weight_integral()


def covering_check(halved=False) -> Fraction:
    """Ratio of the tits-chart volume to Vol(E7/U): 2, or 1 once halved.

    Raises:
        NotRepresentable: If the ratio is not rational.
    """
    ratio = tits_covering_integral(halved) / group_volume("E7modU")
    logger.debug("covering ratio %s", ratio)
    return ratio.to_fraction()
