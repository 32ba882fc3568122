"""Quaternions and octonions over exact or floating-point coordinates.

The octonion table is fixed by the oriented Fano lines

    (1,2,3) (1,4,5) (2,4,6) (3,4,7) (2,5,7) (6,1,7) (3,6,5)

with e_a e_b = e_c along each cyclic line. The quaternions are the
subalgebra spanned by {1, e1, e2, e3}.
"""

from __future__ import annotations

FANO_LINES = ((1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 4, 7), (2, 5, 7), (6, 1, 7), (3, 6, 5))


def _build_table(dim, lines):
    # table[a][b] = (sign, c) with e_a e_b = sign * e_c
    table = [[None] * dim for _ in range(dim)]
    for a in range(dim):
        table[0][a] = (1, a)
        table[a][0] = (1, a)
    for a in range(1, dim):
        table[a][a] = (-1, 0)
    for a, b, c in lines:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            table[x][y] = (1, z)
            table[y][x] = (-1, z)
    return tuple(tuple(row) for row in table)


OCTONION_TABLE = _build_table(8, FANO_LINES)
QUATERNION_TABLE = _build_table(4, ((1, 2, 3),))


class _CompositionElement:
    """Element of a composition algebra with a fixed unit multiplication table."""

    DIM = 0
    TABLE = ()

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) != self.DIM:
            raise ValueError(f"{type(self).__name__} needs {self.DIM} coordinates, got {len(coords)}")
        self.coords = coords

    @classmethod
    def unit(cls, a, scale=1):
        coords = [0] * cls.DIM
        coords[a] = scale
        return cls(coords)

    @classmethod
    def zero(cls):
        return cls([0] * cls.DIM)

    @classmethod
    def one(cls):
        return cls.unit(0)

    @property
    def re(self):
        return self.coords[0]

    def __add__(self, other):
        return type(self)(x + y for x, y in zip(self.coords, other.coords))

    def __sub__(self, other):
        return type(self)(x - y for x, y in zip(self.coords, other.coords))

    def __neg__(self):
        return type(self)(-x for x in self.coords)

    def __mul__(self, other):
        if isinstance(other, _CompositionElement):
            return multiply(self, other)
        return type(self)(x * other for x in self.coords)

    def __rmul__(self, other):
        return type(self)(other * x for x in self.coords)

    def conj(self):
        return type(self)([self.coords[0]] + [-x for x in self.coords[1:]])

    def is_zero(self):
        return all(not x for x in self.coords)

    def imaginary(self):
        return type(self)([0] + list(self.coords[1:]))

    def norm2(self):
        return inner(self, self)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return all(x == y for x, y in zip(self.coords, other.coords))

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coords)!r})"


class Quaternion(_CompositionElement):
    """Quaternion over the basis {1, h1, h2, h3}, h1 h2 = h3 cyclically."""

    DIM = 4
    TABLE = QUATERNION_TABLE
    __slots__ = ()

    def to_octonion(self):
        return Octonion(list(self.coords) + [0, 0, 0, 0])


class Octonion(_CompositionElement):
    """Octonion over {e0 = 1, e1, ..., e7}."""

    DIM = 8
    TABLE = OCTONION_TABLE
    __slots__ = ()


def multiply(x, y):
    """Bilinear product under the unit table, skipping zero coordinates."""
    table = x.TABLE
    out = [0] * x.DIM
    for a, xa in enumerate(x.coords):
        if not xa:
            continue
        row = table[a]
        for b, yb in enumerate(y.coords):
            if not yb:
                continue
            sign, c = row[b]
            term = xa * yb
            out[c] = out[c] + term if sign > 0 else out[c] - term
    return type(x)(out)


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    return multiply(x, y)


def quat_mul(x: Quaternion, y: Quaternion) -> Quaternion:
    return multiply(x, y)


def inner(x, y):
    """<x, y> = Re(conj(x) y), the Euclidean form on the coordinates."""
    total = 0
    for a, b in zip(x.coords, y.coords):
        if a and b:
            total = total + a * b
    return total


def commutator(x, y):
    return x * y - y * x


def associator(x, y, z):
    """(xy)z - x(yz)."""
    return (x * y) * z - x * (y * z)


def derivation(a, b):
    """Inner derivation D_{a,b} = [L_a, L_b] + [L_a, R_b] + [R_a, R_b].

    On octonions this acts as D_{a,b}(c) = [[a,b],c] - 3(a,b,c). On an
    associative algebra the mixed term vanishes.
    """
    def apply(c):
        ll = a * (b * c) - b * (a * c)
        lr = a * (c * b) - (a * c) * b
        rr = (c * b) * a - (c * a) * b
        return ll + lr + rr
    return apply


def quat_derivation(h1: Quaternion, h2: Quaternion):
    """D_{h1,h2} = [L_{h1}, L_{h2}] + [R_{h1}, R_{h2}] on the quaternions."""
    return derivation(h1, h2)


def oct_derivation(a: Octonion, b: Octonion):
    return derivation(a, b)


def left_matrix(x):
    """Matrix of L_x in the unit basis, as nested lists (column b = x e_b)."""
    cols = [x * type(x).unit(b) for b in range(x.DIM)]
    return [[cols[b].coords[a] for b in range(x.DIM)] for a in range(x.DIM)]


def right_matrix(x):
    cols = [type(x).unit(b) * x for b in range(x.DIM)]
    return [[cols[b].coords[a] for b in range(x.DIM)] for a in range(x.DIM)]


# imaginary quaternion units h1, h2, h3
H_UNITS = tuple(Quaternion.unit(k) for k in (1, 2, 3))
