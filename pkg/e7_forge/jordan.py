"""The exceptional Jordan algebra of 3x3 hermitian octonionic matrices."""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache

from .composition import Octonion, inner as oct_inner
from .errors import NotTraceless
from .scalars import ExactScalar, SQRT3, SQRT6, is_zero
from .sparse import SparseMatrix

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
SIXTH = Fraction(1, 6)

# (row, col) of the three off-diagonal octonions
OFF_POSITIONS = ((0, 1), (0, 2), (1, 2))


def _real(value):
    return Octonion.unit(0, value) if value else Octonion.zero()


class JordanMatrix:
    """Hermitian 3x3 octonionic matrix.

    Args:
        diag (sequence): Real diagonal entries (a, b, c).
        off (sequence): Octonions at positions (1,2), (1,3), (2,3); the
            conjugates sit below the diagonal.
    """

    __slots__ = ("diag", "off")

    def __init__(self, diag=(0, 0, 0), off=None):
        self.diag = tuple(diag)
        self.off = tuple(off) if off is not None else (Octonion.zero(),) * 3
        if len(self.diag) != 3 or len(self.off) != 3:
            raise ValueError("JordanMatrix needs three diagonal entries and three octonions")

    @classmethod
    def identity(cls, scale=1):
        return cls((scale, scale, scale))

    @classmethod
    def zero(cls):
        return cls()

    def entry(self, r, c):
        if r == c:
            return _real(self.diag[r])
        if r < c:
            return self.off[OFF_POSITIONS.index((r, c))]
        return self.off[OFF_POSITIONS.index((c, r))].conj()

    def trace(self):
        a, b, c = self.diag
        return a + b + c

    def __add__(self, other):
        return JordanMatrix([x + y for x, y in zip(self.diag, other.diag)],
                            [x + y for x, y in zip(self.off, other.off)])

    def __sub__(self, other):
        return JordanMatrix([x - y for x, y in zip(self.diag, other.diag)],
                            [x - y for x, y in zip(self.off, other.off)])

    def __neg__(self):
        return JordanMatrix([-x for x in self.diag], [-o for o in self.off])

    def __mul__(self, s):
        return JordanMatrix([x * s for x in self.diag], [o * s for o in self.off])

    __rmul__ = __mul__

    def is_zero(self):
        return all(not x for x in self.diag) and all(o.is_zero() for o in self.off)

    def __eq__(self, other):
        if not isinstance(other, JordanMatrix):
            return NotImplemented
        return (all(x == y for x, y in zip(self.diag, other.diag))
                and all(x == y for x, y in zip(self.off, other.off)))

    __hash__ = None

    def __repr__(self):
        return f"JordanMatrix(diag={list(self.diag)!r}, off={list(self.off)!r})"


def _sym_entry(x, y, r, c):
    # (xy + yx)_{rc}
    total = Octonion.zero()
    for k in range(3):
        p = x.entry(r, k)
        q = y.entry(k, c)
        if not p.is_zero() and not q.is_zero():
            total = total + p * q
        p = y.entry(r, k)
        q = x.entry(k, c)
        if not p.is_zero() and not q.is_zero():
            total = total + p * q
    return total


def jordan_mul(x: JordanMatrix, y: JordanMatrix) -> JordanMatrix:
    """x o y = (xy + yx) / 2."""
    diag = [_sym_entry(x, y, k, k).re * HALF for k in range(3)]
    off = [_sym_entry(x, y, r, c) * HALF for r, c in OFF_POSITIONS]
    return JordanMatrix(diag, off)


def trace_form(x: JordanMatrix, y: JordanMatrix):
    """<x, y> = tr(x o y)."""
    total = 0
    for a, b in zip(x.diag, y.diag):
        if a and b:
            total = total + a * b
    for o, p in zip(x.off, y.off):
        total = total + 2 * oct_inner(o, p)
    return total


def _check_traceless(x, name):
    t = x.trace()
    if not is_zero(t, tol=1e-12):
        raise NotTraceless(f"{name} has trace {t}, expected a traceless Jordan matrix")


def star(x: JordanMatrix, y: JordanMatrix) -> JordanMatrix:
    """x * y = x o y - (1/3) <x, y> I on the traceless part.

    Raises:
        NotTraceless: If either argument has nonzero trace.
    """
    _check_traceless(x, "x")
    _check_traceless(y, "y")
    return jordan_mul(x, y) - JordanMatrix.identity(trace_form(x, y) * THIRD)


def freudenthal(x: JordanMatrix, y: JordanMatrix) -> JordanMatrix:
    """Freudenthal product x > y."""
    tx, ty = x.trace(), y.trace()
    scalar = (tx * ty - trace_form(x, y)) * HALF
    return jordan_mul(x, y) - y * (tx * HALF) - x * (ty * HALF) + JordanMatrix.identity(scalar)


def det_form(x: JordanMatrix, y: JordanMatrix, z: JordanMatrix):
    """Symmetric trilinear determinant form, Det(x, x, x) = det(x)."""
    tx, ty, tz = x.trace(), y.trace(), z.trace()
    cubic = trace_form(jordan_mul(x, y), z) * THIRD
    mixed = (tx * trace_form(y, z) + ty * trace_form(x, z) + tz * trace_form(x, y)) * SIXTH
    return cubic - mixed + tx * ty * tz * SIXTH


class JordanBasis:
    """Ordered basis j_1 ... j_27 with tr(j_a o j_b) = tau delta_ab, tau = 2.

    j1 = diag(1,-1,0) and j18 = diag(1,1,-2)/sqrt3 are the diagonal traceless
    elements, j2..j9, j10..j17 and j19..j26 carry the octonion units e0..e7 at
    positions (1,2), (1,3) and (2,3), and j27 = sqrt(2/3) I.

    Args:
        exact (bool): Build with ExactScalar coordinates.
    """

    TAU = 2

    def __init__(self, exact=True):
        self.exact = exact
        self.tau = self.TAU
        self.elements = self._build()
        self.labels = [f"j{k}" for k in range(1, 28)]
        self._left = None

    def _build(self):
        if self.exact:
            one = ExactScalar.one()
            inv_sqrt3 = SQRT3 * THIRD
            root_two_thirds = SQRT6 * THIRD
        else:
            one = 1.0
            inv_sqrt3 = 3.0 ** -0.5
            root_two_thirds = (2.0 / 3.0) ** 0.5
        zero = ExactScalar.zero() if self.exact else 0.0
        elements = [JordanMatrix((one, -one, zero))]
        for pos in range(3):
            block = []
            for u in range(8):
                off = [Octonion.zero()] * 3
                off[pos] = Octonion.unit(u, one)
                block.append(JordanMatrix((zero, zero, zero), off))
            if pos == 2:
                elements.append(JordanMatrix((inv_sqrt3, inv_sqrt3, -2 * inv_sqrt3)))
            elements.extend(block)
        elements.append(JordanMatrix.identity(root_two_thirds))
        return elements

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, k):
        return self.elements[k]

    def coords(self, x: JordanMatrix):
        """Coordinates of ``x``: <x, j_a> / tau."""
        return [trace_form(x, j) * Fraction(1, self.tau) for j in self.elements]

    def from_coords(self, values):
        total = JordanMatrix.zero()
        for v, j in zip(values, self.elements):
            if v:
                total = total + j * v
        return total

    def gram(self):
        return [[trace_form(a, b) for b in self.elements] for a in self.elements]

    def left_mult(self, x: JordanMatrix) -> SparseMatrix:
        """Matrix of L_x : y -> x o y in this basis."""
        entries = {}
        for col, j in enumerate(self.elements):
            product = jordan_mul(x, j)
            for row, value in enumerate(self.coords(product)):
                if not is_zero(value, tol=0.0 if self.exact else 1e-14):
                    entries[(row, col)] = ExactScalar.coerce(value) if self.exact else complex(value)
        return SparseMatrix((27, 27), entries, exact=self.exact)

    @property
    def left(self):
        """L_{j_a} for every basis element, built once."""
        if self._left is None:
            logger.debug("building Jordan multiplication tables (exact=%s)", self.exact)
            self._left = [self.left_mult(j) for j in self.elements]
        return self._left


@lru_cache(maxsize=2)
def jordan_basis(exact=True) -> JordanBasis:
    return JordanBasis(exact=exact)
