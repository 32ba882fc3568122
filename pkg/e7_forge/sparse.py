"""Sparse square and rectangular matrices over ExactScalar or complex entries.

The same code runs in both scalar modes, so every construction can be built
exactly and then embedded, or built directly in floating point.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, NotClosed
from .scalars import ExactScalar, as_scalar, is_zero


class SparseMatrix:
    """Dictionary-of-keys matrix.

    Args:
        shape (tuple): (rows, cols)
        entries (dict): {(r, c): scalar}, zeros are dropped
        exact (bool): True if entries are ExactScalar
    """

    __slots__ = ("shape", "entries", "exact")

    def __init__(self, shape, entries=None, exact=True):
        self.shape = (int(shape[0]), int(shape[1]))
        self.exact = exact
        self.entries = {}
        if entries:
            for key, value in entries.items():
                if not is_zero(value):
                    self.entries[key] = value

    @classmethod
    def zeros(cls, n, m=None, exact=True):
        return cls((n, n if m is None else m), exact=exact)

    @classmethod
    def identity(cls, n, exact=True, scale=1):
        value = as_scalar(scale, exact)
        return cls((n, n), {(i, i): value for i in range(n)}, exact=exact)

    @classmethod
    def diagonal(cls, values, exact=True):
        return cls((len(values), len(values)),
                   {(i, i): as_scalar(v, exact) for i, v in enumerate(values)},
                   exact=exact)

    @classmethod
    def from_dense(cls, array, tol=0.0):
        """Float-mode matrix from a numpy array, dropping entries below ``tol``."""
        array = np.asarray(array)
        rows, cols = np.nonzero(np.abs(array) > tol)
        return cls(array.shape,
                   {(int(r), int(c)): complex(array[r, c]) for r, c in zip(rows, cols)},
                   exact=False)

    @classmethod
    def assemble(cls, shape, blocks, exact=True):
        """Place blocks ``[(row_offset, col_offset, SparseMatrix), ...]`` into a zero matrix."""
        out = cls(shape, exact=exact)
        for r0, c0, block in blocks:
            for (r, c), value in block.entries.items():
                key = (r0 + r, c0 + c)
                if key in out.entries:
                    value = out.entries[key] + value
                out._put(key, value)
        return out

    def _put(self, key, value):
        if is_zero(value):
            self.entries.pop(key, None)
        else:
            self.entries[key] = value

    def _zero(self):
        return ExactScalar.zero() if self.exact else 0j

    def get(self, r, c):
        return self.entries.get((r, c), self._zero())

    def __getitem__(self, key):
        return self.get(*key)

    @property
    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def items(self):
        return self.entries.items()

    def copy(self):
        return SparseMatrix(self.shape, dict(self.entries), self.exact)

    # arithmetic

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} does not match {other.shape}")

    def __add__(self, other):
        self._check_shape(other)
        out = SparseMatrix(self.shape, dict(self.entries), self.exact and other.exact)
        for key, value in other.entries.items():
            out._put(key, out.entries[key] + value if key in out.entries else value)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SparseMatrix(self.shape, {k: -v for k, v in self.entries.items()}, self.exact)

    def scale(self, s):
        if is_zero(s):
            return SparseMatrix(self.shape, exact=self.exact)
        exact = self.exact and isinstance(s, (ExactScalar, int, Fraction))
        return SparseMatrix(self.shape, {k: v * s for k, v in self.entries.items()}, exact)

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        rows_of_other = defaultdict(list)
        for (k, j), b in other.entries.items():
            rows_of_other[k].append((j, b))
        acc = {}
        for (i, k), a in self.entries.items():
            for j, b in rows_of_other.get(k, ()):
                key = (i, j)
                acc[key] = acc[key] + a * b if key in acc else a * b
        return SparseMatrix((self.shape[0], other.shape[1]), acc, self.exact and other.exact)

    def commutator(self, other):
        return self @ other - other @ self

    def transpose(self):
        return SparseMatrix((self.shape[1], self.shape[0]),
                            {(c, r): v for (r, c), v in self.entries.items()}, self.exact)

    @property
    def T(self):
        return self.transpose()

    def conj(self):
        if self.exact:
            return SparseMatrix(self.shape, {k: v.conj() for k, v in self.entries.items()}, True)
        return SparseMatrix(self.shape, {k: complex(v).conjugate() for k, v in self.entries.items()}, False)

    def dagger(self):
        return self.conj().transpose()

    def trace(self):
        total = self._zero()
        for (r, c), v in self.entries.items():
            if r == c:
                total = total + v
        return total

    def trace_product(self, other):
        """tr(self @ other) without forming the product."""
        total = self._zero() if (self.exact and other.exact) else 0j
        for (r, c), v in self.entries.items():
            w = other.entries.get((c, r))
            if w is not None:
                total = total + v * w
        return total

    def apply(self, vector):
        """Multiply a vector given as {index: scalar}."""
        out = {}
        for (r, c), v in self.entries.items():
            x = vector.get(c)
            if x is not None:
                out[r] = out[r] + v * x if r in out else v * x
        return {k: v for k, v in out.items() if not is_zero(v)}

    def to_float(self):
        if not self.exact:
            return self
        return SparseMatrix(self.shape, {k: complex(v) for k, v in self.entries.items()}, False)

    def to_dense(self, dtype=complex):
        out = np.zeros(self.shape, dtype=dtype)
        for (r, c), v in self.entries.items():
            out[r, c] = complex(v)
        return out

    def max_abs(self):
        return max((abs(complex(v)) for v in self.entries.values()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz}, {mode})"


def linear_combination(coeffs, mats, shape=None, exact=True):
    """Sum of ``c * M`` over paired coefficients and matrices."""
    if shape is None:
        shape = mats[0].shape
    acc = {}
    for c, m in zip(coeffs, mats):
        if is_zero(c):
            continue
        for key, v in m.entries.items():
            term = v * c
            acc[key] = acc[key] + term if key in acc else term
    return SparseMatrix(shape, acc, exact)


class BasisProjector:
    """Coordinates with respect to a basis orthonormal under ``-tr(XY) / norm``.

    An inverted index over the basis entries keeps each projection proportional
    to the number of nonzeros of the projected matrix.

    Args:
        basis (list): SparseMatrix elements B_K with -tr(B_K B_L) = norm * delta
        norm (int): normalization constant of the trace form
    """

    def __init__(self, basis, norm):
        self.basis = list(basis)
        self.exact = all(b.exact for b in self.basis)
        self.norm = norm
        self._inv_norm = ExactScalar.rational(-1, norm) if self.exact else -1.0 / norm
        self._index = defaultdict(list)
        for k, b in enumerate(self.basis):
            for (r, c), v in b.entries.items():
                # tr(X B) pairs X[c', r'] with B[r', c'] -> key on the transposed slot
                self._index[(c, r)].append((k, v))

    def coefficients(self, x):
        acc = {}
        for key, v in x.entries.items():
            for k, b in self._index.get(key, ()):
                term = v * b
                acc[k] = acc[k] + term if k in acc else term
        return {k: s * self._inv_norm for k, s in acc.items() if not is_zero(s)}

    def project(self, x, tol=0.0, label=None):
        """Coordinates of ``x`` and a closure check of the reconstruction.

        Raises:
            NotClosed: If ``x`` is not in the span (exactly, or within ``tol``).
        """
        coeffs = self.coefficients(x)
        keys = sorted(coeffs)
        recon = linear_combination([coeffs[k] for k in keys], [self.basis[k] for k in keys],
                                   shape=x.shape, exact=self.exact and x.exact)
        residual = x - recon
        worst = residual.max_abs()
        if (x.exact and self.exact and not residual.is_zero()) or worst > tol:
            raise NotClosed(f"matrix {label or ''} leaves the span (residual {worst:.3e})",
                            residual=worst, pair=label)
        return coeffs
