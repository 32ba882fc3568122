"""Generator sets, structure constants, Killing form and the Weyl unitary trick."""

from __future__ import annotations

import copy
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse

from .config import get_settings
from .errors import DimensionMismatch, NotClosed, NotSubalgebra
from .scalars import I
from .sparse import SparseMatrix

logger = logging.getLogger(__name__)


class GeneratorSet:
    """An ordered list of square matrices spanning a Lie algebra.

    Args:
        construction (str): One of "tits", "split", "evi" (or a derived tag).
        rep_dim (int): Dimension of the representation space.
        mats (list): SparseMatrix generators.
        labels (list): Basis names, defaults to G_1 ... G_n.
        metadata (dict): Free-form build information.
    """

    def __init__(self, construction, rep_dim, mats, labels=None, metadata=None):
        mats = list(mats)
        for k, m in enumerate(mats):
            if m.shape != (rep_dim, rep_dim):
                raise DimensionMismatch(f"generator {k} has shape {m.shape}, expected {rep_dim}x{rep_dim}")
        self.construction = construction
        self.rep_dim = rep_dim
        self.mats = mats
        self.labels = list(labels) if labels is not None else [f"G_{k + 1}" for k in range(len(mats))]
        if len(self.labels) != len(self.mats):
            raise DimensionMismatch(f"{len(self.labels)} labels for {len(self.mats)} generators")
        self.metadata = dict(metadata or {})
        self._dense = None

    @property
    def exact(self):
        return all(m.exact for m in self.mats)

    def __len__(self):
        return len(self.mats)

    def __getitem__(self, k):
        return self.mats[k]

    def __iter__(self):
        return iter(self.mats)

    def dense(self):
        """Complex array of shape (count, dim, dim), built once."""
        if self._dense is None:
            self._dense = np.array([m.to_dense() for m in self.mats])
        return self._dense

    def with_mats(self, mats, labels=None):
        """Copy of this set (same class and metadata) holding other matrices."""
        out = copy.copy(self)
        out.mats = list(mats)
        out.labels = list(labels) if labels is not None else list(self.labels)
        out.metadata = dict(self.metadata)
        out._dense = None
        return out

    def to_float(self):
        if not self.exact:
            return self
        return self.with_mats([m.to_float() for m in self.mats])

    def subset(self, indices):
        indices = list(indices)
        return GeneratorSet(self.construction, self.rep_dim, [self.mats[k] for k in indices],
                            [self.labels[k] for k in indices], dict(self.metadata))

    def gram(self, norm=1.0):
        """Matrix of -tr(g_A g_B) / norm."""
        flat = self.dense().reshape(len(self), -1)
        flat_t = self.dense().transpose(0, 2, 1).reshape(len(self), -1)
        return -(flat @ flat_t.T) / norm

    def commutator(self, a, b):
        m = self.dense()
        return m[a] @ m[b] - m[b] @ m[a]

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"GeneratorSet({self.construction!r}, rep={self.rep_dim}, count={len(self)}, {mode})"


@dataclass
class StructureConstants:
    """c_{AB}^C with [g_A, g_B] = sum_C c_{AB}^C g_C.

    Attributes:
        tensor (np.ndarray): Shape (n, n, n), indexed [A, B, C].
        source (str): Construction tag of the generating set.
        residual (float): Worst reconstruction residual when solved from matrices.
    """

    tensor: np.ndarray
    source: str = ""
    residual: float = 0.0
    labels: list = field(default_factory=list)

    def __len__(self):
        return self.tensor.shape[0]

    def ad(self, a):
        """(ad g_A)_{CB} = c_{AB}^C."""
        return self.tensor[a].T

    def ad_matrices(self):
        return self.tensor.transpose(0, 2, 1)

    def killing(self):
        """K_{AB} = tr(ad g_A ad g_B)."""
        n = len(self)
        p = self.tensor.reshape(n, n * n)
        q = self.tensor.transpose(0, 2, 1).reshape(n, n * n)
        return p @ q.T

    def antisymmetry_residual(self):
        return float(np.max(np.abs(self.tensor + self.tensor.transpose(1, 0, 2))))


def _flat_sparse(mats):
    n, d, _ = mats.shape
    return scipy.sparse.csr_matrix(mats.reshape(n, d * d))


def structure_constants(g: GeneratorSet, tol=None, threads=None) -> StructureConstants:
    """Solve [g_A, g_B] = sum_C c_{AB}^C g_C against the Gram matrix of the set.

    Raises:
        NotClosed: If a commutator leaves the span by more than ``tol``.
    """
    settings = get_settings()
    tol = settings.closure_tol if tol is None else tol
    threads = settings.threads if threads is None else threads

    mats = g.dense()
    n, d, _ = mats.shape
    real = not np.any(np.abs(mats.imag) > 0)
    if real:
        mats = mats.real
    flat = _flat_sparse(mats)
    gram = (flat.conj() @ flat.T).toarray()
    factor = scipy.linalg.cho_factor(gram)
    horizontal = scipy.sparse.hstack([scipy.sparse.csr_matrix(m) for m in mats]).tocsr()
    vertical = scipy.sparse.vstack([scipy.sparse.csr_matrix(m) for m in mats]).tocsr()
    flat_conj = flat.conj()

    def solve_row(a):
        ma = scipy.sparse.csr_matrix(mats[a])
        left = (ma @ horizontal).toarray().reshape(d, n, d).transpose(1, 0, 2)
        right = (vertical @ ma).toarray().reshape(n, d, d)
        x = (left - right).reshape(n, d * d)
        coeffs = scipy.linalg.cho_solve(factor, flat_conj @ x.T)
        recon = (flat.T @ coeffs).T
        resid = np.abs(x - recon).max(axis=1) if n else np.zeros(0)
        return a, coeffs.T, resid

    dtype = float if real else complex
    tensor = np.zeros((n, n, n), dtype=dtype)
    worst, worst_pair = 0.0, None
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for a, rows, resid in pool.map(solve_row, range(n)):
            tensor[a] = rows
            if resid.size and resid.max() > worst:
                worst = float(resid.max())
                worst_pair = (a, int(resid.argmax()))
    logger.debug("structure constants of %r: worst residual %.3e", g, worst)
    if worst > tol:
        raise NotClosed(f"commutator {worst_pair} leaves the span of {g.construction} "
                        f"(residual {worst:.3e} > {tol:g})", residual=worst, pair=worst_pair)
    if not real and np.max(np.abs(tensor.imag)) < tol:
        tensor = tensor.real.copy()
    return StructureConstants(tensor=tensor, source=g.construction, residual=worst, labels=list(g.labels))


def killing_signature(g, tol=1e-9):
    """(n_plus, n_minus) of the Killing form tr(ad X ad Y).

    Args:
        g (GeneratorSet or StructureConstants): The algebra.
        tol (float): Relative threshold below which an eigenvalue counts as zero.
    """
    sc = g if isinstance(g, StructureConstants) else structure_constants(g)
    k = sc.killing()
    k = 0.5 * (k + k.conj().T)
    eig = np.linalg.eigvalsh(k.real if np.isrealobj(k) or np.max(np.abs(k.imag)) < tol else k)
    scale = max(1.0, float(np.max(np.abs(eig))))
    n_plus = int(np.sum(eig > tol * scale))
    n_minus = int(np.sum(eig < -tol * scale))
    return n_plus, n_minus


def weyl_trick(g: GeneratorSet, compact_subset) -> GeneratorSet:
    """Multiply the generators outside ``compact_subset`` by i.

    Raises:
        NotSubalgebra: If the compact subset does not close under the bracket.
    """
    compact = sorted(set(int(k) for k in compact_subset))
    if len(compact) < len(g):
        try:
            structure_constants(g.subset(compact))
        except NotClosed as exc:
            raise NotSubalgebra(f"compact subset of {g.construction} is not a subalgebra: {exc}") from exc
    keep = set(compact)
    factor = I if g.exact else 1j
    mats = [m if k in keep else m.scale(factor) for k, m in enumerate(g.mats)]
    out = g.with_mats(mats)
    out.metadata["weyl_compact"] = compact
    return out


def closure_residual(mats, subset_mats=None):
    """Worst residual of commutators among ``mats`` against the span of ``subset_mats``."""
    span = mats if subset_mats is None else subset_mats
    basis = np.array([m.ravel() for m in span])
    q, _ = np.linalg.qr(basis.T)
    worst = 0.0
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            x = (mats[a] @ mats[b] - mats[b] @ mats[a]).ravel()
            worst = max(worst, float(np.max(np.abs(x - q @ (q.conj().T @ x)))))
    return worst


def from_dense(construction, mats, labels=None, tol=1e-15, metadata=None) -> GeneratorSet:
    """Float GeneratorSet from an array of shape (count, dim, dim)."""
    mats = np.asarray(mats)
    return GeneratorSet(construction, mats.shape[1],
                        [SparseMatrix.from_dense(m, tol=tol) for m in mats], labels, metadata)
