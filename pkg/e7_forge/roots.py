"""Root systems of the constructions.

Roots are read off the adjoint action of a torus: for a compact generator set
ad(H) is real antisymmetric in the orthonormal basis, so -i ad(H) is
hermitian and its eigenvalues on a simultaneous eigenvector are the values
beta(H) of a root. Covectors are expressed in the coordinates of the chosen
torus basis.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .config import get_settings
from .errors import DimensionMismatch, NotClosed, NotCommuting, NotDiagonalizable, WrongType
from .generators import GeneratorSet, StructureConstants, from_dense, structure_constants
from .rep56 import NORM, QUADS_0, Rep56Set, split_diagonals
from .report import get_tab_str

logger = logging.getLogger(__name__)

E7_CARTAN = np.array([
    [2, 0, -1, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0],
    [0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, -1, 2],
])
E7_HIGHEST = (2, 2, 3, 4, 3, 2, 1)

# simple roots alpha_1..alpha_7 of the split construction, by the pairs and
# tetra-index they come from
SPLIT_SIMPLE_NAMES = ("45", "12", "34", "23", "3458", "78", "67")

# order alpha_1 (short, next to a long root), alpha_2 (long, next to a short
# root), alpha_3 (short end), alpha_4 (long end)
F4_CARTAN = np.array([
    [2, -1, -1, 0],
    [-2, 2, 0, -1],
    [-1, 0, 2, 0],
    [0, -1, 0, 2],
])
F4_HIGHEST = (4, 3, 2, 2)
EVI_REFERENCE_SIMPLE = np.array([
    [-0.5, 0.5, 0.5, -0.5],
    [0.0, 0.0, -1.0, 1.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 1.0, 0.0],
])
EVI_REFERENCE_INTERIOR = np.array([0.1, 0.5, 0.7, 0.8])


@dataclass
class RootDatum:
    """Roots of a torus acting on a Lie algebra.

    Attributes:
        roots (np.ndarray): Shape (m, rank), one covector per row.
        multiplicities (np.ndarray): Dimension of each root space.
        positive (np.ndarray): Boolean mask of the positive system.
        simple (list): Row indices of the simple roots, in labelled order.
        highest (int): Row index of the highest root.
        zero_dim (int): Dimension of the centralizer of the torus.
        cartan (list): Labels of the torus basis.
    """

    roots: np.ndarray
    multiplicities: np.ndarray
    positive: np.ndarray
    simple: list = field(default_factory=list)
    highest: int = None
    zero_dim: int = 0
    cartan: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def rank(self):
        return self.roots.shape[1]

    def __len__(self):
        return len(self.roots)

    def positive_roots(self):
        return self.roots[self.positive]

    def simple_roots(self):
        return self.roots[self.simple]

    def coefficients(self, vector):
        """Coordinates of ``vector`` in the simple-root basis."""
        s = self.simple_roots()
        coeffs, *_ = np.linalg.lstsq(s.T, np.asarray(vector, dtype=float), rcond=None)
        return coeffs

    def highest_coefficients(self):
        return tuple(int(round(c)) for c in self.coefficients(self.roots[self.highest]))

    def multiplicity_histogram(self):
        values, counts = np.unique(self.multiplicities, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def to_dict(self):
        return {
            "cartan": list(self.cartan),
            "zero_dim": self.zero_dim,
            "simple": [int(k) for k in self.simple],
            "highest": None if self.highest is None else int(self.highest),
            "roots": [
                {"coefficients": [float(x) for x in r], "multiplicity": int(m), "positive": bool(p)}
                for r, m, p in zip(self.roots, self.multiplicities, self.positive)
            ],
        }

    def get_as_string(self, tab_str="  ", level=0):
        out_tab_str = get_tab_str(tab_str, level)
        out_tab_str2 = get_tab_str(tab_str, level + 1)
        out_string = "%sRoot Count     : %d\n" % (out_tab_str, len(self))
        out_string += "%sPositive Count : %d\n" % (out_tab_str, int(self.positive.sum()))
        out_string += "%sCentralizer    : %d\n" % (out_tab_str, self.zero_dim)
        for k, idx in enumerate(self.simple):
            out_string += "%salpha_%d: %s\n" % (
                out_tab_str2, k + 1, np.array2string(self.roots[idx], precision=4, suppress_small=True))
        for r, m, p in zip(self.roots, self.multiplicities, self.positive):
            if p:
                out_string += "%s%s mult %d\n" % (
                    out_tab_str2, np.array2string(r, precision=4, suppress_small=True), m)
        return out_string


def _cartan_rows(n, cartan):
    cartan = np.asarray(cartan)
    if cartan.ndim == 1:
        rows = np.zeros((len(cartan), n))
        rows[np.arange(len(cartan)), cartan.astype(int)] = 1.0
        return rows
    return cartan.astype(float)


def lex_positive(roots, tol=1e-7):
    """Positive if the last coordinate that is not zero is positive."""
    out = np.zeros(len(roots), dtype=bool)
    for k, r in enumerate(roots):
        for x in r[::-1]:
            if abs(x) > tol:
                out[k] = x > 0
                break
    return out


def find_simple(roots, positive, tol=1e-7):
    """Positive roots that are not the sum of two positive roots."""
    pos = np.flatnonzero(positive)
    p = roots[pos]
    sums = p[:, None, :] + p[None, :, :]
    simple = []
    for k, r in zip(pos, p):
        hit = np.max(np.abs(sums - r), axis=2) < tol
        if not hit.any():
            simple.append(int(k))
    return simple


def cartan_matrix(simple_roots):
    """A_ij = 2 <alpha_i, alpha_j> / <alpha_j, alpha_j>."""
    s = np.asarray(simple_roots, dtype=float)
    gram = s @ s.T
    return np.rint(2 * gram / np.diag(gram)[None, :]).astype(int)


def fundamental_weights(simple_roots):
    """Rows lambda^j with 2 <alpha_i, lambda^j> / <alpha_i, alpha_i> = delta_ij."""
    s = np.asarray(simple_roots, dtype=float)
    half_norms = 0.5 * np.einsum("ij,ij->i", s, s)
    return np.linalg.solve(s, np.diag(half_norms)).T


def highest_root(roots, positive, simple):
    """Index of the positive root of largest height."""
    s = roots[simple]
    pos = np.flatnonzero(positive)
    coeffs, *_ = np.linalg.lstsq(s.T, roots[pos].T, rcond=None)
    heights = coeffs.sum(axis=0)
    return int(pos[int(np.argmax(heights))])


def extract_roots(g: GeneratorSet, cartan, sc: StructureConstants = None, tol=None, seed=0) -> RootDatum:
    """Simultaneous eigencovectors of ad restricted to a torus.

    Args:
        g (GeneratorSet): Compact generator set.
        cartan (list or np.ndarray): Generator indices, or rows of
            coefficients over the generators.
        sc (StructureConstants): Structure constants of ``g`` if already solved.
        tol (float): Eigenvalue clustering tolerance.
        seed (int): Seed of the generic torus element.

    Raises:
        NotCommuting: If the torus generators do not commute.
        NotDiagonalizable: If a cluster is not a joint eigenspace.
    """
    settings = get_settings()
    tol = settings.cluster_tol if tol is None else tol
    sc = structure_constants(g.to_float()) if sc is None else sc
    n = len(sc)
    rows = _cartan_rows(n, cartan)
    if np.asarray(cartan).ndim == 2:
        labels = [f"H_{k + 1}" for k in range(len(rows))]
    else:
        labels = [g.labels[int(k)] for k in cartan]

    mats = np.tensordot(rows, g.dense(), axes=1)
    worst = max((float(np.max(np.abs(a @ b - b @ a))) for a in mats for b in mats), default=0.0)
    if worst > settings.commute_tol:
        raise NotCommuting(f"torus generators {labels} do not commute (residual {worst:.3e})")

    ads = np.tensordot(rows, sc.ad_matrices(), axes=1)
    herm_ads = [-1j * a for a in ads]
    weights = np.random.default_rng(seed).normal(size=len(rows))
    h = sum(w * a for w, a in zip(weights, herm_ads))
    h = 0.5 * (h + h.conj().T)
    evals, evecs = scipy.linalg.eigh(h)

    clusters = [[0]]
    for k in range(1, len(evals)):
        if evals[k] - evals[clusters[-1][-1]] <= tol * max(1.0, abs(evals[k])):
            clusters[-1].append(k)
        else:
            clusters.append([k])

    roots, mults, zero_dim = [], [], 0
    for cluster in clusters:
        p = evecs[:, cluster]
        values = []
        for a in herm_ads:
            comp = p.conj().T @ a @ p
            value = np.trace(comp) / len(cluster)
            residual = float(np.max(np.abs(comp - value * np.eye(len(cluster)))))
            if residual > settings.diagonal_tol:
                raise NotDiagonalizable(f"eigenspace of size {len(cluster)} is not a joint eigenspace "
                                        f"(residual {residual:.3e})")
            values.append(value.real)
        values = np.array(values)
        if np.max(np.abs(values)) < tol:
            zero_dim += len(cluster)
        else:
            roots.append(values)
            mults.append(len(cluster))
    roots = np.array(roots)
    positive = lex_positive(roots, tol)
    simple = find_simple(roots, positive, tol=1e-6)
    top = highest_root(roots, positive, simple) if simple else None
    logger.info("extracted %d roots (%d positive) of rank %d, centralizer %d",
                len(roots), int(positive.sum()), len(rows), zero_dim)
    return RootDatum(roots, np.array(mults), positive, simple, top, zero_dim, labels)


def _arms(adjacency, center):
    arms = []
    for start in np.flatnonzero(adjacency[center]):
        arm, prev, cur = [int(start)], center, int(start)
        while True:
            nxt = [int(x) for x in np.flatnonzero(adjacency[cur]) if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    return arms


def bourbaki_e7_order(cartan):
    """Permutation putting seven simple roots in Bourbaki order.

    alpha_4 is the branch node, alpha_2 the arm of length one, alpha_3 and
    alpha_1 the arm of length two, alpha_5, alpha_6, alpha_7 the arm of
    length three.

    Raises:
        WrongType: If the diagram is not E7.
    """
    a = np.asarray(cartan)
    adjacency = (a != 0) & ~np.eye(len(a), dtype=bool)
    degrees = adjacency.sum(axis=1)
    branch = np.flatnonzero(degrees == 3)
    if len(a) != 7 or len(branch) != 1:
        raise WrongType("Dynkin diagram has no unique branch node", cartan=a)
    center = int(branch[0])
    arms = sorted(_arms(adjacency, center), key=len)
    if [len(x) for x in arms] != [1, 2, 3]:
        raise WrongType(f"arm lengths {[len(x) for x in arms]}, expected 1, 2, 3", cartan=a)
    one, two, three = arms
    return [two[1], one[0], two[0], center, three[0], three[1], three[2]]


def f4_order(simple_roots):
    """Permutation of four simple roots to (short next to long, long next to short, short, long)."""
    s = np.asarray(simple_roots, dtype=float)
    norms = np.einsum("ij,ij->i", s, s)
    a = cartan_matrix(s)
    short = [k for k in range(4) if norms[k] < norms.max() * 0.75]
    long_ = [k for k in range(4) if k not in short]
    if len(short) != 2 or len(long_) != 2:
        raise WrongType("simple roots are not two short and two long", cartan=a)
    adjacent = [(i, j) for i in short for j in long_ if a[i, j] != 0]
    if len(adjacent) != 1:
        raise WrongType("no unique short-long bond", cartan=a)
    s1, l1 = adjacent[0]
    s2 = next(k for k in short if k != s1)
    l2 = next(k for k in long_ if k != l1)
    return [s1, l1, s2, l2]


# split construction

def split_root(name):
    """beta_kl (two digits) or beta_{i1 i2 i3 i4} (four digits) in D coordinates."""
    d = split_diagonals()
    idx = [int(c) - 1 for c in name]
    if len(idx) == 2:
        return (d[:, idx[0]] - d[:, idx[1]]) / np.sqrt(2.0)
    if len(idx) == 4:
        return d[:, idx].sum(axis=1) / np.sqrt(2.0)
    raise ValueError(f"root name must have two or four digits, got {name!r}")


def split_roots_closed_form():
    """The 63 positive roots beta_kl (k < l) and beta_I (I in QUADS_0), with names."""
    names = [f"{k}{l}" for k in range(1, 9) for l in range(k + 1, 9)]
    names += ["".join(str(v + 1) for v in q) for q in QUADS_0]
    return names, np.array([split_root(n) for n in names])


def classify_e7(rd: RootDatum, named=SPLIT_SIMPLE_NAMES, tol=1e-8):
    """Confirm an E7 root system and label its simple roots.

    Args:
        rd (RootDatum): Full root system on a rank-7 torus.
        named (tuple): Names of the expected simple roots in D coordinates,
            or None to skip the comparison.

    Returns:
        dict: Counts, Cartan matrix, highest-root coefficients, residuals and
        the relabelled datum under "datum".

    Raises:
        WrongType: If the root system is not E7, or if ``named`` is given and
            the simple roots differ from it by more than ``tol``.
    """
    if len(rd) != 126 or np.any(rd.multiplicities != 1):
        raise WrongType(f"{len(rd)} roots with multiplicities {rd.multiplicity_histogram()}, expected 126 x 1")
    if int(rd.positive.sum()) != 63 or len(rd.simple) != 7:
        raise WrongType(f"{int(rd.positive.sum())} positive and {len(rd.simple)} simple roots")
    a = cartan_matrix(rd.simple_roots())
    order = bourbaki_e7_order(a)
    simple = [rd.simple[k] for k in order]
    a = cartan_matrix(rd.roots[simple])
    if not np.array_equal(a, E7_CARTAN):
        raise WrongType("Cartan matrix is not E7", cartan=a)
    datum = dataclasses.replace(rd, simple=simple, highest=highest_root(rd.roots, rd.positive, simple))
    highest = datum.highest_coefficients()
    if highest != E7_HIGHEST:
        raise WrongType(f"highest root coefficients {highest}, expected {E7_HIGHEST}", cartan=a)
    s = datum.simple_roots()
    weights = fundamental_weights(s)
    duality = float(np.max(np.abs(s @ weights.T - np.eye(7))))
    norms = float(np.max(np.abs(np.einsum("ij,ij->i", rd.roots, rd.roots) - 2.0)))
    report = {
        "roots": len(rd),
        "positive": int(rd.positive.sum()),
        "simple": simple,
        "cartan": a.tolist(),
        "highest_coefficients": highest,
        "duality_residual": duality,
        "norm_residual": norms,
        "named_residual": None,
        "datum": datum,
    }
    if named is not None:
        expected = np.array([split_root(n) for n in named])
        report["named_residual"] = float(np.max(np.abs(s - expected)))
        if report["named_residual"] > tol:
            raise WrongType(f"simple roots differ from beta_{', beta_'.join(named)} by "
                            f"{report['named_residual']:.3e}", cartan=a)
    return report


# evi construction

def restricted_roots_evi(g: Rep56Set, sc: StructureConstants = None) -> RootDatum:
    """Restricted roots of the evi torus H4 with multiplicities.

    Raises:
        WrongType: Unless the system is F4 with long roots of multiplicity 1
            and short roots of multiplicity 4.
    """
    rd = extract_roots(g, g.torus_indices, sc=sc)
    if rd.rank != 4 or len(rd) != 48 or len(rd.simple) != 4:
        raise WrongType(f"restricted system of rank {rd.rank} with {len(rd)} roots, expected F4")
    order = f4_order(rd.simple_roots())
    simple = [rd.simple[k] for k in order]
    a = cartan_matrix(rd.roots[simple])
    if not np.array_equal(a, F4_CARTAN):
        raise WrongType("restricted Cartan matrix is not F4", cartan=a)
    norms = np.einsum("ij,ij->i", rd.roots, rd.roots)
    long_norm = norms.max()
    for norm, mult in zip(norms, rd.multiplicities):
        expected = 1 if abs(norm - long_norm) < 1e-6 * long_norm else 4
        if mult != expected:
            raise WrongType(f"root of norm^2 {norm:.6f} has multiplicity {mult}, expected {expected}",
                            cartan=a)
    datum = dataclasses.replace(rd, simple=simple, highest=highest_root(rd.roots, rd.positive, simple))
    if datum.highest_coefficients() != F4_HIGHEST:
        raise WrongType(f"highest restricted root {datum.highest_coefficients()}, expected {F4_HIGHEST}",
                        cartan=a)
    datum.metadata["type"] = "F4"
    return datum


def commutant_evi(g: Rep56Set, sc: StructureConstants = None, rcond=1e-10) -> GeneratorSet:
    """Centralizer of the torus H4 inside spin(12) + su(2).

    Returns:
        GeneratorSet: Nine orthonormal generators; metadata["coefficients"]
        holds their coordinates over the full evi basis.

    Raises:
        DimensionMismatch: If the centralizer is not 9-dimensional.
    """
    sc = structure_constants(g.to_float()) if sc is None else sc
    compact = list(g.compact_indices)
    c = sc.tensor
    blocks = [c[compact][:, t, :] for t in g.torus_indices]
    m = np.concatenate([b.T for b in blocks], axis=0)
    kernel = scipy.linalg.null_space(m, rcond=rcond)
    if kernel.shape[1] != 9:
        raise DimensionMismatch(f"commutant of the evi torus has dimension {kernel.shape[1]}, expected 9")
    coeffs = np.zeros((9, len(g)))
    coeffs[:, compact] = kernel.T
    mats = np.tensordot(coeffs, g.to_float().dense(), axes=1)
    out = from_dense("evi-commutant", mats, [f"K_{k + 1}" for k in range(9)])
    out.metadata["coefficients"] = coeffs
    return out


def in_span(vector, rows):
    """Distance of ``vector`` from the span of orthonormal ``rows``."""
    v = np.asarray(vector, dtype=float)
    return float(np.linalg.norm(v - rows.T @ (rows @ v)))


def _bracket_leak(left, right, target):
    # worst component of [left, right] outside the span of target
    basis = np.array([t.ravel() for t in target])
    q, _ = np.linalg.qr(basis.T)
    worst = 0.0
    for a in left:
        for b in right:
            x = (a @ b - b @ a).ravel()
            worst = max(worst, float(np.max(np.abs(x - q @ (q.conj().T @ x)))))
    return worst


def commutant_ideals(k_set: GeneratorSet, g: Rep56Set, tol=1e-8):
    """Split the commutant into its 6- and 3-dimensional ideals.

    The 6-dimensional ideal is the part of the commutant inside F4; the
    3-dimensional one is its orthogonal complement.

    Returns:
        tuple: (ideal6, ideal3) GeneratorSets, each with metadata["residual"].

    Raises:
        DimensionMismatch: If the ideals do not have dimensions 6 and 3.
        NotClosed: If either ideal is not closed under brackets with the
            commutant, or the two ideals fail to commute.
    """
    coeffs = k_set.metadata["coefficients"]
    f4 = set(g.metadata["f4_members"])
    outside = [k for k in range(len(g)) if k not in f4]
    inner = scipy.linalg.null_space(coeffs[:, outside].T, rcond=1e-10)
    if inner.shape[1] != 6:
        raise DimensionMismatch(f"commutant meets F4 in dimension {inner.shape[1]}, expected 6")
    rest = scipy.linalg.null_space(inner.T)
    if rest.shape[1] != 3:
        raise DimensionMismatch(f"complement of the F4 part has dimension {rest.shape[1]}, expected 3")
    dense = k_set.dense()
    six = np.tensordot(inner.T, dense, axes=1)
    three = np.tensordot(rest.T, dense, axes=1)
    residual = max(_bracket_leak(dense, six, six), _bracket_leak(dense, three, three),
                   max(float(np.max(np.abs(a @ b - b @ a))) for a in six for b in three))
    if residual > tol:
        raise NotClosed(f"commutant ideals leak by {residual:.3e}", residual=residual)
    ideal6 = from_dense("evi-commutant-so4", six, [f"K6_{k + 1}" for k in range(6)],
                        metadata={"residual": residual, "coefficients": inner.T @ coeffs})
    ideal3 = from_dense("evi-commutant-su2", three, [f"K3_{k + 1}" for k in range(3)],
                        metadata={"residual": residual, "coefficients": rest.T @ coeffs})
    return ideal6, ideal3


def inner_56(a, b):
    return float(np.real(-np.trace(a @ b) / NORM))
