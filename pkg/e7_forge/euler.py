"""Euler charts E7 = B exp(V) U of the three constructions.

A chart carries the torus generators on the 56, the polytope of torus
coordinates (rows of double inequalities lower < a . y < upper) and the
density of the invariant measure on it. The split construction also gets a
Haar sampler built on the SU(8) acting on wedge2(V) + wedge2(V*).
"""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
import scipy.linalg
import scipy.optimize
from scipy.special import roots_legendre

from .config import get_settings
from .errors import DimensionMismatch, NotCommuting, NotUnitary, OutOfRange
from .rep56 import DIM, NORM, SPLIT_TORUS, Rep56Set, evi_56, rho_split, split_56, tits_56
from .roots import (EVI_REFERENCE_INTERIOR, EVI_REFERENCE_SIMPLE, F4_HIGHEST, E7_HIGHEST,
                    SPLIT_SIMPLE_NAMES, classify_e7, extract_roots, split_root,
                    split_roots_closed_form)

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
TITS_RANGES_FILE = os.path.join(DATA_DIR, "tits_ranges.json")

# (x, y, z) = TITS_FORWARD @ (x52, x53, x54)
_R2, _R3, _R6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)
TITS_FORWARD = np.array([
    [_R6 / 3, 0.0, -2 * _R3 / 3],
    [np.sqrt(2.0 / 3.0), 1.0, 1 / _R3],
    [-np.sqrt(2.0 / 3.0), 1.0, -1 / _R3],
])
TITS_INVERSE = np.array([
    [1 / _R6, 1 / _R6, -1 / _R6],
    [0.0, 0.5, 0.5],
    [-1 / _R3, 1 / (2 * _R3), -1 / (2 * _R3)],
])
# rows z, y - z, x - y, x in (x, y, z) coordinates
_TITS_XYZ_ROWS = np.array([
    [0.0, 0.0, 1.0],
    [0.0, 1.0, -1.0],
    [1.0, -1.0, 0.0],
    [1.0, 0.0, 0.0],
])
TITS_X1_RANGE = (0.0, np.sqrt(2.0 / 3.0) * np.pi)


@dataclass
class GroupElement:
    """A 56x56 matrix of a group element and the construction it belongs to."""

    matrix: np.ndarray
    construction: str = ""

    def unitarity_residual(self):
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(len(m)))))

    def __matmul__(self, other):
        other_matrix = other.matrix if isinstance(other, GroupElement) else other
        return GroupElement(self.matrix @ other_matrix, self.construction)

    def trace(self):
        return complex(np.trace(self.matrix))


@dataclass
class EulerChart:
    """Torus, coordinate polytope and invariant density of one construction.

    Attributes:
        construction (str): "tits", "split", "evi" or "split-su8".
        torus (np.ndarray): Torus generators on the 56, shape (rank, 56, 56).
        inequalities (np.ndarray): Rows a_k with lower_k < a_k . y < upper_k.
        lower (np.ndarray): Lower bounds.
        upper (np.ndarray): Upper bounds.
        density (Callable): Weight of the invariant measure; accepts one
            coordinate vector or an array of them.
        coords (list): Names of the torus coordinates.
        roots (np.ndarray): Positive roots entering the density, if any.
        multiplicities (np.ndarray): Exponent of each root factor.
    """

    construction: str
    torus: np.ndarray
    inequalities: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    density: Callable
    coords: list
    roots: np.ndarray = None
    multiplicities: np.ndarray = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        t = self.torus
        worst = max((float(np.max(np.abs(a @ b - b @ a))) for a in t for b in t), default=0.0)
        if worst > get_settings().commute_tol:
            raise NotCommuting(f"{self.construction} torus generators do not commute "
                               f"(residual {worst:.3e})")
        if self.inequalities.shape[1] != len(t):
            raise DimensionMismatch(f"{self.inequalities.shape[1]} inequality columns "
                                    f"for a torus of rank {len(t)}")

    @property
    def rank(self):
        return len(self.torus)

    def contains(self, y, strict=True):
        """True if the coordinates satisfy every double inequality."""
        v = self.inequalities @ np.asarray(y, dtype=float)
        if strict:
            return bool(np.all(v > self.lower) and np.all(v < self.upper))
        return bool(np.all(v >= self.lower) and np.all(v <= self.upper))

    def torus_element(self, y):
        x = np.tensordot(np.asarray(y, dtype=float), self.torus, axes=1)
        return scipy.linalg.expm(x)


def root_density(roots, multiplicities=None):
    """y -> prod |sin(beta . y)|^m over the given roots."""
    roots = np.asarray(roots, dtype=float)
    mult = np.ones(len(roots)) if multiplicities is None else np.asarray(multiplicities, dtype=float)

    def density(y):
        s = np.abs(np.sin(np.asarray(y, dtype=float) @ roots.T))
        return np.prod(s ** mult, axis=-1)
    return density


# tits construction

def tits_to_xyz(x52, x53, x54):
    return tuple(TITS_FORWARD @ np.array([x52, x53, x54], dtype=float))


def xyz_to_tits(x, y, z):
    return tuple(TITS_INVERSE @ np.array([x, y, z], dtype=float))


def tits_density_xyz(x, y, z):
    """sin x sin y sin z times sin^8 of the six half sums and differences."""
    x, y, z = (np.asarray(v, dtype=float) for v in (x, y, z))
    out = np.sin(x) * np.sin(y) * np.sin(z)
    for a, b in ((x, y), (x, z), (y, z)):
        out = out * np.sin((a - b) / 2) ** 8 * np.sin((a + b) / 2) ** 8
    return out


def tits_density(x52, x53, x54):
    """W(x52, x53, x54), the nine-factor product in the torus coordinates."""
    p = np.stack([np.asarray(v, dtype=float) for v in (x52, x53, x54)], axis=-1)
    xyz = p @ TITS_FORWARD.T
    return tits_density_xyz(xyz[..., 0], xyz[..., 1], xyz[..., 2])


def _tits_chart_density(y):
    y = np.asarray(y, dtype=float)
    return tits_density(y[..., 0], y[..., 1], y[..., 2])


def _bound_value(coeff):
    # [p, q, r] stands for (p/q) sqrt(r) pi
    if coeff is None:
        return None
    p, q, r = coeff
    return p / q * math.sqrt(r) * math.pi


def _coupled_bound(coupling, values):
    # [k, p, q, r] stands for (p/q) sqrt(r) x_k
    k, p, q, r = coupling
    return p / q * math.sqrt(r) * values[k - 1]


def tits_ranges(path=TITS_RANGES_FILE):
    """The 133 coordinate ranges of the tits chart.

    Bounds are stored as numeric coefficients next to their text form. A
    bound coupled to another coordinate carries "lower_coupled" or
    "upper_coupled" instead; :func:`resolve_tits_bounds` evaluates those.

    Returns:
        list: One dict per coordinate with "index", "lower", "upper" (text),
        "lower_value", "upper_value" (float, or None when the bound is
        coupled to another coordinate or the coordinate lies on the torus)
        and "note".
    """
    with open(path, "r", encoding="utf-8") as f:
        table = json.load(f)
    if len(table) != 133:
        raise DimensionMismatch(f"range table has {len(table)} entries, expected 133")
    out = []
    for entry in table:
        row = dict(entry)
        row["lower_value"] = _bound_value(entry["lower_pi"])
        row["upper_value"] = _bound_value(entry["upper_pi"])
        out.append(row)
    return out


def resolve_tits_bounds(ranges, values):
    """Lower and upper bounds of every coordinate given the point ``values``.

    Args:
        ranges (list): Output of :func:`tits_ranges`.
        values: The 133 coordinates x1 ... x133.

    Returns:
        list: (lower, upper) pairs, None on the torus coordinates.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (len(ranges),):
        raise DimensionMismatch(f"expected {len(ranges)} coordinates, got shape {values.shape}")
    out = []
    for row in ranges:
        lower, upper = row["lower_value"], row["upper_value"]
        if "lower_coupled" in row:
            lower = _coupled_bound(row["lower_coupled"], values)
        if "upper_coupled" in row:
            upper = _coupled_bound(row["upper_coupled"], values)
        out.append((lower, upper))
    return out


def integrate_tits_density(n=48):
    """Gauss-Legendre integral of W over 0 <= z <= y <= x <= pi.

    x = pi u1, y = x u2, z = y u3 maps the unit cube onto the ordered simplex.
    """
    nodes, weights = roots_legendre(n)
    u = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    u1, u2, u3 = np.meshgrid(u, u, u, indexing="ij")
    w1, w2, w3 = np.meshgrid(w, w, w, indexing="ij")
    x = np.pi * u1
    y = x * u2
    z = y * u3
    jac = np.pi * x * y
    return float(np.sum(w1 * w2 * w3 * jac * tits_density_xyz(x, y, z)))


def chart_tits(tits: Rep56Set = None) -> EulerChart:
    """Torus V = {Y_2, Y_82, Y_99} with coordinates (x52, x53, x54)."""
    tits = tits_56() if tits is None else tits
    torus = tits.to_float().dense()[list(tits.torus_indices)]
    rows = _TITS_XYZ_ROWS @ TITS_FORWARD
    return EulerChart(
        construction="tits",
        torus=torus,
        inequalities=rows,
        lower=np.zeros(4),
        upper=np.full(4, np.pi),
        density=_tits_chart_density,
        coords=["x52", "x53", "x54"],
        metadata={"x1_range": TITS_X1_RANGE, "jacobian_xyz": 1 / (2 * _R2)},
    )


# split construction

def _highest_row(simple, coefficients):
    return np.asarray(coefficients, dtype=float) @ np.asarray(simple, dtype=float)


def split_simple_roots():
    return np.array([split_root(name) for name in SPLIT_SIMPLE_NAMES])


def chart_split(split: Rep56Set = None) -> EulerChart:
    """Torus D_1 .. D_7; range from the simple roots and the highest root."""
    split = split_56() if split is None else split
    torus = split.to_float().dense()[list(SPLIT_TORUS)]
    simple = split_simple_roots()
    rows = np.vstack([simple, _highest_row(simple, E7_HIGHEST)])
    names, positive = split_roots_closed_form()
    return EulerChart(
        construction="split",
        torus=torus,
        inequalities=rows,
        lower=np.zeros(8),
        upper=np.full(8, np.pi),
        density=root_density(positive),
        coords=[f"y{k}" for k in range(1, 8)],
        roots=positive,
        multiplicities=np.ones(len(positive), dtype=int),
        metadata={"root_names": names},
    )


def split_density_determinant(y, split: Rep56Set = None):
    """|det(Pi o Ad_exp(-V))| from su(8) to its complement, by brute force.

    With X = sum y_a D_a, entry (k, j) is -tr(T_k e^{-X} U_j e^{X}) / 12 for
    U_j the 63 su(8) generators and T_k the 63 generators after the torus.
    """
    split = split_56() if split is None else split
    m = split.to_float().dense()
    x = np.tensordot(np.asarray(y, dtype=float), m[list(SPLIT_TORUS)], axes=1)
    e_minus, e_plus = scipy.linalg.expm(-x), scipy.linalg.expm(x)
    compact = m[:SPLIT_TORUS[0]]
    complement = m[SPLIT_TORUS[-1] + 1:]
    moved = e_minus @ compact @ e_plus
    t = -np.einsum("kab,jba->kj", complement, moved) / NORM
    return float(abs(np.linalg.det(t.real)))


def chart_split_su8(split: Rep56Set = None, seed=0) -> EulerChart:
    """Split chart whose torus lies in the complement of the SU(8) acting on V.

    The complement of span{A_kl, D_a, S_kl} is spanned by calA_I and calS_I.
    The centralizer there of a generic element is a maximal torus H'; its
    simple roots are matched with those of D_1 .. D_7 by M = S'^-1 S, so the
    chart shares the coordinates, range and density of :func:`chart_split`.

    Raises:
        DimensionMismatch: If the centralizer is not 7-dimensional.
    """
    split = split_56() if split is None else split
    g = split.to_float()
    m = g.dense()
    n = len(m)
    complement = [k for k in range(n) if 28 <= k < 63 or k >= 98]
    rng = np.random.default_rng(seed)
    x1 = np.tensordot(rng.normal(size=len(complement)), m[complement], axes=1)
    brackets = np.array([(x1 @ m[k] - m[k] @ x1).ravel() for k in complement]).T
    kernel = scipy.linalg.null_space(np.vstack([brackets.real, brackets.imag]), rcond=1e-9)
    if kernel.shape[1] != 7:
        raise DimensionMismatch(f"centralizer of a generic element has dimension {kernel.shape[1]}, expected 7")
    rows = np.zeros((7, n))
    rows[:, complement] = kernel.T
    rd = extract_roots(g, rows, seed=seed)
    report = classify_e7(rd, named=None)
    s_prime = report["datum"].simple_roots()
    s = split_simple_roots()
    coord_map = np.linalg.solve(s_prime, s)
    h_prime = np.tensordot(rows, m, axes=1)
    torus = np.tensordot(coord_map.T, h_prime, axes=1)
    base = chart_split(split)
    logger.info("su(8) complement chart: torus of rank 7, coordinate map condition %.3e",
                np.linalg.cond(coord_map))
    return EulerChart(
        construction="split-su8",
        torus=torus,
        inequalities=base.inequalities,
        lower=base.lower,
        upper=base.upper,
        density=base.density,
        coords=base.coords,
        roots=base.roots,
        multiplicities=base.multiplicities,
        metadata={"coord_map": coord_map, "cartan_rows": rows, "root_datum": report["datum"]},
    )


# evi construction

def evi_reference_roots():
    """Positive restricted roots and multiplicities in the evi chart coordinates."""
    roots = []
    for i in range(4):
        e = np.zeros(4)
        e[i] = 1.0
        roots += [e, -e]
        for j in range(i + 1, 4):
            for si in (1, -1):
                for sj in (1, -1):
                    r = np.zeros(4)
                    r[i], r[j] = si, sj
                    roots.append(r)
    for signs in np.ndindex(2, 2, 2, 2):
        roots.append(0.5 * (1 - 2 * np.array(signs, dtype=float)))
    roots = np.array(roots)
    positive = roots[roots @ EVI_REFERENCE_INTERIOR > 0]
    norms = np.einsum("ij,ij->i", positive, positive)
    mult = np.where(norms > 1.5, 1, 4)
    return positive, mult


def chart_evi(evi: Rep56Set = None) -> EulerChart:
    """Torus H4 = {L_70, L_86, L_103, L_120} with the F4 range and density."""
    evi = evi_56() if evi is None else evi
    torus = evi.to_float().dense()[list(evi.torus_indices)]
    simple = EVI_REFERENCE_SIMPLE
    rows = np.vstack([simple, _highest_row(simple, F4_HIGHEST)])
    positive, mult = evi_reference_roots()
    return EulerChart(
        construction="evi",
        torus=torus,
        inequalities=rows,
        lower=np.zeros(5),
        upper=np.full(5, np.pi),
        density=root_density(positive, mult),
        coords=[f"y{k}" for k in range(1, 5)],
        roots=positive,
        multiplicities=mult,
        metadata={"torus_labels": [evi.labels[k] for k in evi.torus_indices]},
    )


# polytope helpers

def chebyshev_center(chart: EulerChart):
    """Center and radius of the largest ball inside the coordinate polytope."""
    a = chart.inequalities
    norms = np.linalg.norm(a, axis=1)
    r = chart.rank
    a_ub = np.vstack([np.hstack([a, norms[:, None]]), np.hstack([-a, norms[:, None]])])
    b_ub = np.concatenate([chart.upper, -chart.lower])
    c = np.zeros(r + 1)
    c[-1] = -1.0
    res = scipy.optimize.linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * r + [(0, None)],
                                 method="highs")
    if not res.success:
        raise OutOfRange(f"coordinate polytope of {chart.construction} is empty: {res.message}")
    return res.x[:r], float(res.x[-1])


def split_alcove_points(chart: EulerChart, n, rng):
    """Uniform interior points of the split alcove, from Dirichlet weights on its vertices."""
    s = chart.inequalities[:-1]
    top = np.asarray(E7_HIGHEST, dtype=float)
    vertices = np.vstack([np.zeros(chart.rank), np.linalg.solve(s, np.diag(np.pi / top)).T])
    return rng.dirichlet(np.ones(chart.rank + 1), size=n) @ vertices


def _as_matrix(x):
    if x is None:
        return np.eye(DIM, dtype=complex)
    return x.matrix if isinstance(x, GroupElement) else np.asarray(x, dtype=complex)


def assemble(b, torus_coords, u, chart: EulerChart, tol=None) -> GroupElement:
    """B exp(sum y_k V_k) U.

    Raises:
        OutOfRange: If the coordinates leave the chart polytope.
        NotUnitary: If the product is not unitary within ``tol``.
    """
    tol = get_settings().unitarity_tol if tol is None else tol
    if not chart.contains(torus_coords, strict=False):
        raise OutOfRange(f"coordinates {np.asarray(torus_coords)} lie outside the {chart.construction} range")
    g = GroupElement(_as_matrix(b) @ chart.torus_element(torus_coords) @ _as_matrix(u), chart.construction)
    residual = g.unitarity_residual()
    if residual > tol:
        raise NotUnitary(f"assembled element has unitarity residual {residual:.3e}")
    return g


# SU(8) and the Haar sampler

def su8_embed(u, tol=1e-10) -> GroupElement:
    """u ^ u on wedge2(V) and conj(u) ^ conj(u) on wedge2(V*).

    Raises:
        NotUnitary: If u is not in SU(8) within ``tol``.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (8, 8):
        raise DimensionMismatch(f"su8_embed expects an 8x8 matrix, got {u.shape}")
    residual = float(np.max(np.abs(u.conj().T @ u - np.eye(8))))
    det_gap = abs(np.linalg.det(u) - 1.0)
    if residual > tol or det_gap > tol:
        raise NotUnitary(f"matrix is not in SU(8): unitarity residual {residual:.3e}, |det - 1| = {det_gap:.3e}")
    return GroupElement(rho_split(u, group=True), "split")


def haar_su8(rng):
    """Haar-random element of SU(8) from the QR decomposition of a Ginibre matrix."""
    z = (rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))[None, :]
    return q / np.linalg.det(q) ** (1.0 / 8.0)


@lru_cache(maxsize=1)
def default_su8_chart() -> EulerChart:
    return chart_split_su8()


class SplitHaarSampler:
    """Haar sampling on the compact E7 through its split chart.

    Elements are su8_embed(u1) exp(V(y)) su8_embed(u2) with u1, u2 Haar on
    SU(8) and y drawn from |f| on the alcove by rejection against max |f|.

    Args:
        chart (EulerChart): A chart from :func:`chart_split_su8`.
        seed (int): Seed of the numpy Generator.
        batch (int): Proposals drawn per rejection round.
    """

    def __init__(self, chart: EulerChart = None, seed=0, batch=4096):
        self.chart = default_su8_chart() if chart is None else chart
        self.rng = np.random.default_rng(seed)
        self.batch = batch
        s = self.chart.inequalities[:-1]
        n = np.asarray(E7_HIGHEST, dtype=float)
        # alcove vertices: 0 and the points with alpha_i = pi / n_i, alpha_j = 0
        self.vertices = np.vstack([np.zeros(7), np.linalg.solve(s, np.diag(np.pi / n)).T])
        self.envelope = self._envelope()
        self.proposed = 0
        self.accepted = 0
        self._pending = []

    def _from_logits(self, z):
        logits = np.concatenate([[0.0], z])
        w = np.exp(logits - logits.max())
        return (w / w.sum()) @ self.vertices

    def _envelope(self):
        center, _ = chebyshev_center(self.chart)
        best = float(self.chart.density(center))

        def objective(z):
            value = float(self.chart.density(self._from_logits(z)))
            return np.inf if value <= 0 else -np.log(value)
        res = scipy.optimize.minimize(objective, np.zeros(7), method="Nelder-Mead",
                                      options={"maxiter": 20000, "xatol": 1e-10, "fatol": 1e-12})
        if np.isfinite(res.fun):
            best = max(best, float(np.exp(-res.fun)))
        logger.debug("split density envelope %.6e", best)
        return best * (1 + 1e-6)

    @property
    def acceptance_rate(self):
        return self.accepted / self.proposed if self.proposed else 0.0

    def draw_coords(self):
        """One torus coordinate vector distributed as |f| on the alcove."""
        while not self._pending:
            w = self.rng.dirichlet(np.ones(8), size=self.batch)
            y = w @ self.vertices
            f = self.chart.density(y)
            keep = self.rng.uniform(size=self.batch) * self.envelope < f
            self.proposed += self.batch
            self.accepted += int(keep.sum())
            self._pending.extend(y[keep])
        return self._pending.pop(0)

    def sample(self):
        """(GroupElement, torus coordinates) of one Haar draw."""
        u1 = haar_su8(self.rng)
        u2 = haar_su8(self.rng)
        y = self.draw_coords()
        g = su8_embed(u1).matrix @ self.chart.torus_element(y) @ su8_embed(u2).matrix
        return GroupElement(g, "split"), y


def haar_sample_split(seed=0, n=None, chart: EulerChart = None):
    """Haar-distributed E7 element(s) in the split 56, deterministic in ``seed``.

    Returns:
        GroupElement when ``n`` is None, otherwise a list of ``n`` of them.
    """
    sampler = SplitHaarSampler(chart, seed=seed)
    count = 1 if n is None else n
    out = [sampler.sample()[0] for _ in range(count)]
    logger.info("drew %d Haar elements, acceptance rate %.3e", count, sampler.acceptance_rate)
    return out[0] if n is None else out
