"""The 56-dimensional representation in the tits, split and evi constructions.

All three sets are orthonormal under <Y, Y'> = -tr(Y Y') / 12 and consist of
anti-hermitian matrices, so each spans the compact real form. Each set
records the indices of the maximal compact subalgebra its real form keeps
(the Weyl trick multiplies the rest by i) and the torus of its Euler chart.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.linalg

from .config import get_settings
from .errors import DimensionMismatch, NotCommuting, PeriodMismatch, StructureMismatch
from .f4e6 import N_E6, F4E6Basis, f4e6_basis
from .generators import GeneratorSet, StructureConstants, structure_constants, weyl_trick
from .report import CheckRecord
from .scalars import I, ONE, SQRT2, SQRT6, ExactScalar
from .sparse import SparseMatrix

logger = logging.getLogger(__name__)

DIM = 56
NORM = 12
COUNT = 133

# offsets of the (27, 1, 27, 1) blocks
OFFSETS = (0, 27, 28, 55)

TITS_TORUS = (1, 81, 98)
# Y_73, Y_99, Y_125 have period 4 sqrt3 pi
LONG_PERIOD = (72, 98, 124)

PAIRS = tuple(itertools.combinations(range(8), 2))
PAIR_INDEX = {p: k for k, p in enumerate(PAIRS)}
QUADS = tuple(itertools.combinations(range(8), 4))
# tetra-indices whose first three entries lie in 1..5
QUADS_0 = tuple(q for q in QUADS if q[2] <= 4)

N_SU8_COMPACT = 63
SPLIT_TORUS = tuple(range(63, 70))


class Rep56Set(GeneratorSet):
    """Generators on the 56 with the data of one real form.

    Args:
        construction (str): "tits", "split" or "evi".
        mats (list): 133 SparseMatrix generators.
        compact_indices (list): Generators kept by the Weyl trick.
        torus_indices (list): Generators of the Euler-chart torus.
    """

    def __init__(self, construction, mats, labels=None, metadata=None, compact_indices=None,
                 torus_indices=None):
        super().__init__(construction, DIM, mats, labels, metadata)
        self.compact_indices = (list(range(len(self.mats))) if compact_indices is None
                                else list(compact_indices))
        self.torus_indices = list(torus_indices or [])

    def inner(self, a, b):
        m = self.dense()
        return float(np.real(-np.trace(m[a] @ m[b]) / NORM))

    def orthonormality_residual(self):
        return float(np.max(np.abs(self.gram(NORM) - np.eye(len(self)))))

    def antihermitian_residual(self):
        m = self.dense()
        return float(np.max(np.abs(m + m.conj().transpose(0, 2, 1))))

    def real_form(self):
        """The set after the Weyl trick on the compact subalgebra."""
        return weyl_trick(self, self.compact_indices)


# tits construction

def _tits_constants(exact):
    if exact:
        return {
            "i": I,
            "one": ONE,
            "i_inv_sqrt6": I * SQRT6 * Fraction(1, 6),
            "i_sqrt3_2": I * SQRT6 * Fraction(1, 2),
            "inv_sqrt2": SQRT2 * Fraction(1, 2),
        }
    return {
        "i": 1j,
        "one": 1.0 + 0j,
        "i_inv_sqrt6": 1j / np.sqrt(6.0),
        "i_sqrt3_2": 1j * np.sqrt(1.5),
        "inv_sqrt2": complex(1 / np.sqrt(2.0)),
    }


def _tits_y1(k, exact):
    entries = {}
    for r in range(27):
        entries[(r, r)] = k["i_inv_sqrt6"]
        entries[(28 + r, 28 + r)] = -k["i_inv_sqrt6"]
    entries[(27, 27)] = -k["i_sqrt3_2"]
    entries[(55, 55)] = k["i_sqrt3_2"]
    return SparseMatrix((DIM, DIM), entries, exact=exact)


def _tits_e6(phi, exact):
    """blockdiag(phi, 0, -phi^T, 0)."""
    return SparseMatrix.assemble((DIM, DIM), [(0, 0, phi), (28, 28, -phi.T)], exact=exact)


def _tits_mixed(a_mat, a, k, exact, imaginary):
    """Y_{a+81} (imaginary=True) or Y_{a+107} built from A_a and the unit vector e_a."""
    s = k["inv_sqrt2"]
    if imaginary:
        f13 = f31 = k["i"]
        v14 = v23 = v32 = v41 = k["i"] * s
    else:
        f13, f31 = -k["one"], k["one"]
        v14 = v23 = s
        v32 = v41 = -s
    entries = {}
    for (r, c), v in a_mat.items():
        entries[(r, 28 + c)] = f13 * v
        entries[(28 + r, c)] = f31 * v
    entries[(a, 55)] = v14
    entries[(27, 28 + a)] = v23
    entries[(28 + a, 27)] = v32
    entries[(55, a)] = v41
    return SparseMatrix((DIM, DIM), entries, exact=exact)


def build_56_tits(basis: F4E6Basis = None, jb=None) -> Rep56Set:
    """Y_1 ... Y_133 on the 56 = 27 + 1 + 27 + 1.

    Y_1 generates the U(1) commuting with E6, Y_2 and Y_3 complete the su(2)
    of the imaginary quaternions, Y_{I+3} = blockdiag(phi_I, 0, -phi_I^T, 0)
    for the 78 E6 generators, and Y_{a+81}, Y_{a+107} pair the Freudenthal
    matrices A_a with the singlets.

    Args:
        basis (F4E6Basis): F4/E6 data; exact or float.
        jb (JordanBasis): Accepted for symmetry with the adjoint builder.
    """
    basis = f4e6_basis() if basis is None else basis
    if jb is not None and jb is not basis.jordan and jb.exact == basis.exact:
        raise ValueError("Jordan basis does not match the F4/E6 basis")
    exact = basis.exact
    k = _tits_constants(exact)
    mats = [None] * COUNT
    mats[0] = _tits_y1(k, exact)
    mats[1] = _tits_mixed(basis.A[26], 26, k, exact, imaginary=True)
    mats[2] = _tits_mixed(basis.A[26], 26, k, exact, imaginary=False)
    for idx in range(N_E6):
        mats[3 + idx] = _tits_e6(basis.phi(idx), exact)
    for a in range(26):
        mats[81 + a] = _tits_mixed(basis.A[a], a, k, exact, imaginary=True)
        mats[107 + a] = _tits_mixed(basis.A[a], a, k, exact, imaginary=False)
    logger.info("built tits 56 (%s)", "exact" if exact else "float")
    return Rep56Set("tits", mats, [f"Y_{n}" for n in range(1, COUNT + 1)],
                    metadata={"scalar": "exact" if exact else "float"},
                    torus_indices=TITS_TORUS)


def _expm(x):
    return scipy.linalg.expm(x)


def _dist(a, b):
    return float(np.max(np.abs(a - b)))


def omega_element(tits: Rep56Set):
    """omega = exp(4 pi / sqrt3 Y_73), the generator of the common Z3."""
    return _expm(4 * np.pi / np.sqrt(3.0) * tits.dense()[72])


def tau_element(tits: Rep56Set):
    """tau = exp(T_g / 6 Y_1) = -omega^2 with T_g = 2 sqrt6 pi."""
    return _expm(2 * np.sqrt(6.0) * np.pi / 6 * tits.dense()[0])


def center_and_periods(r: Rep56Set, adjoint: GeneratorSet = None, tol=None, strict=True):
    """Group-level facts of the tits construction.

    Checks exp(sqrt6 pi Y_1) = -I_56 (and exp(sqrt6 pi M_1) = +I_133 when the
    adjoint is given), the one-parameter periods (2 sqrt6 pi for Y_1..Y_3,
    4 sqrt3 pi for Y_73, Y_99, Y_125, 4 pi otherwise), omega^3 = I, and the
    element tau (tau^6 = I, tau = -omega^2, tau omega = -I, [tau, E6] = 0).

    Args:
        r (Rep56Set): Tits construction.
        adjoint (GeneratorSet): Optional 133-dimensional adjoint.
        tol (float): Entrywise tolerance, defaults to the period tolerance.
        strict (bool): Raise on the first failing check.

    Returns:
        list: CheckRecord per fact.

    Raises:
        PeriodMismatch: In strict mode, naming the offending 1-based index.
    """
    if r.construction != "tits":
        raise ValueError(f"center and periods are defined for the tits construction, got {r.construction!r}")
    tol = get_settings().period_tol if tol is None else tol
    m = r.dense()
    eye = np.eye(DIM)
    records = []

    def record(name, residual, detail="", index=None, tolerance=tol):
        rec = CheckRecord(name, float(residual), tolerance, detail)
        records.append(rec)
        logger.debug("[%s]:%s residual=%.3e", rec.status, name, rec.residual)
        if strict and not rec.passed:
            raise PeriodMismatch(f"{name}: residual {residual:.3e} exceeds {tolerance:g}", index=index)

    sqrt6_pi = np.sqrt(6.0) * np.pi
    record("exp(sqrt6 pi Y_1) = -I_56", _dist(_expm(sqrt6_pi * m[0]), -eye), index=1)
    if adjoint is not None:
        ma = adjoint.dense()
        record("exp(sqrt6 pi M_1) = +I_133", _dist(_expm(sqrt6_pi * ma[0]), np.eye(len(ma[0]))), index=1)

    t_g = 2 * sqrt6_pi
    for a in range(3):
        record(f"period of Y_{a + 1} is 2 sqrt6 pi", _dist(_expm(t_g * m[a]), eye), index=a + 1)

    worst, worst_index = 0.0, None
    for a in range(3, COUNT):
        if a in LONG_PERIOD:
            continue
        d = _dist(_expm(4 * np.pi * m[a]), eye)
        if d > worst:
            worst, worst_index = d, a + 1
    record("period 4 pi for Y_4 .. Y_133 except Y_73, Y_99, Y_125", worst,
           f"worst index {worst_index}", index=worst_index)
    for a in LONG_PERIOD:
        record(f"period of Y_{a + 1} is 4 sqrt3 pi", _dist(_expm(4 * np.sqrt(3.0) * np.pi * m[a]), eye),
               index=a + 1)
        gap = _dist(_expm(4 * np.pi * m[a]), eye)
        record(f"exp(4 pi Y_{a + 1}) != I", 0.0 if gap > 1e-3 else 1.0, f"distance {gap:.3e}",
               index=a + 1, tolerance=0.5)

    omega = omega_element(r)
    record("omega^3 = I_56", _dist(np.linalg.matrix_power(omega, 3), eye), index=73)
    record("omega = exp(2 sqrt(2/3) pi Y_1)", _dist(omega, _expm(2 * np.sqrt(2.0 / 3.0) * np.pi * m[0])),
           index=73)
    tau = tau_element(r)
    record("tau^6 = I_56", _dist(np.linalg.matrix_power(tau, 6), eye), index=1)
    record("tau = -omega^2", _dist(tau, -omega @ omega), index=1)
    record("tau commutes with E6", max(_dist(tau @ m[a], m[a] @ tau) for a in range(3, 3 + N_E6)),
           index=1)
    # the central -I_56 commutes with the torus, tau itself does not
    record("tau omega = -I_56", _dist(tau @ omega, -eye), index=1)
    return records


# split construction

def _perm_sign(seq):
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def wedge2(x, group=False):
    """Action of an 8x8 matrix on the 28 pairs k < l.

    Args:
        x (np.ndarray): 8x8 matrix.
        group (bool): Group action u ^ u (minors) instead of the derivation
            X ^ 1 + 1 ^ X.
    """
    x = np.asarray(x)
    rows = np.array([p[0] for p in PAIRS])
    cols = np.array([p[1] for p in PAIRS])
    i, j = rows[:, None], cols[:, None]
    k, l = rows[None, :], cols[None, :]
    if group:
        return x[i, k] * x[j, l] - x[i, l] * x[j, k]
    return (x[i, k] * (j == l) + (i == k) * x[j, l]
            - x[i, l] * (j == k) - (i == l) * x[j, k])


def rho_split(x, group=False):
    """blockdiag(x ^ x, conj(x) ^ conj(x)) on 56 = wedge2(V) + wedge2(V*)."""
    x = np.asarray(x, dtype=complex)
    out = np.zeros((DIM, DIM), dtype=complex)
    out[:28, :28] = wedge2(x, group)
    out[28:, 28:] = wedge2(x.conj(), group)
    return out


def lambda_matrix(quad):
    """lambda_I for a tetra-index I (0-based, increasing).

    The lower-left block wedge2(V) -> wedge2(V*) carries eps_{I ij kl}; the
    upper-right block carries the generalized delta of I.
    """
    out = np.zeros((DIM, DIM))
    rest = tuple(sorted(set(range(8)) - set(quad)))
    for p in itertools.combinations(rest, 2):
        q = tuple(x for x in rest if x not in p)
        out[28 + PAIR_INDEX[p], PAIR_INDEX[q]] = _perm_sign(tuple(quad) + p + q)
    for p in itertools.combinations(quad, 2):
        q = tuple(x for x in quad if x not in p)
        out[PAIR_INDEX[p], 28 + PAIR_INDEX[q]] = _perm_sign([quad.index(v) for v in p + q])
    return out


def split_diagonals():
    """Real diagonals d_alpha of the seven Cartan generators D_alpha = i diag(d_alpha)."""
    r = 1 / np.sqrt(2.0)
    pattern = ((1, -1, -1, 1), (1, -1, 1, -1), (1, 1, -1, -1))
    out = []
    for shift in (0, 4):
        for signs in pattern:
            d = np.zeros(8)
            d[shift:shift + 4] = np.array(signs) * r
            out.append(d)
    out.append(0.5 * np.array([1, 1, 1, 1, -1, -1, -1, -1], dtype=float))
    return np.array(out)


def _unit(k, l):
    e = np.zeros((8, 8))
    e[k, l] = 1
    return e


def _split_generators():
    """(label, integral 56x56 matrix, scale) with generator = scale * matrix.

    Scales are named: "r2" for 1/sqrt2, "half" for 1/2, "r8" for 1/(2 sqrt2).
    """
    gens = []
    for k, l in PAIRS:
        gens.append((f"A_{k + 1}{l + 1}", rho_split(_unit(k, l) - _unit(l, k)), "r2"))
    lambdas = {q: lambda_matrix(q) for q in QUADS_0}
    for q in QUADS_0:
        name = "".join(str(v + 1) for v in q)
        gens.append((f"calA_{name}", (lambdas[q] - lambdas[q].T).astype(complex), "r2"))
    signs = np.rint(split_diagonals() * np.sqrt(2.0))
    for alpha in range(6):
        gens.append((f"D_{alpha + 1}", rho_split(1j * np.diag(signs[alpha])), "half"))
    gens.append(("D_7", rho_split(1j * np.diag(np.rint(2 * split_diagonals()[6]))), "r8"))
    for k, l in PAIRS:
        gens.append((f"S_{k + 1}{l + 1}", rho_split(1j * (_unit(k, l) + _unit(l, k))), "r2"))
    for q in QUADS_0:
        name = "".join(str(v + 1) for v in q)
        gens.append((f"calS_{name}", 1j * (lambdas[q] + lambdas[q].T), "r2"))
    return gens


_SCALES_FLOAT = {"r2": 1 / np.sqrt(2.0), "half": 0.5, "r8": 1 / (2 * np.sqrt(2.0))}
_SCALES_EXACT = {"r2": SQRT2 * Fraction(1, 2), "half": ExactScalar.rational(1, 2),
                 "r8": SQRT2 * Fraction(1, 4)}


def _scaled(matrix, scale, exact):
    entries = {}
    rows, cols = np.nonzero(np.abs(matrix) > 0.5)
    for r, c in zip(rows, cols):
        z = matrix[r, c]
        if exact:
            re, im = int(round(z.real)), int(round(z.imag))
            entries[(int(r), int(c))] = _SCALES_EXACT[scale] * re + _SCALES_EXACT[scale] * I * im
        else:
            entries[(int(r), int(c))] = complex(z) * _SCALES_FLOAT[scale]
    return SparseMatrix((DIM, DIM), entries, exact=exact)


def build_56_split(exact=False) -> Rep56Set:
    """The 133 generators on wedge2(V) + wedge2(V*).

    Order: A_kl (28), calA_I for I in QUADS_0 (35), D_1..D_7, S_kl (28),
    calS_I (35). The first 63 are real antisymmetric and span the su(8) kept
    by the split real form; D_1..D_7 span the chart torus.
    """
    gens = _split_generators()
    if len(gens) != COUNT:
        raise DimensionMismatch(f"split construction produced {len(gens)} generators, expected {COUNT}")
    mats = [_scaled(m, scale, exact) for _, m, scale in gens]
    logger.info("built split 56 (%s)", "exact" if exact else "float")
    return Rep56Set("split", mats, [name for name, _, _ in gens],
                    metadata={"scalar": "exact" if exact else "float"},
                    compact_indices=range(N_SU8_COMPACT), torus_indices=SPLIT_TORUS)


# evi construction

def rank_one_idempotent():
    """Jordan coordinates of diag(1, 0, 0) = (3 j1 + sqrt3 j18 + sqrt6 j27) / 6."""
    v = np.zeros(27)
    v[0] = 0.5
    v[17] = 0.5 / np.sqrt(3.0)
    v[26] = 1 / np.sqrt(6.0)
    return v


def build_basis_evi(tits: Rep56Set = None, tol=None) -> Rep56Set:
    """Basis L_1 ... L_133 adapted to spin(12) + su(2).

    L_1..L_66 span spin(12), L_67..L_69 the su(2) factor, L_70..L_133 the
    complement. The torus H4 is the first odd F4 generator commuting with
    L_86, L_103 and L_120, followed by those three.

    Raises:
        DimensionMismatch: If the stabilizer counts differ from 44 and 16.
        NotClosed: If the 69 compact generators do not close.
        NotCommuting: If the su(2) factor or the torus fails to commute.
    """
    settings = get_settings()
    tol = settings.closure_tol if tol is None else tol
    tits = tits_56() if tits is None else tits
    m = tits.to_float().dense()

    def y(n):
        return m[n - 1]

    v = rank_one_idempotent()
    kills = [k for k in range(N_E6) if np.max(np.abs(m[3 + k][:27, :27] @ v)) < 1e-10]
    if len(kills) != 44:
        raise DimensionMismatch(f"{len(kills)} E6 generators fix diag(1,0,0), expected 44")
    f4_odd = [k for k in range(52) if k not in kills]
    if len(f4_odd) != 16:
        raise DimensionMismatch(f"{len(f4_odd)} F4 generators move diag(1,0,0), expected 16")

    r2, r3, r6 = np.sqrt(2.0), np.sqrt(3.0), np.sqrt(6.0)
    mats = [m[3 + k] for k in kills]
    mats += [
        0.5 * (r3 * y(73) - y(56)),
        (3 * y(56) + r3 * y(73) - 2 * r6 * y(1)) / 6,
        (-3 * y(82) + r3 * y(99) + r6 * y(2)) / (3 * r2),
        (-3 * y(108) + r3 * y(125) + r6 * y(3)) / (3 * r2),
        (r2 / 3) * (-r3 * y(99) + np.sqrt(1.5) * y(2)),
        (r2 / 3) * (-r3 * y(125) + np.sqrt(1.5) * y(3)),
    ]
    mats += [y(n) for n in range(100, 108)]
    mats += [y(n) for n in range(126, 134)]
    mats += [
        (3 * y(82) + r3 * y(99) + r6 * y(2)) / (3 * r2),
        (3 * y(108) + r3 * y(125) + r6 * y(3)) / (3 * r2),
        (3 * y(56) + r3 * y(73) + r6 * y(1)) / (3 * r2),
    ]
    n_compact = len(mats)
    mats += [m[3 + k] for k in f4_odd]
    mats += [y(n) for n in range(57, 73)]
    mats += [y(n) for n in range(83, 99)]
    mats += [y(n) for n in range(109, 125)]
    if n_compact != 69 or len(mats) != COUNT:
        raise DimensionMismatch(f"evi basis has {n_compact} compact and {len(mats)} total generators")

    # closure of spin(12) + su(2) raises NotClosed
    structure_constants(GeneratorSet("evi-compact", DIM, [SparseMatrix.from_dense(x, 1e-15)
                                                          for x in mats[:69]]), tol=tol)
    worst = max(_dist(a @ b, b @ a) for a in mats[66:69] for b in mats[:66])
    if worst > tol:
        raise NotCommuting(f"su(2) factor fails to commute with spin(12) (residual {worst:.3e})")

    fixed = [85, 102, 119]
    first = None
    for k in range(69, 85):
        if max(_dist(mats[k] @ mats[j], mats[j] @ mats[k]) for j in fixed) < tol:
            first = k
            break
    if first is None:
        raise NotCommuting("no odd F4 generator commutes with L_86, L_103, L_120")
    torus = [first] + fixed
    worst = max(_dist(mats[a] @ mats[b], mats[b] @ mats[a]) for a in torus for b in torus)
    if worst > tol:
        raise NotCommuting(f"evi torus generators fail to commute (residual {worst:.3e})")

    f4_members = [pos for pos, k in enumerate(kills) if k < 52] + list(range(69, 85))
    logger.info("built evi basis: torus L_%s", ", L_".join(str(t + 1) for t in torus))
    return Rep56Set("evi", [SparseMatrix.from_dense(x, 1e-15) for x in mats],
                    [f"L_{n}" for n in range(1, COUNT + 1)],
                    metadata={"scalar": "float", "f4_members": f4_members},
                    compact_indices=range(69), torus_indices=torus)


def evi_m7():
    """M_7 = (L_45 + L_46) / sqrt2 as a coefficient vector over the evi basis."""
    x = np.zeros(COUNT)
    x[44] = x[45] = 1 / np.sqrt(2.0)
    return x


# isomorphism check

def verify_iso(r56: GeneratorSet, r133, tol=None):
    """Compare the structure constants of the 56 with those of the 133.

    Args:
        r56 (GeneratorSet): 56-dimensional set.
        r133 (GeneratorSet or StructureConstants): The adjoint, same ordering.

    Returns:
        list: CheckRecords, including the center facts for the tits construction.

    Raises:
        StructureMismatch: With the worst (A, B, C), 1-based.
    """
    tol = get_settings().structure_tol if tol is None else tol
    c56 = structure_constants(r56.to_float()).tensor
    if isinstance(r133, StructureConstants):
        c133 = r133.tensor
    else:
        c133 = structure_constants(r133.to_float()).tensor
    if c56.shape != c133.shape:
        raise DimensionMismatch(f"structure tensors of shape {c56.shape} and {c133.shape}")
    diff = np.abs(c56 - c133)
    flat = int(diff.argmax())
    worst = tuple(int(x) + 1 for x in np.unravel_index(flat, diff.shape))
    residual = float(diff.max())
    logger.info("structure constants of 56 vs 133: max difference %.3e at %s", residual, worst)
    if residual > tol:
        raise StructureMismatch(f"structure constants differ by {residual:.3e} at (A,B,C)={worst}",
                                worst=worst, residual=residual)
    records = [CheckRecord("c^56 = c^133", residual, tol, f"worst (A,B,C) = {worst}")]
    if r56.construction == "tits" and isinstance(r133, GeneratorSet):
        records += center_and_periods(r56, adjoint=r133.to_float(), strict=False)
    return records


@lru_cache(maxsize=2)
def tits_56(exact=False) -> Rep56Set:
    return build_56_tits(f4e6_basis(exact))


@lru_cache(maxsize=2)
def split_56(exact=False) -> Rep56Set:
    return build_56_split(exact)


@lru_cache(maxsize=1)
def evi_56() -> Rep56Set:
    return build_basis_evi(tits_56())
