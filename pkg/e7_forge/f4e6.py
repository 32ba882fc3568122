"""F4 derivations, the E6 extension and the cubic tensor of the Jordan algebra.

The 52 matrices C_I span Der(J) acting on the 27 basis coordinates, the 26
matrices Ctilde_a = -i R_{j_a} extend them to the compact E6, and A_alpha
is the Freudenthal multiplication by j_alpha. All 78 generators are
normalized by tr(phi phi') = -6 delta.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, ExactFieldOverflow
from .jordan import JordanBasis, JordanMatrix, freudenthal, jordan_basis
from .scalars import ExactScalar, I, SQRT6, is_zero, sqrt_scalar
from .sparse import BasisProjector, SparseMatrix, linear_combination

logger = logging.getLogger(__name__)

N_F4 = 52
N_E6 = 78
TRACE_NORM = 6

# 0-based Jordan index of octonion unit u at each off-diagonal position
POS12, POS13, POS23 = 1, 9, 18
J1, J18, J27 = 0, 17, 26


def _pairing(x, y):
    # -tr(XY) / 6, positive on antisymmetric matrices
    value = x.trace_product(y)
    if x.exact and y.exact:
        return value * Fraction(-1, TRACE_NORM)
    return -complex(value) / TRACE_NORM


def _f4_candidates(jb: JordanBasis):
    """Generating list of inner derivations [L_x, L_y], curated part first."""
    left = jb.left
    one = ExactScalar.one() if jb.exact else 1.0
    zero = ExactScalar.zero() if jb.exact else 0.0
    l13 = jb.left_mult(JordanMatrix((one, zero, -one)))
    l23 = jb.left_mult(JordanMatrix((zero, one, -one)))

    for u in range(8):
        for v in range(u + 1, 8):
            yield f"[L{POS12 + u + 1},L{POS12 + v + 1}]", left[POS12 + u].commutator(left[POS12 + v])
    for u in range(8):
        yield f"[L1,L{POS12 + u + 1}]", left[J1].commutator(left[POS12 + u])
    for u in range(8):
        yield f"[Ldiag(1,0,-1),L{POS13 + u + 1}]", l13.commutator(left[POS13 + u])
    for u in range(8):
        yield f"[Ldiag(0,1,-1),L{POS23 + u + 1}]", l23.commutator(left[POS23 + u])
    for a in range(27):
        for b in range(a + 1, 27):
            yield f"[L{a + 1},L{b + 1}]", left[a].commutator(left[b])


def _select_independent(candidates, target):
    """Keep candidates that raise the float rank, until ``target`` are found."""
    chosen = []
    ortho = []
    seen = 0
    for name, mat in candidates:
        seen += 1
        if mat.is_zero():
            continue
        v = mat.to_dense().ravel()
        for q in ortho:
            v = v - np.vdot(q, v) * q
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            ortho.append(v / norm)
            chosen.append((name, mat))
            if len(chosen) == target:
                break
    logger.debug("selected %d independent derivations out of %d candidates", len(chosen), seen)
    return chosen


def _gram_schmidt(mats):
    """Orthonormalize under -tr(XY)/6 in the arithmetic of the inputs.

    Raises:
        ExactFieldOverflow: If a normalization constant leaves the field.
    """
    out = []
    for mat in mats:
        v = mat
        for e in out:
            c = _pairing(v, e)
            if not is_zero(c):
                v = v - e.scale(c)
        norm2 = _pairing(v, v)
        if v.exact:
            inv = sqrt_scalar(norm2).inverse()
        else:
            inv = 1.0 / np.sqrt(norm2.real)
        out.append(v.scale(inv))
    return out


def build_f4_basis(jb: JordanBasis):
    """The 52 matrices C_I of Der(J) on the Jordan coordinates.

    Raises:
        DimensionMismatch: If the derivation span is not 52-dimensional.
        ExactFieldOverflow: In exact mode, if Gram-Schmidt leaves Q(i, sqrt2, sqrt3).
    """
    chosen = _select_independent(_f4_candidates(jb), N_F4)
    if len(chosen) != N_F4:
        raise DimensionMismatch(f"derivation span has dimension {len(chosen)}, expected {N_F4}")
    basis = _gram_schmidt([m for _, m in chosen])
    logger.info("F4 basis built (%s arithmetic)", "exact" if jb.exact else "float")
    return basis


def build_e6_extension(jb: JordanBasis):
    """Ctilde_a = -i R_{j_a} for the 26 traceless basis elements."""
    factor = -I if jb.exact else -1j
    return [jb.left[a].scale(factor) for a in range(26)]


def build_cubic_and_A(jb: JordanBasis):
    """Cubic tensor D_{abc} = Det(j_a, j_b, j_c) and the Freudenthal matrices A_alpha.

    D is read off the multiplication tables, A from Freudenthal products, so
    the relation A = (3/2) D checks one against the other.

    Returns:
        tuple: ({(a, b, c): scalar}, [A_1, ..., A_27])
    """
    exact = jb.exact
    two_thirds = Fraction(2, 3)
    cubic = {}

    def add(key, value):
        if key in cubic:
            value = cubic[key] + value
        if is_zero(value, tol=0.0 if exact else 1e-15):
            cubic.pop(key, None)
        else:
            cubic[key] = value

    for a, la in enumerate(jb.left):
        for (c, b), v in la.entries.items():
            add((a, b, c), v * two_thirds)
    # tr(j_a) = sqrt6 delta_{a,27}
    t27 = SQRT6 if exact else math.sqrt(6.0)
    for b in range(27):
        term = -t27 * Fraction(1, 3)
        add((J27, b, b), term)
        add((b, J27, b), term)
        add((b, b, J27), term)
    add((J27, J27, J27), t27 * t27 * t27 * Fraction(1, 6))

    A = []
    for alpha in range(27):
        entries = {}
        for gamma, jg in enumerate(jb.elements):
            for beta, value in enumerate(jb.coords(freudenthal(jb[alpha], jg))):
                if not is_zero(value, tol=0.0 if exact else 1e-14):
                    entries[(beta, gamma)] = ExactScalar.coerce(value) if exact else complex(value)
        A.append(SparseMatrix((27, 27), entries, exact=exact))
    return cubic, A


@dataclass
class F4E6Basis:
    """The 78 generators of compact E6 on the 27 and the cubic data.

    Attributes:
        jordan (JordanBasis): Basis the matrices refer to.
        C (list): 52 real antisymmetric F4 matrices.
        Ctilde (list): 26 imaginary E6 extension matrices.
        cubic (dict): Nonzero entries of D_{abc}, 0-based keys.
        A (list): 27 symmetric Freudenthal matrices.
        exact (bool): Entries are ExactScalar.
    """

    jordan: JordanBasis
    C: list
    Ctilde: list
    cubic: dict
    A: list
    exact: bool = True
    _projector: BasisProjector = field(default=None, repr=False)

    def phi(self, k):
        """k-th E6 generator, 0-based: C for k < 52, Ctilde after."""
        return self.C[k] if k < N_F4 else self.Ctilde[k - N_F4]

    @property
    def e6(self):
        return list(self.C) + list(self.Ctilde)

    @property
    def projector(self):
        if self._projector is None:
            self._projector = BasisProjector(self.C, TRACE_NORM)
        return self._projector

    def cubic_dense(self):
        out = np.zeros((27, 27, 27), dtype=complex)
        for (a, b, c), v in self.cubic.items():
            out[a, b, c] = complex(v)
        return out

    def to_float(self):
        if not self.exact:
            return self
        return F4E6Basis(
            jordan=jordan_basis(exact=False),
            C=[m.to_float() for m in self.C],
            Ctilde=[m.to_float() for m in self.Ctilde],
            cubic={k: complex(v) for k, v in self.cubic.items()},
            A=[m.to_float() for m in self.A],
            exact=False,
        )


def build_f4e6(exact=True) -> F4E6Basis:
    jb = jordan_basis(exact=exact)
    C = build_f4_basis(jb)
    Ctilde = build_e6_extension(jb)
    cubic, A = build_cubic_and_A(jb)
    return F4E6Basis(jordan=jb, C=C, Ctilde=Ctilde, cubic=cubic, A=A, exact=exact)


@lru_cache(maxsize=2)
def f4e6_basis(exact=True) -> F4E6Basis:
    """Cached F4/E6 data, degrading to floating point if exact arithmetic overflows."""
    if exact:
        try:
            return build_f4e6(exact=True)
        except ExactFieldOverflow as exc:
            logger.warning("exact F4 basis unavailable (%s); falling back to float mode", exc)
    return build_f4e6(exact=False)


# structure data used by the adjoint construction

def f4_structure(basis: F4E6Basis, tol=1e-10):
    """f_{IJ}^K with [C_I, C_J] = sum_K f_{IJ}^K C_K, for I < J.

    Returns:
        dict: {(I, J): {K: f}}
    """
    out = {}
    proj = basis.projector
    for i in range(N_F4):
        for j in range(i + 1, N_F4):
            comm = basis.C[i].commutator(basis.C[j])
            if not comm.is_zero():
                out[(i, j)] = proj.project(comm, tol=tol, label=(i, j))
    return out


def mixed_alpha(basis: F4E6Basis, tol=1e-10):
    """alpha_{ab}^K = -tr(C_K [R_a, R_b]) / 6 for a < b <= 26.

    Returns:
        dict: {(a, b): {K: alpha}}
    """
    out = {}
    left = basis.jordan.left
    proj = basis.projector
    for a in range(26):
        for b in range(a + 1, 26):
            comm = left[a].commutator(left[b])
            if not comm.is_zero():
                out[(a, b)] = proj.project(comm, tol=tol, label=(a, b))
    return out


# identity checks; each returns the worst residual as a float

def check_antisymmetry(basis: F4E6Basis):
    worst = 0.0
    for m in basis.C:
        worst = max(worst, (m + m.T).max_abs())
        for (r, c), v in m.items():
            if r == J27 or c == J27:
                worst = max(worst, abs(complex(v)))
    return worst


def check_normalization(basis: F4E6Basis):
    gens = [m.to_dense() for m in basis.e6]
    flat = np.array([g.ravel() for g in gens])
    flat_t = np.array([g.T.ravel() for g in gens])
    gram = flat @ flat_t.T
    return float(np.max(np.abs(gram + TRACE_NORM * np.eye(len(gens)))))


def check_relaz(basis: F4E6Basis):
    """[C_I, Ctilde_a] = sum_c (C_I)_{ca} Ctilde_c."""
    worst = 0.0
    for ci in basis.C:
        for a, ct in enumerate(basis.Ctilde):
            lhs = ci.commutator(ct)
            coeffs = [ci.get(c, a) for c in range(26)]
            rhs = linear_combination(coeffs, basis.Ctilde, shape=(27, 27), exact=basis.exact)
            worst = max(worst, (lhs - rhs).max_abs())
    return worst


def check_e6_closure(basis: F4E6Basis):
    """[Ctilde_a, Ctilde_b] lies in the F4 span."""
    worst = 0.0
    proj = basis.projector
    for a in range(26):
        for b in range(a + 1, 26):
            comm = basis.Ctilde[a].commutator(basis.Ctilde[b])
            coeffs = proj.coefficients(comm)
            keys = sorted(coeffs)
            recon = linear_combination([coeffs[k] for k in keys], [basis.C[k] for k in keys],
                                       shape=(27, 27), exact=basis.exact)
            worst = max(worst, (comm - recon).max_abs())
    return worst


def check_ctilde_row27(basis: F4E6Basis):
    """(Ctilde_a)_{27,b} = -i sqrt(2/3) delta_ab, and the traceless block is symmetric."""
    target = -1j * np.sqrt(2.0 / 3.0)
    worst = 0.0
    for a, m in enumerate(basis.Ctilde):
        dense = m.to_dense()
        row = dense[J27, :26].copy()
        row[a] -= target
        worst = max(worst, float(np.max(np.abs(row))))
        block = dense[:26, :26]
        worst = max(worst, float(np.max(np.abs(block - block.T))))
    return worst


def check_cubic_symmetry(basis: F4E6Basis):
    d = basis.cubic_dense()
    perms = [(0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    return float(max(np.max(np.abs(d - d.transpose(p))) for p in perms))


def check_A_matches_cubic(basis: F4E6Basis):
    """(A_alpha)_{beta gamma} = (3/2) D_{alpha beta gamma}."""
    d = basis.cubic_dense()
    a = np.array([m.to_dense() for m in basis.A])
    return float(np.max(np.abs(a - 1.5 * d)))


def check_cubic_vs_ctilde(basis: F4E6Basis):
    """(A_c)_{ab} = i (Ctilde_c)_{ab} for a, b, c <= 26."""
    worst = 0.0
    for c in range(26):
        lhs = basis.A[c].to_dense()[:26, :26]
        rhs = 1j * basis.Ctilde[c].to_dense()[:26, :26]
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def check_cubic_invariance(basis: F4E6Basis):
    """Every E6 generator annihilates the cubic tensor infinitesimally."""
    d = basis.cubic_dense()
    worst = 0.0
    for m in basis.e6:
        phi = m.to_dense()
        total = (np.einsum("da,dbc->abc", phi, d)
                 + np.einsum("db,adc->abc", phi, d)
                 + np.einsum("dc,abd->abc", phi, d))
        worst = max(worst, float(np.max(np.abs(total))))
    return worst


def f4e6_checks(basis: F4E6Basis):
    """Named residuals of every F4/E6 identity."""
    return {
        "C antisymmetric, row/column 27 zero": check_antisymmetry(basis),
        "tr(phi phi') = -6 delta": check_normalization(basis),
        "[C_I, Ctilde_a] = (C_I)_ca Ctilde_c": check_relaz(basis),
        "[Ctilde_a, Ctilde_b] in span C": check_e6_closure(basis),
        "(Ctilde_a)_27b = -i sqrt(2/3) delta": check_ctilde_row27(basis),
        "D totally symmetric": check_cubic_symmetry(basis),
        "A = (3/2) D": check_A_matches_cubic(basis),
        "A_c = i Ctilde_c on the traceless block": check_cubic_vs_ctilde(basis),
        "E6 preserves the cubic": check_cubic_invariance(basis),
    }
