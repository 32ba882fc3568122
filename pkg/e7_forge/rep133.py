"""The 133-dimensional adjoint representation from the Tits construction.

Basis order (0-based): H_1..H_3 at 0..2 (the derivations of the imaginary
quaternions), the 52 F4 generators J_I at 3..54, then h_i (x) j_a for
i = 1, 2, 3 and a = 1..26 at 55 + 26 (i - 1) + (a - 1).

The bracket, with s the scale of the H generators:

    [H_L, H_M]           = 2 s eps_LMN H_N
    [H_L, h_i (x) j]     = 2 s eps_Lik h_k (x) j
    [H_L, J_I]           = 0
    [J_I, J_J]           = f_IJ^K J_K
    [J_I, h_i (x) j_b]   = (C_I)_cb h_i (x) j_c
    [h_i (x) j_a, h_k (x) j_b] = (4 alpha / 3 s) eps_ikl delta_ab H_l
                                 - beta delta_ik alpha_ab^K J_K
                                 + 2 gamma eps_ikl S_abc h_l (x) j_c

with alpha_ab^K = -tr(C_K [R_a, R_b]) / 6 and S_abc = (R_a)_cb. The Jacobi
identity holds exactly when alpha = gamma^2 = beta / 4.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .config import get_settings
from .f4e6 import F4E6Basis, f4_structure, f4e6_basis, mixed_alpha
from .generators import GeneratorSet, StructureConstants
from .scalars import ExactScalar, SQRT6, as_scalar, is_zero
from .sparse import SparseMatrix

logger = logging.getLogger(__name__)

DIM = 133
N_H = 3
J_OFFSET = 3
MIXED_OFFSET = 55
N_TRACELESS = 26

DEFAULT_H_SCALE = 1 / np.sqrt(6.0)


def mixed_index(i, a):
    """0-based index of h_{i+1} (x) j_{a+1}."""
    return MIXED_OFFSET + N_TRACELESS * i + a


def labels_133():
    return [f"Psi_{k}" for k in range(1, DIM + 1)]


CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _levi_civita():
    for i, k, l in CYCLIC:
        yield i, k, l, 1
        yield k, i, l, -1


def _memo(basis, name, build):
    # bracket data computed once per F4E6Basis instance
    value = getattr(basis, name, None)
    if value is None:
        value = build(basis)
        setattr(basis, name, value)
    return value


def _exact_param(value, exact):
    if not exact:
        return complex(value)
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar.coerce(value)
    raise TypeError(f"exact build needs ExactScalar/int/Fraction parameters, got {value!r}")


def tits_structure_constants(basis: F4E6Basis = None, h_scale=None, alpha=Fraction(1, 4),
                             beta=1, gamma=Fraction(1, 2), exact=None):
    """Structure constants of the Tits bracket as a sparse dict.

    Args:
        basis (F4E6Basis): F4/E6 data, defaults to the cached build.
        h_scale: Scale s of the H generators; defaults to 1/sqrt6 (exactly
            sqrt6/6 in exact mode). s = 1 gives [H_1, H_2] = 2 H_3.
        alpha, beta, gamma: Mixed-bracket coefficients.
        exact (bool): Exact arithmetic; defaults to the basis mode.

    Returns:
        dict: {(A, B): {C: c_AB^C}} for every ordered pair with a nonzero bracket.
    """
    basis = f4e6_basis() if basis is None else basis
    exact = basis.exact if exact is None else exact
    if exact and not basis.exact:
        raise ValueError("exact structure constants need an exact F4/E6 basis")
    if h_scale is None:
        h_scale = SQRT6 * Fraction(1, 6) if exact else DEFAULT_H_SCALE
    s = _exact_param(h_scale, exact)
    alpha_c = _exact_param(alpha, exact)
    beta_c = _exact_param(beta, exact)
    gamma_c = _exact_param(gamma, exact)
    two = as_scalar(2, exact)

    if not exact and basis.exact:
        basis = basis.to_float()

    out = {}

    def put(a, b, c, value):
        if is_zero(value, tol=0.0 if exact else 1e-15):
            return
        row = out.setdefault((a, b), {})
        row[c] = row[c] + value if c in row else value
        back = out.setdefault((b, a), {})
        back[c] = back[c] - value if c in back else -value

    # [H_L, H_M] and [H_L, h_i (x) j_a]
    for l, m, n, sign in _levi_civita():
        coeff = two * s * sign
        if sign > 0:
            put(l, m, n, coeff)
        for a in range(N_TRACELESS):
            put(l, mixed_index(m, a), mixed_index(n, a), coeff)

    # [J_I, J_J]
    for (i, j), coeffs in _memo(basis, "_f4_structure", f4_structure).items():
        for k, value in coeffs.items():
            put(J_OFFSET + i, J_OFFSET + j, J_OFFSET + k, value)

    # [J_I, h_i (x) j_b] = sum_c (C_I)_cb h_i (x) j_c
    for big_i, ci in enumerate(basis.C):
        for (c, b), value in ci.items():
            for i in range(N_H):
                put(J_OFFSET + big_i, mixed_index(i, b), mixed_index(i, c), value)

    # [h_i (x) j_a, h_k (x) j_b]; put() fills the reversed pair, so each
    # unordered pair of h indices is visited once through the cyclic triples
    h_coeff = alpha_c * 4 * (s * 3).inverse() if exact else 4 * alpha_c / (3 * s)
    for i, k, l in CYCLIC:
        for a in range(N_TRACELESS):
            put(mixed_index(i, a), mixed_index(k, a), l, h_coeff)
    for (a, b), coeffs in _memo(basis, "_mixed_alpha", mixed_alpha).items():
        for big_k, value in coeffs.items():
            term = -beta_c * value
            for i in range(N_H):
                put(mixed_index(i, a), mixed_index(i, b), J_OFFSET + big_k, term)
    left = basis.jordan.left
    for a in range(N_TRACELESS):
        for (c, b), value in left[a].items():
            # S_abc = (R_a)_cb is totally symmetric on the traceless indices
            if c >= N_TRACELESS or b >= N_TRACELESS or b < a:
                continue
            term = two * gamma_c * value
            for i, k, l in CYCLIC:
                put(mixed_index(i, a), mixed_index(k, b), mixed_index(l, c), term)
                if b != a:
                    put(mixed_index(i, b), mixed_index(k, a), mixed_index(l, c), term)

    return {key: {c: v for c, v in row.items() if not is_zero(v, tol=0.0 if exact else 1e-15)}
            for key, row in out.items()}


def constants_to_tensor(constants, n=DIM):
    """Dense float tensor c[A, B, C] from the sparse dict form."""
    tensor = np.zeros((n, n, n))
    for (a, b), row in constants.items():
        for c, v in row.items():
            tensor[a, b, c] = complex(v).real
    return tensor


def build_adjoint_133(basis: F4E6Basis = None, jb=None, h_scale=None, alpha=Fraction(1, 4),
                      beta=1, gamma=Fraction(1, 2), exact=None) -> GeneratorSet:
    """The matrices M_A = ad(Psi_A), (M_A)_{CB} = c_{AB}^C.

    Args:
        basis (F4E6Basis): F4/E6 data.
        jb (JordanBasis): Must be the basis ``basis`` was built on; accepted
            for symmetry with the 56 builder.
    """
    basis = f4e6_basis() if basis is None else basis
    if jb is not None and jb is not basis.jordan and jb.exact == basis.exact:
        raise ValueError("Jordan basis does not match the F4/E6 basis")
    exact = basis.exact if exact is None else exact
    constants = tits_structure_constants(basis, h_scale, alpha, beta, gamma, exact)
    rows = [dict() for _ in range(DIM)]
    for (a, b), row in constants.items():
        for c, v in row.items():
            rows[a][(c, b)] = v
    mats = [SparseMatrix((DIM, DIM), entries, exact=exact) for entries in rows]
    logger.info("built 133-dimensional adjoint (%s)", "exact" if exact else "float")
    return GeneratorSet("tits", DIM, mats, labels_133(),
                        metadata={"scalar": "exact" if exact else "float"})


def tits_constants_tensor(basis: F4E6Basis = None, **kwargs) -> StructureConstants:
    constants = tits_structure_constants(basis, exact=False, **kwargs)
    return StructureConstants(constants_to_tensor(constants), source="tits", labels=labels_133())


def e6_u1_indices():
    """0-based indices of U(1) (Psi_1) and E6 (Psi_4 .. Psi_81)."""
    return [0] + list(range(J_OFFSET, MIXED_OFFSET + N_TRACELESS))


def jacobi_residual(c, triples):
    """Max Jacobiator entry over ``triples``.

    Args:
        c (np.ndarray): Structure constants c[A, B, C].
        triples (np.ndarray): Integer array of shape (m, 3).

    Returns:
        tuple: (worst residual, worst triple)
    """
    triples = np.asarray(triples, dtype=int)
    if len(triples) == 0:
        return 0.0, None
    a, b, cc = triples[:, 0], triples[:, 1], triples[:, 2]
    # [[A,B],C] + [[C,A],B] + [[B,C],A] expanded on the tensor
    ab = c[a, b]
    ca = c[cc, a]
    bc = c[b, cc]
    total = (np.einsum("md,mde->me", ab, c[:, cc].transpose(1, 0, 2))
             + np.einsum("md,mde->me", ca, c[:, b].transpose(1, 0, 2))
             + np.einsum("md,mde->me", bc, c[:, a].transpose(1, 0, 2)))
    worst = np.abs(total).max(axis=1)
    k = int(worst.argmax())
    return float(worst[k]), tuple(int(x) for x in triples[k])


def jacobi_triples(n=DIM, n_random=100_000, low_block=10, seed=0):
    """All triples among the ``low_block`` lowest indices plus seeded random triples."""
    low = np.array([(a, b, c) for a in range(low_block) for b in range(low_block)
                    for c in range(low_block)], dtype=int).reshape(-1, 3)
    rng = np.random.default_rng(seed)
    rand = rng.integers(0, n, size=(n_random, 3))
    return np.concatenate([low, rand])


def exhaustive_triples(n=DIM):
    return np.array([(a, b, c) for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n)],
                    dtype=int)


def jacobi_check(c, triples=None, batch=256, threads=None):
    """Worst Jacobiator over ``triples`` in parallel batches.

    Returns:
        tuple: (worst residual, worst triple)
    """
    c = c.tensor if isinstance(c, StructureConstants) else np.asarray(c)
    triples = jacobi_triples(len(c)) if triples is None else np.asarray(triples)
    threads = get_settings().threads if threads is None else threads
    batches = [triples[k:k + batch] for k in range(0, len(triples), batch)]
    worst, worst_triple = 0.0, None
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for value, triple in pool.map(lambda t: jacobi_residual(c, t), batches):
            if value >= worst:
                worst, worst_triple = value, triple
    logger.debug("Jacobi sweep over %d triples: worst %.3e at %s", len(triples), worst, worst_triple)
    return worst, worst_triple


def coefficient_scan(basis: F4E6Basis = None,
                     cases=((0.25, 1.0, 0.5), (1.0, 4.0, 1.0), (1.0, 4.0, 1.01)),
                     n_random=2000, seed=0):
    """Jacobi residual of the mixed bracket for several (alpha, beta, gamma).

    Returns:
        list: [(alpha, beta, gamma, worst residual)]
    """
    basis = f4e6_basis() if basis is None else basis
    basis = basis.to_float()
    triples = np.concatenate([
        jacobi_triples(DIM, n_random=n_random, low_block=0, seed=seed),
        # all-mixed triples
        np.array([(mixed_index(0, 0), mixed_index(1, 1), mixed_index(2, 2)),
                  (mixed_index(0, 0), mixed_index(1, 0), mixed_index(2, 0)),
                  (mixed_index(0, 1), mixed_index(0, 2), mixed_index(1, 3))]),
    ])
    out = []
    for alpha, beta, gamma in cases:
        constants = tits_structure_constants(basis, alpha=alpha, beta=beta, gamma=gamma, exact=False)
        worst, _ = jacobi_check(constants_to_tensor(constants), triples)
        out.append((alpha, beta, gamma, worst))
        logger.info("coefficient scan alpha=%g beta=%g gamma=%g: Jacobi residual %.3e",
                    alpha, beta, gamma, worst)
    return out


@lru_cache(maxsize=2)
def adjoint_133(exact=False) -> GeneratorSet:
    """Cached 133-dimensional adjoint."""
    return build_adjoint_133(f4e6_basis(exact))
