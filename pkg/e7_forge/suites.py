"""Verification suites behind ``e7-forge verify``.

Each suite returns a :class:`VerificationReport`; a failing identity becomes
a failing record rather than an exception, so one run reports every
discrepancy it finds.
"""

import logging
from fractions import Fraction

import numpy as np
import scipy.linalg

from .config import get_settings
from .errors import E7ForgeError
from .euler import (TITS_FORWARD, SplitHaarSampler, chart_evi, chart_split, chart_tits,
                    chebyshev_center, haar_su8, integrate_tits_density, split_alcove_points,
                    split_density_determinant, su8_embed, tits_density_xyz)
from .f4e6 import f4e6_basis, f4e6_checks
from .generators import killing_signature, structure_constants, weyl_trick
from .measures import (SymbolicVolume, covering_check, group_volume, integral_closed,
                       integral_quadrature, tits_weight_integral)
from .rep56 import (SPLIT_TORUS, center_and_periods, evi_56, evi_m7, rho_split, split_56,
                    tits_56, verify_iso)
from .rep133 import adjoint_133, coefficient_scan, e6_u1_indices, jacobi_check, jacobi_triples, \
    tits_constants_tensor
from .report import VerificationReport, merge_reports
from .roots import (E7_HIGHEST, EVI_REFERENCE_SIMPLE, F4_HIGHEST, SPLIT_SIMPLE_NAMES,
                    classify_e7, commutant_evi, commutant_ideals, extract_roots, in_span,
                    restricted_roots_evi, split_roots_closed_form)

logger = logging.getLogger(__name__)

SUITE_NAMES = ("all", "structure", "jacobi", "roots", "volumes", "euler", "center", "f4e6")
CONSTRUCTIONS = ("tits", "split", "evi")

# Killing signature (n_plus, n_minus) after the Weyl trick on each maximal compact subalgebra
REAL_FORM_SIGNATURES = {"tits": (54, 79), "split": (70, 63), "evi": (64, 69)}

REFERENCE_VOLUMES = {
    "E7": SymbolicVolume(Fraction(2 ** 23, 3 ** 22 * 5 ** 10 * 7 ** 6 * 11 ** 3 * 13 ** 2 * 17), sqrt2=1, pi=70),
    "E6": SymbolicVolume(Fraction(2 ** 17, 3 ** 10 * 5 ** 5 * 7 ** 3 * 11), sqrt3=1, pi=42),
    "SO8": SymbolicVolume(Fraction(2 ** 12, 3 ** 3 * 5), pi=16),
    "U": SymbolicVolume(Fraction(2 ** 18, 3 ** 10 * 5 ** 5 * 7 ** 3 * 11), sqrt2=1, pi=43),
    "E7modU": SymbolicVolume(Fraction(2 ** 5, 3 ** 12 * 5 ** 5 * 7 ** 3 * 11 ** 2 * 13 ** 2 * 17), pi=27),
}
TITS_WEIGHT_INTEGRAL = Fraction(2, 3 ** 5 * 5 * 11 * 13 ** 2 * 17)


def _set(construction):
    return {"tits": tits_56, "split": split_56, "evi": evi_56}[construction]()


def structure_suite(construction="tits", tol=None):
    """Orthonormality, closure, Killing signatures and (tits) 56 vs 133 constants."""
    settings = get_settings()
    report = VerificationReport("structure", metadata={"construction": construction})
    r56 = _set(construction)
    report.metadata["scalar"] = r56.metadata.get("scalar", "float")
    report.check("-tr(Y_A Y_B)/12 = delta_AB", r56.to_float().orthonormality_residual(),
                 tol or settings.identity_tol)
    report.check("generators anti-hermitian", r56.to_float().antihermitian_residual(),
                 tol or settings.identity_tol)
    try:
        sc = structure_constants(r56.to_float(), tol=tol)
    except E7ForgeError as exc:
        report.check("commutators close on the span", float("nan"), tol or settings.closure_tol, str(exc))
        return report
    report.check("commutators close on the span", sc.residual, tol or settings.closure_tol)
    report.check("structure constants antisymmetric", sc.antisymmetry_residual(),
                 tol or settings.closure_tol)
    report.expect("compact Killing signature (0, 133)", killing_signature(sc) == (0, 133),
                  str(killing_signature(sc)))

    if construction == "tits":
        real = weyl_trick(r56.to_float(), e6_u1_indices())
        adjoint = adjoint_133()
        try:
            report.extend(verify_iso(r56, structure_constants(adjoint.to_float()), tol=tol))
        except E7ForgeError as exc:
            report.check("c^56 = c^133", getattr(exc, "residual", float("nan")),
                         tol or settings.structure_tol, str(exc))
    else:
        real = r56.to_float().real_form()
    signature = killing_signature(real)
    expected = REAL_FORM_SIGNATURES[construction]
    report.expect(f"real form Killing signature {expected}", signature == expected, str(signature))
    return report


def jacobi_suite(tol=None, n_random=100_000, seed=0):
    """Jacobi identity on the tits tensor plus the perturbed-coefficient control."""
    tol = get_settings().jacobi_tol if tol is None else tol
    report = VerificationReport("jacobi", metadata={"construction": "tits", "seed": seed,
                                                    "triples": n_random})
    sc = tits_constants_tensor()
    worst, triple = jacobi_check(sc, jacobi_triples(len(sc), n_random=n_random, seed=seed))
    report.check("Jacobi identity on seeded and low-index triples", worst, tol, f"worst triple {triple}")
    for alpha, beta, gamma, value in coefficient_scan(cases=((1.0, 4.0, 1.0), (1.0, 4.0, 1.01)), seed=seed):
        if gamma == 1.0:
            report.check(f"(alpha, beta, gamma) = ({alpha:g}, {beta:g}, {gamma:g}) satisfies Jacobi",
                         value, tol)
        else:
            report.expect(f"(alpha, beta, gamma) = ({alpha:g}, {beta:g}, {gamma:g}) violates Jacobi",
                          value > tol, f"residual {value:.3e}")
    return report


def center_suite(construction="tits", tol=None):
    report = VerificationReport("center", metadata={"construction": construction})
    if construction != "tits":
        report.skip("center and periods", f"defined for the tits construction, not {construction}")
        return report
    report.extend(center_and_periods(tits_56(), adjoint=adjoint_133(), tol=tol, strict=False))
    return report


def _split_roots(report, tol):
    split = split_56()
    rd = extract_roots(split, SPLIT_TORUS)
    report.expect("126 roots of multiplicity 1", len(rd) == 126 and bool(np.all(rd.multiplicities == 1)),
                  f"{len(rd)} roots")
    report.expect("centralizer of the torus has dimension 7", rd.zero_dim == 7, str(rd.zero_dim))
    try:
        info = classify_e7(rd, named=SPLIT_SIMPLE_NAMES)
    except E7ForgeError as exc:
        report.expect("root system is E7", False, str(exc))
        return
    report.expect("63 positive roots", info["positive"] == 63)
    report.check("roots have norm^2 = 2", info["norm_residual"], tol)
    report.check("<alpha_i, lambda^j> = delta_ij", info["duality_residual"], tol)
    report.check("simple roots are beta_" + ", beta_".join(SPLIT_SIMPLE_NAMES), info["named_residual"], tol)
    report.expect(f"highest root coefficients {E7_HIGHEST}", info["highest_coefficients"] == E7_HIGHEST,
                  str(info["highest_coefficients"]))
    _, closed = split_roots_closed_form()
    both = np.vstack([closed, -closed])
    gap = max(float(np.min(np.max(np.abs(both - r), axis=1))) for r in rd.roots)
    report.check("roots match i(d^k - d^l) and i(sum over I of d^i)", gap, tol)


def _evi_roots(report, tol):
    evi = evi_56()
    sc = structure_constants(evi.to_float())
    try:
        rd = restricted_roots_evi(evi, sc)
    except E7ForgeError as exc:
        report.expect("restricted root system is F4", False, str(exc))
        return
    hist = rd.multiplicity_histogram()
    report.expect("multiplicities {1: 24, 4: 24}", hist == {1: 24, 4: 24}, str(hist))
    positive_sum = int(rd.multiplicities[rd.positive].sum())
    report.expect("sum of positive multiplicities = 60", positive_sum == 60, str(positive_sum))
    report.expect(f"highest restricted root {F4_HIGHEST}", rd.highest_coefficients() == F4_HIGHEST)
    s = rd.simple_roots()
    gram = s @ s.T
    ref = EVI_REFERENCE_SIMPLE @ EVI_REFERENCE_SIMPLE.T
    report.check("simple roots agree with the chart up to an isometry",
                 float(np.max(np.abs(gram / gram.max() - ref / ref.max()))), tol)
    try:
        k_set = commutant_evi(evi, sc)
        ideal6, ideal3 = commutant_ideals(k_set, evi)
    except E7ForgeError as exc:
        report.expect("commutant of H4 is so(4) + su(2)", False, str(exc))
        return
    report.check("M_7 = (L_45 + L_46)/sqrt2 lies in the commutant",
                 in_span(evi_m7(), k_set.metadata["coefficients"]), tol)
    report.expect("commutant Killing form negative definite", killing_signature(k_set) == (0, 9))
    report.check("commutant splits into ideals of dimension 6 and 3", ideal6.metadata["residual"], tol)


def roots_suite(construction="split", tol=None):
    tol = 1e-8 if tol is None else tol
    report = VerificationReport("roots", metadata={"construction": construction})
    if construction == "split":
        _split_roots(report, tol)
    elif construction == "evi":
        _evi_roots(report, tol)
    else:
        report.skip("root extraction", "runs on the split and evi constructions")
    return report


def volumes_suite():
    report = VerificationReport("volumes")
    for name, expected in REFERENCE_VOLUMES.items():
        value = group_volume(name)
        report.expect(f"Vol({name}) = {expected}", value == expected, str(value))
    report.expect("covering integral / Vol(E7/U) = 2", covering_check() == 2)
    report.expect("halved covering integral / Vol(E7/U) = 1", covering_check(halved=True) == 1)
    report.expect("8 I(9,9,9) = 2/(3^5·5·11·13^2·17)", tits_weight_integral() == TITS_WEIGHT_INTEGRAL)
    report.expect("I(1,1,1) = 1/6", integral_closed(1, 1, 1) == Fraction(1, 6))
    closed = float(integral_closed(9, 9, 9))
    report.check("Gauss-Legendre n=64 matches I(9,9,9)",
                 abs(integral_quadrature(9, 9, 9, 64) - closed) / closed, 1e-6)
    return report


def euler_suite(seed=0, n_points=100, n_samples=1000):
    """Chart densities, the determinant oracle, su8_embed and the Haar sampler."""
    settings = get_settings()
    report = VerificationReport("euler", metadata={"seed": seed, "n_points": n_points,
                                                   "n_samples": n_samples})
    rng = np.random.default_rng(seed)

    tits = chart_tits()
    center, _ = chebyshev_center(tits)
    report.expect("W > 0 at the Chebyshev center", tits.density(center) > 0)
    report.check("W vanishes on y = x", abs(float(tits_density_xyz(2.0, 2.0, 1.0))), 1e-30)
    report.check("|det d(x,y,z)/d(x52,x53,x54)| = 2 sqrt2", abs(abs(np.linalg.det(TITS_FORWARD)) - 2 * np.sqrt(2.0)),
                 settings.identity_tol)
    exact = float(TITS_WEIGHT_INTEGRAL)
    report.check("integral of W over the (x,y,z) simplex", abs(integrate_tits_density(48) - exact) / exact, 1e-4)

    split = chart_split()
    report.check("|f(0)| = 0", float(split.density(np.zeros(7))), 0.0)
    points = split_alcove_points(split, n_points, rng)
    worst = 0.0
    for y in points:
        f = float(split.density(y))
        worst = max(worst, abs(split_density_determinant(y) - f) / f)
    report.check(f"|f(y)| = |det Pi Ad| at {n_points} interior points", worst, 1e-8)
    args = np.abs(points @ split.roots.T)
    report.expect("interior points satisfy 0 < |beta(y)| < pi for all 63 roots",
                  bool(np.all(args > 0) and np.all(args < np.pi)))

    evi = chart_evi()
    mult = evi.multiplicities
    report.expect("evi density: 12 long and 12 short positive roots, sum 60",
                  int((mult == 1).sum()) == 12 and int((mult == 4).sum()) == 12 and int(mult.sum()) == 60)
    center, _ = chebyshev_center(evi)
    report.expect("h > 0 at the Chebyshev center", evi.density(center) > 0)

    worst = 0.0
    for _ in range(20):
        u1, u2 = haar_su8(rng), haar_su8(rng)
        worst = max(worst, float(np.max(np.abs(su8_embed(u1 @ u2).matrix
                                               - su8_embed(u1).matrix @ su8_embed(u2).matrix))))
    report.check("su8_embed is a homomorphism", worst, 1e-9)
    x = np.zeros((8, 8))
    x[0, 1], x[1, 0] = 1.0, -1.0
    gap = np.max(np.abs(su8_embed(scipy.linalg.expm(0.3 * x)).matrix - scipy.linalg.expm(0.3 * rho_split(x))))
    report.check("su8_embed(exp(tX)) = exp(t rho(X))", float(gap), 1e-9)

    sampler = SplitHaarSampler(seed=seed)
    traces, residual = [], 0.0
    for _ in range(n_samples):
        g, _ = sampler.sample()
        residual = max(residual, g.unitarity_residual())
        traces.append(g.trace())
    traces = np.array(traces)
    mean = traces.mean()
    stderr = np.sqrt(np.mean(np.abs(traces - mean) ** 2) / len(traces))
    report.check(f"unitarity of {n_samples} Haar samples", residual, settings.unitarity_tol)
    report.check("|mean tr g| within 3 standard errors", abs(mean) / (3 * stderr), 1.0,
                 f"mean {mean:.4f}, standard error {stderr:.4f}")
    report.metadata["acceptance_rate"] = sampler.acceptance_rate
    first = SplitHaarSampler(sampler.chart, seed=seed).sample()[1]
    again = SplitHaarSampler(sampler.chart, seed=seed).sample()[1]
    report.expect("equal seeds give equal coordinates", bool(np.array_equal(first, again)))
    return report


def f4e6_suite(tol=None):
    tol = get_settings().identity_tol if tol is None else tol
    report = VerificationReport("f4e6")
    basis = f4e6_basis()
    report.metadata["scalar"] = "exact" if basis.exact else "float"
    for name, residual in f4e6_checks(basis).items():
        report.check(name, residual, tol)
    return report


def run_suite(name, construction=None, tol=None, seed=0):
    """Run one suite (or "all") and return its report."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES)}")
    if construction is not None and construction not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {construction!r}")
    logger.info("running suite %s (construction=%s)", name, construction)
    if name == "structure":
        return structure_suite(construction or "tits", tol)
    if name == "jacobi":
        return jacobi_suite(tol, seed=seed)
    if name == "center":
        return center_suite(construction or "tits", tol)
    if name == "roots":
        return roots_suite(construction or "split", tol)
    if name == "volumes":
        return volumes_suite()
    if name == "euler":
        return euler_suite(seed=seed)
    if name == "f4e6":
        return f4e6_suite(tol)
    reports = [structure_suite(c, tol) for c in CONSTRUCTIONS]
    reports += [jacobi_suite(tol, seed=seed), center_suite("tits", tol), roots_suite("split", tol),
                roots_suite("evi", tol), volumes_suite(), euler_suite(seed=seed), f4e6_suite(tol)]
    return merge_reports("all", reports, metadata={"seed": seed})
