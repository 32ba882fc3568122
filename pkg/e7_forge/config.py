"""Numeric tolerances and runtime settings."""

import logging
import os
from dataclasses import dataclass, replace
from functools import lru_cache

logger = logging.getLogger(__name__)

THREADS_ENV = "E7_FORGE_THREADS"


@dataclass(frozen=True)
class Settings:
    """Tolerances shared by constructions and verification suites.

    Attributes:
        threads (int): Worker cap for parallel sweeps.
        closure_tol (float): Max residual of a commutator against the span.
        jacobi_tol (float): Max Jacobiator entry.
        identity_tol (float): Entrywise tolerance for exact identities checked in floats.
        period_tol (float): Tolerance on exp(T X) = +/- I.
        unitarity_tol (float): Max |g^H g - I| for group elements.
        cluster_tol (float): Eigenvalue clustering tolerance for root extraction.
        commute_tol (float): Max bracket norm for Cartan generators.
        diagonal_tol (float): Max off-diagonal mass after diagonalization.
        structure_tol (float): Max disagreement between two sets of structure constants.
    """

    threads: int = 1
    closure_tol: float = 1e-10
    jacobi_tol: float = 1e-9
    identity_tol: float = 1e-12
    period_tol: float = 1e-10
    unitarity_tol: float = 1e-8
    cluster_tol: float = 1e-7
    commute_tol: float = 1e-12
    diagonal_tol: float = 1e-8
    structure_tol: float = 1e-9

    @classmethod
    def from_env(cls, environ=None):
        """Build settings, reading the thread cap from ``E7_FORGE_THREADS``."""
        environ = os.environ if environ is None else environ
        raw = environ.get(THREADS_ENV, "").strip()
        threads = 1
        if raw:
            try:
                threads = int(raw)
            except ValueError:
                logger.warning("ignoring non-integer %s=%r", THREADS_ENV, raw)
                threads = 1
            if threads < 1:
                logger.warning("%s must be positive, got %d", THREADS_ENV, threads)
                threads = 1
        return cls(threads=threads)

    def with_overrides(self, **kwargs):
        return replace(self, **kwargs)


@lru_cache(maxsize=1)
def get_settings():
    return Settings.from_env()
