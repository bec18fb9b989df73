"""Theta functions with characteristics, the sign matrix M and basis checks."""

from ._theta4 import (
    InputError,
    TruncationError,
    VanishingNullError,
    __version__,
    basis_report,
    characteristics,
    even_count,
    inversion_coefficients,
    kappa_value,
    mmatrix,
    mu,
    parity,
    random_tau,
    run_suite,
    theta,
    theta_nulls,
    verify_inversion,
    verify_mmatrix,
    verify_quartic,
    weil_pairing,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
