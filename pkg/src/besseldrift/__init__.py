"""Exact samplers and equality-in-law checks for Bessel processes with drift."""

from .bessel_core import (
    BesselLaw,
    PathGrid,
    besq_path,
    besq_transition,
    drifted_from_zero,
    drifted_transition_density,
    first_zero_sample,
    gaussian_norm_drifted,
    last_zero_bridge_sample,
    last_zero_drifted_sample,
    tau0_sample,
)
from .identities import TestReport, UnknownIdentityError, catalog, get_case, run_identity, run_suite
from .randkit import RngStream
from .specfun import bessel_i, h_drift

__version__ = "0.1.0"
