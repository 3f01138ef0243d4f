"""Mean value quotients of finite Blaschke products."""

import json as _json

from ._core import (
    BlaschkeProduct,
    CriticalPoint,
    CriticalSet,
    Error,
    Prop1Report,
    QuotientReport,
    SearchResult,
    critical_points,
    estimate_Kn,
    estimate_Ln,
    general_quotients,
    lemma1_bound,
    normalize,
    preimages,
    prop1_check,
    sample_blaschke,
    smale_quotients,
    thm1_bound,
    thm2_closed_S,
    thm2_critical_points,
    thm2_family,
    thm3_lower,
    thm4_closed_T,
    thm4_family,
)
from . import _core

__version__ = "0.1.0"


def rescale(poly_zeros, m):
    """One row of the rescaling table as a dict."""
    return _json.loads(_core.rescale(list(poly_zeros), float(m)))


def run_battery(n_min=2, n_max=8, samples=1000, seed=0, threads=0, variant="both", included=()):
    """Battery summary as a dict; `included` is a list of (label, product)."""
    return _json.loads(_core.run_battery(n_min, n_max, samples, seed, threads, variant, list(included)))
