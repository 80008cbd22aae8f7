"""Numerical laboratory for Schatten p-norm tuple inequalities.

The package verifies families of norm inequalities for sums and differences
of complex matrices (Clarkson-type pairs through n-tuple statements with
sharp coefficients), replays the interpolation and duality arguments that
prove them, and searches for unitary certificates of their conjectured
operator-order strengthening. Everything is driven by seeded ensembles, so
campaigns are reproducible bit for bit.
"""

from ._version import __version__
from .conjecture import (
    ConjectureInstance,
    FeasibilityCertificate,
    NecessaryReport,
    bl_two_check,
    conjecture_sides,
    necessary_conditions,
    unitary_search,
)
from .ensembles import KINDS, EnsembleSpec, generate, haar_unitary
from .inequalities import (
    OperatorTuple,
    ak,
    bcl,
    bcl_dominates_clarkson,
    clarkson_pair,
    cm,
    hk_ntuple,
    mccarthy,
    parallelogram,
)
from .matcore import DEFAULT_TOL, PolarParts, Tolerances, loewner_leq, polar, psd_power
from .proofs import (
    StripPoint,
    WitnessSet,
    ak_from_witness,
    ak_via_duality,
    analytic_family_eval,
    boundary_bound,
    convexity_scan,
    dual_witness,
    duality_images,
    norming_functional,
    pairing_bound_check,
    three_lines_bound,
    witness_set,
)
from .reports import InequalityReport
from .schatten import SchattenExponent, dual_exponent, holder_check, schatten_norm, snorm, trace_pairing

__all__ = [
    "__version__",
    "DEFAULT_TOL",
    "Tolerances",
    "PolarParts",
    "polar",
    "psd_power",
    "loewner_leq",
    "SchattenExponent",
    "schatten_norm",
    "snorm",
    "dual_exponent",
    "trace_pairing",
    "holder_check",
    "InequalityReport",
    "OperatorTuple",
    "clarkson_pair",
    "parallelogram",
    "hk_ntuple",
    "bcl",
    "bcl_dominates_clarkson",
    "mccarthy",
    "ak",
    "cm",
    "KINDS",
    "EnsembleSpec",
    "generate",
    "haar_unitary",
    "WitnessSet",
    "StripPoint",
    "dual_witness",
    "witness_set",
    "analytic_family_eval",
    "boundary_bound",
    "three_lines_bound",
    "pairing_bound_check",
    "convexity_scan",
    "norming_functional",
    "duality_images",
    "ak_via_duality",
    "ak_from_witness",
    "ConjectureInstance",
    "FeasibilityCertificate",
    "NecessaryReport",
    "conjecture_sides",
    "necessary_conditions",
    "unitary_search",
    "bl_two_check",
]
