"""Exact Chern character computations for free Lie-Rinehart algebras over Q."""
from .chern import ChernForm, chern_character, chern_component, curvature_power, verify_closed
from .cohomology import (
    PrimitiveResult, Regime, Status, Verdict, betti_numbers, classes_equal, find_primitive, flatten,
)
from .connections import (
    AdAction, Connection, ModuleAction, ad_connection, add_one_form, apply_connection,
    connection_difference, curvature, direct_sum, is_flat, tensor,
)
from .errors import (
    LierineError, ManifestError, NonFlatError, NotClosedError, ParseError, RegimeError, StructuralError,
)
from .exact_algebra import Polynomial, Rational, RingSpec, format_polynomial, parse_polynomial
from .forms import Form, Kind, ScalarAction, differential, evaluate, trace_form, wedge
from .homotopy import evaluate_at, extend_scalars, interpolate_connection, verify_evaluation_identities
from .k0ring import ConnectionRegistry, K0Element, chern_on_k0, k0_combine, k0_product
from .lie_rinehart import AxiomReport, Derivation, GElement, LieRinehartData, verify_axioms
from .manifest import Manifest, parse_manifest

__version__ = "0.1.0"

__all__ = [
    "ad_connection",
    "AdAction",
    "add_one_form",
    "apply_connection",
    "AxiomReport",
    "betti_numbers",
    "chern_character",
    "chern_component",
    "chern_on_k0",
    "ChernForm",
    "classes_equal",
    "Connection",
    "connection_difference",
    "ConnectionRegistry",
    "curvature",
    "curvature_power",
    "Derivation",
    "differential",
    "direct_sum",
    "evaluate",
    "evaluate_at",
    "extend_scalars",
    "find_primitive",
    "flatten",
    "Form",
    "format_polynomial",
    "GElement",
    "interpolate_connection",
    "is_flat",
    "k0_combine",
    "k0_product",
    "K0Element",
    "Kind",
    "LierineError",
    "LieRinehartData",
    "Manifest",
    "ManifestError",
    "ModuleAction",
    "NonFlatError",
    "NotClosedError",
    "parse_manifest",
    "parse_polynomial",
    "ParseError",
    "Polynomial",
    "PrimitiveResult",
    "Rational",
    "Regime",
    "RegimeError",
    "RingSpec",
    "ScalarAction",
    "Status",
    "StructuralError",
    "tensor",
    "trace_form",
    "Verdict",
    "verify_axioms",
    "verify_closed",
    "verify_evaluation_identities",
    "wedge",
]
