"""Exact computations with rational curves on blow-ups of P^n at points."""

__version__ = "0.1.0"

from .algebra import QQ, BinaryForm, Field, Scalar, bf_div_exact, bf_eval, bf_gcd, bf_normalize_monic
from .blowup import (
    BlowupConfig,
    Constant,
    Exceptional,
    Interior,
    LiftedMorphism,
    evaluate_lifted,
    exceptional_lift,
    lift,
    project,
    stratum,
    stratum_dimension,
)
from .census import census_strata, enumerate_morphisms, estimate_dimension, verify_partition
from .errors import CurveStrataError
from .morphism import (
    MorphismP1,
    fiber_degree,
    geometric_degree,
    image_contains,
    image_multiplicity,
    mor_eval,
    mor_normalize,
    parametric_multiplicity,
    reparametrize,
    transform,
)
from .parsing import parse_field, parse_form, parse_morphism, parse_point, parse_points
from .projective import ProjectivePoint, ProjLinearMap, map_apply, move_to_e0, pt_normalize

__all__ = [
    "bf_div_exact",
    "bf_eval",
    "bf_gcd",
    "bf_normalize_monic",
    "BinaryForm",
    "BlowupConfig",
    "census_strata",
    "Constant",
    "CurveStrataError",
    "enumerate_morphisms",
    "estimate_dimension",
    "evaluate_lifted",
    "Exceptional",
    "exceptional_lift",
    "fiber_degree",
    "Field",
    "geometric_degree",
    "image_contains",
    "image_multiplicity",
    "Interior",
    "lift",
    "LiftedMorphism",
    "map_apply",
    "mor_eval",
    "mor_normalize",
    "MorphismP1",
    "move_to_e0",
    "parametric_multiplicity",
    "parse_field",
    "parse_form",
    "parse_morphism",
    "parse_point",
    "parse_points",
    "project",
    "ProjectivePoint",
    "ProjLinearMap",
    "pt_normalize",
    "QQ",
    "reparametrize",
    "Scalar",
    "stratum",
    "stratum_dimension",
    "transform",
    "verify_partition",
]
