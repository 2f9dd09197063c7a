"""Smoothability of genus-zero relative and twisted stable maps to rational stacky curves."""

from __future__ import annotations

from .conditions import (
    ConditionReport,
    RelativeCondition,
    TangencyData,
    check_relative,
    is_K_Gamma,
    is_M_Gamma,
    is_N_Gamma,
    reduce_contracted,
)
from .errors import (
    CapacityError,
    ConditionsFailedError,
    InputError,
    InvalidGraphError,
    RelSmoothError,
)
from .graph import (
    DualMapGraph,
    Edge,
    MarkedPoint,
    Vertex,
    canonical_form,
    from_json,
    to_dot,
    to_json,
    validate,
)
from .hurwitz import RamificationProblem, complete_profiles, realizable, vertex_realizable
from .smoothing import SimpleExtension, recipe, simple_extension, verify_degree_zero, verify_intersections
from .strata import EnumerationOptions, Stratum, dimension, enumerate_strata
from .target import PROJECTIVE_LINE, StackyTarget, weighted_projective
from .twisted import (
    EllipticConfig,
    check_stabilizers,
    coprime_reduce,
    elliptic_to_gamma,
    minimal_stabilizers,
)

__version__ = "0.1.0"
