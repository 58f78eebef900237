"""Jet schemes of affine varieties over exact fields.

The submodules are usable on their own; the names re-exported here are the
ones most scripts need.
"""

from .errors import JetlabError, ParseError
from .fields import QQ, FieldHom, PrimeField, RationalFunctionField, SimpleExtension, parse_field
from .greenberg import LiftProblem, enumerate_jets, greenberg_scan, hensel_lift
from .groebner import (
    Ideal,
    eliminate,
    ideal_member,
    ideal_quotient,
    krull_dimension,
    radical_member,
    saturate,
    step_limit_scope,
)
from .jets import TruncatedArc, hs_coefficient_char0, iterated_jet_ideal, jet_ideal
from .kernels import BACKEND
from .poly import DEGREVLEX, LEX, MonomialOrder, Polynomial, VariableContext, parse_polynomial
from .scenarios import SCENARIOS, render_report, run_scenario
from .smoothness import jacobian_matrix, nonsmooth_ideal
from .varieties import VarietySpec, parse_arc, parse_variety

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
