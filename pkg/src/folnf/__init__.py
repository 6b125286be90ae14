"""Exact formal normal forms of generic order-two singular 1-forms on (C^2, 0).

Coefficients live in Q(t0, t1, ...) with exact arithmetic throughout.
"""
from ._backend import BACKEND
from .cone import (GenericityReport, ResidueTriple, apply_linear_change, check_genericity,
                   construct_example, tangent_cone)
from .errors import (DegreeOverflowError, ExpressionSyntaxError, FolnfError, GenericityError,
                     NormalFormObstruction, ParseError, ResonanceError, UndeclaredGeneratorError,
                     ValidationError)
from .field import FieldDescriptor, FieldElement, Generator, solve_linear_system
from .invariants import NormalForm, field_report, homothety_action, invariant_equivalent
from .jets import FormalMapJet, Jet2, OneFormJet, compose_map, pullback, wedge_dx_restrict
from .reduction import (RectificationStep, ReductionStep, ReductionTranscript, homological_solve,
                        rectify_separatrix, reduce_to_normal_form, replay)

__version__ = "0.1.0"
