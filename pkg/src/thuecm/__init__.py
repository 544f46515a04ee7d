"""Exact solver for Thue equations over totally real fields with a CM root."""

__version__ = "0.1.0"

from .bounds import BoundReport, Case, classify_case, count_bound, full_report, omega, verify_solution_bounds
from .enumeration import enumerate_bounded_integers, roots_of_unity
from .fields import FieldElem, FieldError, NotCMError, NumberField, make_field, minimal_polynomial, norm
from .forms import BinaryForm
from .heights import (HeightValue, absolute_height, coordinate_bound_from_height, field_height,
                      form_height, point_height, root_height_bound)
from .poly import QPoly
from .relative import RelativeCM, compose_extension, in_subfield
from .solver import (CertificationError, SolutionSet, ThueInstance, brute_force, certify_instance,
                     enumerate_lambda, nth_roots_in_ok, reduce_to_monic, solve_axn, solve_thue, xi_set)

__all__ = [
    "BinaryForm", "BoundReport", "Case", "CertificationError", "FieldElem", "FieldError",
    "HeightValue", "NotCMError", "NumberField", "QPoly", "RelativeCM", "SolutionSet", "ThueInstance",
    "absolute_height", "brute_force", "certify_instance", "classify_case", "compose_extension",
    "coordinate_bound_from_height", "count_bound", "enumerate_bounded_integers", "enumerate_lambda",
    "field_height", "form_height", "full_report", "in_subfield", "make_field", "minimal_polynomial",
    "norm", "nth_roots_in_ok", "omega", "point_height", "reduce_to_monic", "roots_of_unity",
    "root_height_bound", "solve_axn", "solve_thue", "verify_solution_bounds", "xi_set",
]
