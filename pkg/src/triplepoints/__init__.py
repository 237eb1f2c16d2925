"""Exact tools for line arrangements with many triple points.

Finite and quadratic fields, projective spaces, incidence structures,
realization search over finite fields, automorphism groups, and the
projection construction of arrangements with only (q+1)-fold points.
"""

from .automorphisms import AutGroupReport, automorphisms, iter_automorphisms
from .construct import ConstructionReport, build_arrangement, minimal_extension_search
from .datasets import arrangement, builtin
from .errors import *  # noqa: F401,F403
from .fields import FieldElement, field_of_order, make_field, roots_of
from .ideal import build_ideal
from .incidence import (
    IncidenceStructure,
    contains_restriction,
    delete_element,
    generate_pg_truncation,
    is_sts,
    schonheim_bound,
    t_vector,
    validate,
)
from .projective import enumerate_points, find_projection_center, project_from
from .realize import (
    Arrangement,
    incidence_of,
    realizes_up_to_relabeling,
    search_realization,
    verify_realization,
)

__version__ = "0.1.0"
