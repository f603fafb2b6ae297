"""Exact facets of the cut dominant of small graphs."""

from .cutspace import (
    Cut,
    FacetCertificate,
    LaminarFamily,
    certify_facet,
    enumerate_proper_cuts,
    is_witness,
    laminar_basis,
    min_cut_value,
    minimum_cuts,
    structural_report,
)
from .graph import Multigraph, blocks, generate_catalog, simplify, two_cutsets
from .minors import MinorModel, has_minor, is_minor_minimal_non_k, verify_model
from .polyhedron import (
    DDBudgetExceeded,
    build_subtour_hrep,
    ef_projection_check,
    enumerate_vertices,
    facet_list,
    gtsp_equals_subtour,
    is_tour_vector,
    kstar,
)
from .ratmat import minimum_integer_form, rank

__version__ = "0.1.0"
