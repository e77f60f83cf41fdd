"""polycoh: odd polygon relations and their quadratic cochain complexes,
in exact arithmetic."""

__version__ = "0.1.0"

from .fields import QQ, PrimeField, field_from_name
from .linalg import Matrix, det, inverse, kernel_basis, rank, solve
from .polygon import (GenericityError, ParameterMatrix, RelationVerdict,
                      SlotScheme, TransitionMatrix, minor_det,
                      sample_generic_parameters, slot_scheme,
                      transition_matrix, verify_polygon_relation)
from .coloring import (Coloring, PermittedSubspace, edge_vector_dependence,
                       faces, global_basis, is_permitted, permitted_basis,
                       restrict, simplex_vector)
from .cohomology import (BocksteinResult, CocycleVerdict, QuadraticCochain,
                         RankTable, bockstein_lift, coboundary_matrix,
                         coboundary_pairing, complex_ranks, dethad,
                         edge_scalar_product, face_cocycle,
                         face_cocycle_spans_kernel, heptagon_cocycle,
                         heptagon_cocycle_gram, local_face_coefficient,
                         nontriviality_check, normalize_first_three_columns,
                         sym2_matrix, vertex_sign)
from .report import Report, SuiteConfig, emit_report, parse_report, run_suite
