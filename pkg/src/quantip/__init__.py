"""quantip: exact compilers and brute-force verifiers for quantified integer programs."""

from .compress import binary_tags, compress_union, pigeonhole_witness, tag_width
from .fibonacci import FibGadget, GadgetReport, build_gadget, check_properties, fibonacci
from .geometry import (
    Box,
    EmptyPolytopeError,
    EnumerationBudgetError,
    GeometryError,
    HPolytope,
    LinearInequality,
    Rational,
    UnboundedError,
    VPolytope,
    bounding_box,
    extreme_points,
    hull_facets,
    integer_points,
    integer_row,
    point_in_hull,
    sharpen_strict,
    vertices,
)
from .gsa import (
    GsaInstance,
    OracleBudgetError,
    band_polygon,
    frac_dist,
    gap_polygon,
    gsa_count,
    gsa_decide,
    gsa_norm,
)
from .oracle import (
    eval_q3sat,
    eval_sentence,
    eval_two_quantifier,
    project_count,
    project_count_union,
)
from .reductions import (
    Literal,
    ProjectionInstance,
    Q3SatInstance,
    QuantBlock,
    QuantSentence,
    TwoQuantifierForm,
    complement_to_simplices,
    count_gsa_to_projection,
    dbs_split,
    gsa_to_three_quantifiers,
    gsa_to_two_quantifiers,
    q3sat_to_sentence,
)

__version__ = "0.1.0"
