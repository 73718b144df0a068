"""Double dating diagrams: enumeration, relations, quotient dimensions and
the maps to chord diagrams."""

from .diagrams import (
    BudgetExceeded,
    Diagram,
    DiagramError,
    ParseError,
    classify_degree2,
    enumerate_diagrams,
    has_isolated_chord,
    isolated_pairs,
    make,
    parse_diagram,
    serialize_diagram,
    wedge_to_dd,
)
from .exactlin import (
    DimensionReport,
    EchelonForm,
    LinearCombo,
    RelationSystem,
    in_span,
    quotient_dim,
    rank,
    reduce,
    span_equal,
)
from .maps import (
    certified_dd_dim,
    iota,
    iota_image_span,
    mu_generator,
    nu,
    stu_reduce,
    strutless_generators,
)
from .relations import (
    gen_4T,
    gen_dd_relations,
    gen_framing,
    gen_wedge_relations,
    load_templates,
)

__version__ = "0.1.0"
