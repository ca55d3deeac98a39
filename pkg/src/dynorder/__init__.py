"""Combinatorial tests for dynamically ordered energy functions of Morse-Smale diffeomorphisms on 3-manifolds."""

from .classification import ManifoldClass, ManifoldKind, classify
from .diagram import (
    Diagram,
    EdgeKind,
    EmbeddingAnnotation,
    IntersectionEdge,
    Orbit,
    OrbitPoint,
    SeparatrixRecord,
    Violation,
)
from .energy import (
    EnergyCertificate,
    Rule,
    Status,
    Verdict,
    build_certificate,
    check_lyapunov_schedule,
    decide,
)
from .errors import (
    CyclicRelation,
    DynorderError,
    IncompleteAnnotations,
    InconsistentDiagram,
    MissingSeparatrixData,
    NotApplicable,
    ParseError,
    SchemaError,
    UnknownOrbit,
)
from .filtration import (
    AttractorData,
    Filtration,
    annotation_consistency,
    build_filtration,
    genus_monotonicity_report,
)
from .io import emit_document, parse_document
from .ordering import (
    Numbering,
    OrderRelation,
    behaviour,
    behaviour_index,
    canonical_numbering,
    compute_order,
    count_numberings,
    induced_inverse_numbering,
)
from .validation import validate

__version__ = "0.1.0"
