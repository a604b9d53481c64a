"""Staged trees, interpolating polynomials, and polynomial equivalence classes.

A labeled event tree turns into a polynomial by summing, over every
root-to-leaf path, the product of the edge labels along the path.  This
package goes both ways: it computes that polynomial from a tree, and given a
square-free polynomial it reconstructs every staged tree that produces it by
decomposing the associated monomial ideal into minimal primes and recursing.
Analysis helpers (a four-condition pre-screen, incidence matrices, simplicial
complexes) and a CLI round out the toolbox.
"""

from .analyze import (
    ComplexComponent,
    IncidenceMatrix,
    SaturationReport,
    ScreenCondition,
    ScreenReport,
    SimplicialComplex,
    UnknownVariableError,
    facet_sharing_dot,
    incidence_matrix,
    saturation_test,
    screen,
    simplicial_complex,
    subtree_submatrix,
)
from .enumeration import (
    CoefficientNotOneError,
    EquivalenceClass,
    NonSquareFreeInputError,
    labeled_event_trees,
    nested_representations,
    staged_trees,
    support_set,
)
from .ideal import (
    EmptyBasisError,
    IdealBasis,
    PrimeComponent,
    UnitIdealError,
    interreduce,
    minimal_primes,
    minimal_primes_exhaustive,
)
from .poly import (
    Indeterminate,
    Monomial,
    NonSquareFreeResultError,
    NonSquareFreeTermError,
    ParseError,
    Polynomial,
    multiply_label,
    parse_polynomial,
    parse_polynomial_general,
)
from .tree import (
    DegenerateTreeError,
    DomainMismatchError,
    EvaluationResult,
    EventTree,
    FreshLabels,
    InvalidNestingError,
    InvalidTreeError,
    MissingValueError,
    NotStagedError,
    Stage,
    from_nested,
)

__version__ = "0.1.0"

__all__ = [
    "Indeterminate",
    "Monomial",
    "Polynomial",
    "ParseError",
    "NonSquareFreeTermError",
    "NonSquareFreeResultError",
    "parse_polynomial",
    "parse_polynomial_general",
    "multiply_label",
    "IdealBasis",
    "PrimeComponent",
    "EmptyBasisError",
    "UnitIdealError",
    "interreduce",
    "minimal_primes",
    "minimal_primes_exhaustive",
    "EventTree",
    "Stage",
    "EvaluationResult",
    "FreshLabels",
    "from_nested",
    "InvalidTreeError",
    "NotStagedError",
    "DomainMismatchError",
    "MissingValueError",
    "InvalidNestingError",
    "DegenerateTreeError",
    "EquivalenceClass",
    "NonSquareFreeInputError",
    "CoefficientNotOneError",
    "support_set",
    "staged_trees",
    "labeled_event_trees",
    "nested_representations",
    "ScreenCondition",
    "ScreenReport",
    "screen",
    "IncidenceMatrix",
    "incidence_matrix",
    "subtree_submatrix",
    "SimplicialComplex",
    "ComplexComponent",
    "SaturationReport",
    "simplicial_complex",
    "saturation_test",
    "facet_sharing_dot",
    "UnknownVariableError",
    "__version__",
]
