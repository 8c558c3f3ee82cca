"""Graph braid group presentations and unitary representations."""

from ._core import (
    ComputationError,
    FPGroup,
    Graph,
    MorseComplex,
    ValidationError,
    __version__,
    classify_theta_component,
    h1,
    is_sufficiently_subdivided,
    load_graph,
    minimal_presentation,
    morse_presentation,
    parse_graph,
    phase_constraints,
    physical_presentation,
    skeleton_presentation,
    solve_representation,
    stability,
    subdivide,
    verify_representation,
)

__all__ = [
    "ComputationError",
    "FPGroup",
    "Graph",
    "MorseComplex",
    "ValidationError",
    "__version__",
    "classify_theta_component",
    "h1",
    "is_sufficiently_subdivided",
    "load_graph",
    "minimal_presentation",
    "morse_presentation",
    "parse_graph",
    "phase_constraints",
    "physical_presentation",
    "skeleton_presentation",
    "solve_representation",
    "stability",
    "subdivide",
    "verify_representation",
]
