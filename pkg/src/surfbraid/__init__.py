"""Computations in surface mixed braid groups: explicit presentations,
the abelianized kernel and its coset action, the integer constraint
system for sections of the strand-forgetting sequence, and a verified
geometric section for one forgotten strand."""

from .words import Word, commutator, concat, invert, letter, parse, render, sym
from .presentations import (
    Presentation,
    build_closed,
    build_kernel_abelianization,
    build_mixed,
    build_mixed_quotient,
    build_punctured,
    serialize,
    z_m_word,
)
from .intlinalg import (
    ParameterAnswer,
    ParametricSystem,
    SmithDecomposition,
    feasible_parameter_set,
    invariant_factors,
    smith,
    solution_space,
    solve_witness,
)
from .kernel_action import (
    ActionMatrix,
    ExponentVector,
    NormalForm,
    abelianize,
    action_of,
    kernel_correction,
    nf_combine,
    normalize,
)
from .section_solver import (
    ObstructionReport,
    build_ansatz,
    extract_constraints,
    obstruction,
    reduced_form,
    verify_ansatz,
)
from .geometry import (
    MeridianCycle,
    RetractionMap,
    TriangulatedSurface,
    build_retraction,
    export_section_data,
    meridian,
    section_maps,
    triangulate,
    verify_sections,
)

__version__ = "0.1.0"
