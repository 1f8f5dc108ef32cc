"""Exact-arithmetic computations on rational polyhedral cones and complete
fans: face lattices, the levelwise cochain complexes of their toric
varieties, local cohomological defects, Hodge tables, divisor connecting
maps, and combinatorial defect criteria.
"""

from .criteria import (
    FORCES_LCDEF_0,
    FORCES_LCDEF_1,
    INCONCLUSIVE,
    CriterionVerdict,
    ShellingFiltration,
    euler_criterion,
    find_shelling,
    shelling_filtration,
    shelling_ray_criterion,
    simplicial_star_criterion,
)
from .errors import (
    ApexInHyperplane,
    InvalidShelling,
    NotAComplex,
    NotAmple,
    NotAPermutation,
    NotComplete,
    NotContained,
    NotCovering,
    NotFullDim,
    NotInterior,
    NotQCartier,
    NotStronglyConvex,
    ParseError,
    SizeGuard,
    SpanViolation,
    ToricError,
    ValidationError,
    WrongDimension,
    ZeroVector,
)
from .ishida import (
    CohomologyTable,
    LabeledComplex,
    assemble_complex,
    cohomology,
    cone_cohomology_table,
    fan_cohomology_table,
    graded_piece,
    is_simplicial,
    ishida_cone,
    ishida_fan,
    lcdef_cone,
    lcdef_variety,
    restricted_complex,
)
from .lefschetz import (
    DivisorData,
    EquivalenceReport,
    HardLefschetzReport,
    HodgeTable,
    LesReport,
    LiftedComplexes,
    connecting_map,
    hard_lefschetz_injectivity_check,
    hodge_table,
    lcdef4_via_exceptional,
    lefschetz_equivalence_check,
    les_theorem,
    lifted_complex,
    support_data,
)
from .polyhedral import (
    Cone,
    Face,
    FaceLattice,
    Fan,
    Shelling,
    cone_from_rays,
    face_lattice,
    fan_from_cones,
    is_shelling,
    line_shelling,
    normal_generator,
    pyramid,
    star_quotient,
)

__all__ = [
    "ApexInHyperplane",
    "CohomologyTable",
    "Cone",
    "CriterionVerdict",
    "DivisorData",
    "EquivalenceReport",
    "Face",
    "FaceLattice",
    "Fan",
    "FORCES_LCDEF_0",
    "FORCES_LCDEF_1",
    "HardLefschetzReport",
    "HodgeTable",
    "INCONCLUSIVE",
    "InvalidShelling",
    "LabeledComplex",
    "LesReport",
    "LiftedComplexes",
    "NotAComplex",
    "NotAmple",
    "NotAPermutation",
    "NotComplete",
    "NotContained",
    "NotCovering",
    "NotFullDim",
    "NotInterior",
    "NotQCartier",
    "NotStronglyConvex",
    "ParseError",
    "Shelling",
    "ShellingFiltration",
    "SizeGuard",
    "SpanViolation",
    "ToricError",
    "ValidationError",
    "WrongDimension",
    "ZeroVector",
    "assemble_complex",
    "cohomology",
    "cone_cohomology_table",
    "cone_from_rays",
    "connecting_map",
    "euler_criterion",
    "face_lattice",
    "fan_cohomology_table",
    "fan_from_cones",
    "find_shelling",
    "graded_piece",
    "hard_lefschetz_injectivity_check",
    "hodge_table",
    "is_shelling",
    "is_simplicial",
    "ishida_cone",
    "ishida_fan",
    "lcdef4_via_exceptional",
    "lcdef_cone",
    "lcdef_variety",
    "lefschetz_equivalence_check",
    "les_theorem",
    "lifted_complex",
    "line_shelling",
    "normal_generator",
    "pyramid",
    "restricted_complex",
    "shelling_filtration",
    "shelling_ray_criterion",
    "simplicial_star_criterion",
    "star_quotient",
    "support_data",
]

__version__ = "0.1.0"
