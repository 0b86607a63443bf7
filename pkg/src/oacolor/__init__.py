"""Orthogonal arrays from algebraic sources, their colorings, and exact color-pattern counts."""
from .census import (
    PatternCensus,
    census_via_convolution,
    embed_interval_coloring,
    full_census,
    interval_schur_census,
)
from .coloring import (
    Coloring,
    ColoringStats,
    equitable_coloring,
    from_classes,
    rainbow_free_ap_coloring,
    random_coloring,
    stats,
    subgroup_chain_coloring,
)
from .errors import (
    NonInvertibleError,
    OAColorError,
    PreconditionError,
    StructureError,
    UnsupportedInputError,
)
from .ground import (
    AbelianGroup,
    FiniteGroup,
    ModMatrix,
    Quasigroup,
    cyclic_group,
    dihedral_group,
    invert_submatrix_mod,
    validate_group,
    validate_latin,
)
from .identities import IdentityReport, check_all, verify_counting_identity
from .oa import (
    OrthogonalArray,
    SwapSpec,
    ap3_triples,
    build_z3_extension,
    from_linear_equation,
    from_linear_system,
    schur_triples,
    swap_block,
    verify_strength,
)

__version__ = "0.1.0"
