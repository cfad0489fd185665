"""Star algebras, projective-bimodule cells, and exact classification of
their action-matrix families."""

from .bimodule_2cat import (
    IDENTITY,
    CellStructure,
    OneMorphism,
    TwoSubcategory,
    cell_structure,
    composition_table,
    full_projective_subcategory,
    left_cell_subcategory,
    right_cell_subcategory,
    subcategory_closure,
)
from .cell_rep import (
    CellRepresentation,
    CellSubrep,
    cell_2rep,
    left_cell_representation,
    maximal_invariant_ideal,
    principal_cell_subrep,
    right_cell_representation,
    simples_action_matrix,
)
from .matrix_solver import (
    ClassificationReport,
    ConstraintTier,
    FlorForm,
    Side,
    SolutionFamily,
    classify,
    count_set_partitions,
    decompose,
    enumerate_total_matrices,
    flor_normal_form,
    is_quasi_idempotent,
    iter_set_partitions,
)
from .quiver_algebra import (
    AlgebraElement,
    Arrow,
    NormalPath,
    PathAlgebra,
    Quiver,
    Relation,
    algebra_from_json,
    algebra_to_json,
    build_star_algebra,
    quiver_from_json,
    quiver_to_json,
    star_quiver,
    star_relations,
)

__version__ = "0.1.0"
