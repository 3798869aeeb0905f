"""Finite-field linear algebra, exact Grassmannian counts and party-local
homology of random stabilizer states."""

from __future__ import annotations

from .counts import (
    avoid_count_F,
    avoidE_count_K,
    deviation_bound_css,
    deviation_bound_lag,
    expected_euler_css,
    expected_euler_lag,
    grassmannian_count,
    intersection_count_H,
    isotropic_count,
    jk_ratio,
    lag_avoid_count_J,
    lag_intersection_count_M,
    lagrangian_count,
    tail_bound,
)
from .errors import StabGeomError
from .experiments import ExperimentConfig, ExperimentResult, run_experiment, run_oracle_suite
from .field import FieldSpec, field_make, field_of_order
from .fileformat import SubspaceFile, load_subspace_file
from .homology import (
    PartyStructure,
    bell_pairs,
    build_complex,
    css_double,
    direct_sum,
    duality_check,
    ghz_lagrangian,
    homology_dim,
    homology_profile,
)
from .linalg import (
    MatrixGF,
    Subspace,
    intersect,
    orth_complement,
    span_sum,
    subspace_from_rows,
    symplectic_complement,
)
from .sampling import SeedSpec, sample_cell_weighted, sample_lagrangian, sample_subspace
from .schubert import cells_A, cells_C, enumerate_grassmannian, enumerate_lagrangians

__version__ = "0.1.0"
