"""Projective coordinates for point clouds from persistent cohomology."""

from ._impl import (
    InvalidInput,
    NumericalFailure,
    __version__,
    choose_dimension,
    distance_matrix,
    generate,
    harmonic_smoothing,
    maxmin,
    persistent_cohomology,
    principal_components,
    proj_distance,
    project,
    run_pipeline,
    sparse_rips,
    viz_cp1_hopf,
    viz_rp_disk,
)

__all__ = [
    "InvalidInput",
    "NumericalFailure",
    "__version__",
    "choose_dimension",
    "distance_matrix",
    "generate",
    "harmonic_smoothing",
    "maxmin",
    "persistent_cohomology",
    "principal_components",
    "proj_distance",
    "project",
    "run_pipeline",
    "sparse_rips",
    "viz_cp1_hopf",
    "viz_rp_disk",
]
