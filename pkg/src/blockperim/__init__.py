"""Block-count perimeter estimation for excursion sets on pixel grids."""

from .errors import (
    DegenerateCovarianceError,
    EmbeddingFailureError,
    NoExcursionBoundaryError,
    NonSmoothModelError,
    UndefinedMapeError,
)
from .estimator import BlockCounts, PerimeterEstimate, block_counts, perimeter_hat, select_m
from .expected import (
    MaternModel,
    ellipse_perimeter,
    expected_perimeter_affine,
    expected_perimeter_isotropic,
    matern_cov,
    second_spectral_moment,
)
from .grid import (
    BinaryField,
    GridSpec,
    ScalarField,
    block_origins,
    read_grf1,
    read_pbm,
    threshold,
    write_grf1,
    write_pbm,
)
from .proxy import marching_squares_length
from .simulate import AnisotropyTransform, SimConfig, empirical_lambda2, sample_field, transformed_cov
from .stats import (
    SampleSummary,
    chi2_quantile,
    mahalanobis_sq,
    normal_quantile,
    qq_points,
    shapiro_wilk,
    summary,
)
from .topology import LabelField, count_holes, euler_characteristic, label_components

__version__ = "0.1.0"

__all__ = [
    "AnisotropyTransform",
    "BinaryField",
    "BlockCounts",
    "DegenerateCovarianceError",
    "EmbeddingFailureError",
    "GridSpec",
    "LabelField",
    "MaternModel",
    "NoExcursionBoundaryError",
    "NonSmoothModelError",
    "PerimeterEstimate",
    "SampleSummary",
    "ScalarField",
    "SimConfig",
    "UndefinedMapeError",
    "block_counts",
    "block_origins",
    "chi2_quantile",
    "count_holes",
    "ellipse_perimeter",
    "empirical_lambda2",
    "euler_characteristic",
    "expected_perimeter_affine",
    "expected_perimeter_isotropic",
    "label_components",
    "mahalanobis_sq",
    "marching_squares_length",
    "matern_cov",
    "normal_quantile",
    "perimeter_hat",
    "qq_points",
    "read_grf1",
    "read_pbm",
    "sample_field",
    "second_spectral_moment",
    "select_m",
    "shapiro_wilk",
    "summary",
    "threshold",
    "transformed_cov",
    "write_grf1",
    "write_pbm",
]
