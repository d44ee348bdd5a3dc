"""Exception types shared across the package.

Input-validation problems derive from ValueError so callers can treat
them uniformly; conditions that arise from the numbers themselves
(failed embeddings, singular covariances, empty excursions) derive
from RuntimeError and map to a distinct process exit code in the CLI.
"""


class NoExcursionBoundaryError(RuntimeError):
    """The binary raster contains no 0-to-1 neighbour change."""


class EmbeddingFailureError(RuntimeError):
    """Circulant embedding produced a significantly negative spectrum."""


class NonSmoothModelError(ValueError):
    """The covariance model has no finite second spectral moment."""


class UndefinedMapeError(ValueError):
    """MAPE requested against reference values that include zero."""


class DegenerateCovarianceError(RuntimeError):
    """Sample covariance matrix is singular."""
