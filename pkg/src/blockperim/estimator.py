"""Perimeter estimation from block counts of neighbour sign changes.

The raster is split into m-by-m blocks.  Within the block anchored at
(a, b), ``n_h`` counts pixel pairs that differ from the neighbour above
(a horizontal piece of boundary) and ``n_v`` pairs that differ from the
neighbour to the right (a vertical piece).  The pair straddling two
blocks is charged to the block that contains its lower/left pixel, so
every neighbour pair in the raster is counted exactly once:

    n_h(a, b) = sum_{i=a..min(a+m-1, M-1)} sum_{j=b..min(b+m-1, M-2)}
                |z[i, j] - z[i, j+1]|

and symmetrically for ``n_v`` with the roles of the two caps swapped.
The estimate is ``eps`` times the sum over blocks of the p-norm of
(n_h, n_v).  With p=1 the block structure cancels and the value is the
raw edge count times ``eps``, which overestimates smooth isotropic
boundaries by 4/pi on average; p=2 uses the block direction to remove
the staircase bias at the price of a genuine block-size choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoExcursionBoundaryError
from .grid import BinaryField, block_origins
from .topology import count_holes, label_components

__all__ = [
    "BlockCounts",
    "PerimeterEstimate",
    "block_counts",
    "perimeter_hat",
    "select_m",
]


@dataclass(frozen=True)
class BlockCounts:
    """Sign-change counts for the block anchored at (a, b)."""

    a: int
    b: int
    n_h: int
    n_v: int


@dataclass(frozen=True)
class PerimeterEstimate:
    value: float
    p: int
    m: int
    level: float = math.nan


def _segment_sums(diffs: np.ndarray, starts: np.ndarray, axis: int) -> np.ndarray:
    """Sum ``diffs`` over the segments [s, next s) along ``axis``.

    Starts at or past the axis length begin empty segments; reduceat
    cannot represent those, so they are restored as zero slabs.
    """
    length = diffs.shape[axis]
    valid = starts[starts < length]
    out = np.add.reduceat(diffs, valid, axis=axis)
    missing = len(starts) - len(valid)
    if missing:
        shape = list(out.shape)
        shape[axis] = missing
        out = np.concatenate([out, np.zeros(shape, dtype=out.dtype)], axis=axis)
    return out


def _count_grids(values: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """(n_h, n_v) per block as integer matrices indexed by (a, b) order."""
    z = values.astype(np.int64)
    dh = np.abs(z[:, 1:] - z[:, :-1])  # |z[i, j] - z[i, j+1]|, shape (M, M-1)
    dv = np.abs(z[1:, :] - z[:-1, :])  # |z[i+1, j] - z[i, j]|, shape (M-1, M)
    starts = np.arange(0, values.shape[0], m)
    n_h = _segment_sums(_segment_sums(dh, starts, 0), starts, 1)
    n_v = _segment_sums(_segment_sums(dv, starts, 0), starts, 1)
    return n_h, n_v


def block_counts(field: BinaryField, m: int) -> list[BlockCounts]:
    """Per-block sign-change counts, ordered like :func:`block_origins`."""
    if not (isinstance(m, int) and m >= 1):
        raise ValueError(f"m must be an integer >= 1, got {m!r}")
    n_h, n_v = _count_grids(field.values, m)
    origins = block_origins(field.spec.M, m)
    return [
        BlockCounts(int(a), int(b), int(n_h[ia, ib]), int(n_v[ia, ib]))
        for (a, b), (ia, ib) in zip(
            origins, np.ndindex(n_h.shape)  # same (a slowest) order
        )
    ]


def perimeter_hat(
    field: BinaryField, m: int, p: int, level: float = math.nan
) -> PerimeterEstimate:
    """Block-count perimeter estimate of the boundary inside the window.

    Args:
        field: binary raster.
        m: block side in pixels, 1 <= m <= M-1.  Irrelevant for p=1.
        p: norm exponent, integer >= 1.
        level: optional threshold level recorded on the estimate.

    Returns:
        PerimeterEstimate whose ``value`` is eps * sum of block p-norms.
    """
    M = field.spec.M
    if not (isinstance(m, int) and 1 <= m <= M - 1):
        raise ValueError(f"m must be an integer in [1, {M - 1}], got {m!r}")
    if not (isinstance(p, int) and p >= 1):
        raise ValueError(f"p must be an integer >= 1, got {p!r}")
    n_h, n_v = _count_grids(field.values, m)
    if p == 1:
        total = float(int(n_h.sum()) + int(n_v.sum()))
    elif p == 2:
        # n_h^2 + n_v^2 <= 2 m^4 fits int64 comfortably and converts to
        # float64 exactly, so the only rounding is in the square root.
        total = float(np.sqrt((n_h * n_h + n_v * n_v).astype(np.float64)).sum())
    else:
        # exact integer powers, one float root per non-empty block
        total = 0.0
        for h, v in zip(n_h.ravel(), n_v.ravel()):
            if h or v:
                total += float(int(h) ** p + int(v) ** p) ** (1.0 / p)
    return PerimeterEstimate(field.spec.epsilon * total, p, m, level)


def select_m(field: BinaryField) -> int:
    """Data-driven block side: floor(C * eps^(-2/3)) clamped to [1, M-1].

    The constant C is (1/3) * (area / (n_components + n_holes))^(1/3),
    a plug-in estimate of how much boundary curvature the raster shows
    per unit area.  Requires a non-empty excursion boundary.
    """
    values = field.values
    if not (np.any(values[:, 1:] != values[:, :-1]) or np.any(values[1:, :] != values[:-1, :])):
        raise NoExcursionBoundaryError(
            "raster has no 0-to-1 neighbour change; cannot select a block size"
        )
    n_cc = label_components(field, connectivity=8).count
    n_holes = count_holes(field)
    c = (field.spec.area() / (n_cc + n_holes)) ** (1.0 / 3.0) / 3.0
    m = math.floor(c * field.spec.epsilon ** (-2.0 / 3.0))
    return int(min(max(m, 1), field.spec.M - 1))
