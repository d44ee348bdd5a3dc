"""Connected components and hole counts of binary rasters.

Foreground is treated as 8-connected and background as 4-connected,
the standard dual pairing that keeps the discrete picture consistent
with the topology of the union of closed pixels: two diagonal
foreground pixels touch at a corner, and that same corner separates
the two background pixels between them.

Labelling is two-pass with union-find.  The first pass decomposes each
raster line into runs and merges runs on neighbouring lines; the second
pass resolves the forest and writes final labels, numbered in the order
each component is first encountered in storage order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import BinaryField, GridSpec

__all__ = ["LabelField", "label_components", "count_holes", "euler_characteristic"]


@dataclass(frozen=True, eq=False)
class LabelField:
    """Component labels for a binary raster.

    ``labels`` holds 0 on background and 1..count on foreground, in the
    same (column, row) layout as the raster it came from.
    """

    spec: GridSpec
    labels: np.ndarray
    count: int


def _runs(values: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Decompose each axis-0 line into maximal runs of ones along axis 1.

    Returns (line, start, end) arrays with inclusive ends, ordered by
    (line, start).  A zero column is appended before flattening so runs
    cannot straddle two lines.
    """
    M0, M1 = values.shape
    padded = np.zeros((M0, M1 + 1), dtype=np.int8)
    padded[:, :M1] = values
    flat = padded.ravel()
    d = np.diff(flat, prepend=0, append=0)
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1) - 1
    return starts // (M1 + 1), starts % (M1 + 1), ends % (M1 + 1)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]  # path halving
        x = parent[x]
    return x


def label_components(field: BinaryField, connectivity: int = 8) -> LabelField:
    """Label the foreground components of ``field``.

    Args:
        field: binary raster.
        connectivity: 8 (default, corner contact joins) or 4.

    Returns:
        LabelField with labels in first-encounter order.
    """
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity!r}")
    values = field.values
    line, start, end = _runs(values)
    nruns = len(line)
    labels = np.zeros(values.shape, dtype=np.int32)
    if nruns == 0:
        return LabelField(field.spec, labels, 0)

    # line boundaries in the run arrays; line is sorted ascending
    first = np.searchsorted(line, np.arange(values.shape[0] + 1))
    gap = 1 if connectivity == 8 else 0
    parent = list(range(nruns))
    for ln in range(1, values.shape[0]):
        p, pe = first[ln - 1], first[ln]
        q, qe = first[ln], first[ln + 1]
        while p < pe and q < qe:
            if end[p] + gap < start[q]:
                p += 1
            elif end[q] + gap < start[p]:
                q += 1
            else:
                rp, rq = _find(parent, p), _find(parent, q)
                if rp != rq:
                    parent[max(rp, rq)] = min(rp, rq)
                if end[p] <= end[q]:
                    p += 1
                else:
                    q += 1

    next_label = 0
    label_of_root: dict[int, int] = {}
    for r in range(nruns):
        root = _find(parent, r)
        lbl = label_of_root.get(root)
        if lbl is None:
            next_label += 1
            lbl = next_label
            label_of_root[root] = lbl
        labels[line[r], start[r] : end[r] + 1] = lbl
    return LabelField(field.spec, labels, next_label)


def count_holes(field: BinaryField) -> int:
    """Number of 4-connected background components not touching the border."""
    complement = BinaryField(field.spec, 1 - field.values)
    lab = label_components(complement, connectivity=4)
    border = np.concatenate(
        [lab.labels[0, :], lab.labels[-1, :], lab.labels[:, 0], lab.labels[:, -1]]
    )
    touching = np.unique(border[border > 0])
    return lab.count - len(touching)


def euler_characteristic(field: BinaryField) -> int:
    """Euler characteristic: components minus holes under the (8, 4) pairing."""
    return label_components(field, connectivity=8).count - count_holes(field)
