"""Shared fixtures and slow-but-obviously-correct reference implementations.

The oracles here deliberately avoid numpy vectorization and the package's
own code paths: block counts by direct transcription of the definition,
topology by breadth-first flood fill, and the Euler characteristic by
set-counting vertices, edges, and faces of the closed pixel complex.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np
import pytest

from blockperim import BinaryField, GridSpec, ScalarField

# 6x6 worked example: nine 2x2 blocks whose (n_h, n_v) pairs and both
# norm totals are pinned in the estimator tests.
TABLE_GRID = np.array(
    [
        [1, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 1, 0],
        [1, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [1, 1, 1, 1, 0, 0],
        [1, 1, 1, 1, 1, 0],
    ],
    dtype=np.uint8,
)

TABLE_BLOCK_COUNTS = {
    (0, 0): (2, 0), (0, 2): (1, 0), (0, 4): (1, 2),
    (2, 0): (2, 1), (2, 2): (0, 2), (2, 4): (0, 0),
    (4, 0): (0, 0), (4, 2): (1, 0), (4, 4): (1, 1),
}


@pytest.fixture
def table_field() -> BinaryField:
    return BinaryField(GridSpec(2.5, 6), TABLE_GRID)


def naive_block_counts(values: np.ndarray, m: int) -> dict[tuple[int, int], tuple[int, int]]:
    """Per-block transition counts, written as plain loops over the definition."""
    big_m = values.shape[0]
    z = values.astype(int)
    out = {}
    for a in range(0, big_m, m):
        for b in range(0, big_m, m):
            n_h = sum(
                abs(z[i][j] - z[i][j + 1])
                for i in range(a, min(a + m, big_m))
                for j in range(b, min(b + m, big_m - 1))
            )
            n_v = sum(
                abs(z[i][j] - z[i + 1][j])
                for i in range(a, min(a + m, big_m - 1))
                for j in range(b, min(b + m, big_m))
            )
            out[(a, b)] = (n_h, n_v)
    return out


def naive_perimeter(field: BinaryField, m: int, p: int) -> float:
    counts = naive_block_counts(field.values, m)
    total = sum((n_h**p + n_v**p) ** (1.0 / p) for n_h, n_v in counts.values())
    return field.spec.epsilon * total


_STEPS_4 = ((-1, 0), (1, 0), (0, -1), (0, 1))
_STEPS_8 = tuple(
    (di, dj) for di in (-1, 0, 1) for dj in (-1, 0, 1) if (di, dj) != (0, 0)
)


def flood_count(mask: np.ndarray, connectivity: int) -> int:
    """Number of connected components of True pixels, by flood fill."""
    steps = _STEPS_8 if connectivity == 8 else _STEPS_4
    rows, cols = mask.shape
    seen = np.zeros(mask.shape, dtype=bool)
    count = 0
    for si in range(rows):
        for sj in range(cols):
            if not mask[si, sj] or seen[si, sj]:
                continue
            count += 1
            seen[si, sj] = True
            queue = deque([(si, sj)])
            while queue:
                i, j = queue.popleft()
                for di, dj in steps:
                    a, b = i + di, j + dj
                    if 0 <= a < rows and 0 <= b < cols and mask[a, b] and not seen[a, b]:
                        seen[a, b] = True
                        queue.append((a, b))
    return count


def flood_holes(values: np.ndarray) -> int:
    """Background 4-components not reachable from the border, by flood fill."""
    bg = values == 0
    padded = np.pad(bg, 1, constant_values=True)
    reach = np.zeros(padded.shape, dtype=bool)
    reach[0, 0] = True
    queue = deque([(0, 0)])
    while queue:
        i, j = queue.popleft()
        for di, dj in _STEPS_4:
            a, b = i + di, j + dj
            if (
                0 <= a < padded.shape[0]
                and 0 <= b < padded.shape[1]
                and padded[a, b]
                and not reach[a, b]
            ):
                reach[a, b] = True
                queue.append((a, b))
    inner = padded & ~reach
    return flood_count(inner[1:-1, 1:-1], 4)


def euler_vef(values: np.ndarray) -> int:
    """V - E + F of the union of closed unit squares over foreground pixels."""
    vertices: set[tuple[int, int]] = set()
    edges: set[tuple[tuple[int, int], tuple[int, int]]] = set()
    faces = 0
    rows, cols = values.shape
    for i in range(rows):
        for j in range(cols):
            if not values[i, j]:
                continue
            faces += 1
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            vertices.update(corners)
            for k in range(4):
                a, b = corners[k], corners[(k + 1) % 4]
                edges.add((min(a, b), max(a, b)))
    return len(vertices) - len(edges) + faces


def disk_field(t: float, m_side: int, radius: float, centre=(0.0, 0.0)) -> BinaryField:
    """Exact rasterization of a closed disk: pixel on iff its point is inside."""
    spec = GridSpec(t, m_side)
    x = spec.axis_coords()
    dx = x[:, None] - centre[0]
    dy = x[None, :] - centre[1]
    inside = (dx * dx + dy * dy) <= radius * radius
    return BinaryField(spec, inside.astype(np.uint8))


def half_plane_field(t: float, m_side: int, normal=(1.0, 0.0), offset: float = 0.0) -> BinaryField:
    """Rasterized half-plane {s : <normal, s> >= offset}."""
    spec = GridSpec(t, m_side)
    x = spec.axis_coords()
    val = normal[0] * x[:, None] + normal[1] * x[None, :]
    return BinaryField(spec, (val >= offset).astype(np.uint8))


def scalar_from_function(t: float, m_side: int, fn) -> ScalarField:
    """Sample fn(x, y) on the grid; fn must broadcast over arrays."""
    spec = GridSpec(t, m_side)
    x = spec.axis_coords()
    return ScalarField(spec, np.asarray(fn(x[:, None], x[None, :]), dtype=float))


def random_binary_fields(count: int, seed: int, max_side: int = 24):
    """Reproducible list of random small rasters for property tests."""
    rng = np.random.default_rng(seed)
    fields = []
    for _ in range(count):
        side = int(rng.integers(2, max_side + 1))
        density = rng.uniform(0.15, 0.85)
        vals = (rng.random((side, side)) < density).astype(np.uint8)
        fields.append(BinaryField(GridSpec(1.0, side), vals))
    return fields
