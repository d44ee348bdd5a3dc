"""Pixel grids over the square window [-t, t]^2 and their file formats.

A raster is indexed as ``values[i, j]`` where ``i`` is the column (first
spatial coordinate) and ``j`` is the row (second coordinate), with ``j``
increasing upward.  Node ``(i, j)`` sits at ``(-t + i*eps, -t + j*eps)``
with ``eps = 2t/(M-1)``, so the four corners of the window are grid
nodes and the sampled square has side ``(M-1)*eps = 2t`` exactly.

Two small file formats are provided:

* plain PBM (``P1``) for binary rasters, with a comment line
  ``# t=<decimal> epsilon=<decimal>`` immediately after the magic;
* ``GRF1`` for scalar fields: one ASCII header line
  ``GRF1 rows=<M> cols=<M> t=<decimal> epsilon=<decimal>`` followed by
  ``M*M`` little-endian float64 values.

Both formats store raster rows top to bottom in the usual image sense:
file row ``r`` holds vertical index ``j = M-1-r``, so a file viewed as
an image matches a plot of the field with the y axis pointing up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "GridSpec",
    "BinaryField",
    "ScalarField",
    "threshold",
    "block_origins",
    "read_pbm",
    "write_pbm",
    "read_grf1",
    "write_grf1",
]


@dataclass(frozen=True)
class GridSpec:
    """Geometry of an M-by-M raster over [-t, t]^2.

    The pixel side ``epsilon`` is derived from ``(t, M)`` rather than
    stored independently, which keeps ``M*epsilon`` within one pixel of
    ``2t`` by construction.
    """

    t: float
    M: int
    epsilon: float = field(init=False)

    def __post_init__(self) -> None:
        if not (isinstance(self.M, int) and self.M >= 2):
            raise ValueError(f"M must be an integer >= 2, got {self.M!r}")
        if not (math.isfinite(self.t) and self.t > 0):
            raise ValueError(f"t must be positive and finite, got {self.t!r}")
        object.__setattr__(self, "epsilon", 2.0 * self.t / (self.M - 1))

    def area(self) -> float:
        """Area of the sampled window, (2t)^2."""
        return (2.0 * self.t) ** 2

    def axis_coords(self) -> np.ndarray:
        """Coordinates -t, -t+eps, ..., t shared by both axes."""
        return -self.t + self.epsilon * np.arange(self.M)


def _prepare(values: np.ndarray, spec: GridSpec, dtype) -> np.ndarray:
    v = np.asarray(values)
    if v.shape != (spec.M, spec.M):
        raise ValueError(f"values must have shape {(spec.M, spec.M)}, got {v.shape}")
    v = v.astype(dtype, copy=True)
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class BinaryField:
    """An M-by-M raster with entries in {0, 1} (1 = inside the set)."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values)
        if not np.isin(v, (0, 1)).all():
            raise ValueError("binary raster entries must be 0 or 1")
        object.__setattr__(self, "values", _prepare(v, self.spec, np.uint8))


@dataclass(frozen=True, eq=False)
class ScalarField:
    """An M-by-M raster of finite float64 samples."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        v = _prepare(self.values, self.spec, np.float64)
        if not np.isfinite(v).all():
            raise ValueError("scalar field entries must all be finite")
        object.__setattr__(self, "values", v)


def threshold(field: ScalarField, u: float) -> BinaryField:
    """Excursion indicator of ``field`` at level ``u`` (1 where value >= u)."""
    if not math.isfinite(u):
        raise ValueError(f"threshold level must be finite, got {u!r}")
    return BinaryField(field.spec, (field.values >= u).astype(np.uint8))


def block_origins(M: int, m: int) -> np.ndarray:
    """Lower-left corners (a, b) of the m-by-m block partition of {0..M-1}^2.

    Returned as an (n, 2) integer array with ``a`` varying slowest,
    matching the storage order of the raster.  The final row/column of
    blocks is truncated when ``m`` does not divide ``M``.
    """
    if not (isinstance(M, int) and M >= 2):
        raise ValueError(f"M must be an integer >= 2, got {M!r}")
    if not (isinstance(m, int) and m >= 1):
        raise ValueError(f"m must be an integer >= 1, got {m!r}")
    starts = np.arange(0, M, m)
    aa, bb = np.meshgrid(starts, starts, indexing="ij")
    return np.column_stack([aa.ravel(), bb.ravel()])


# ---------------------------------------------------------------------------
# file formats

def _to_image(values: np.ndarray) -> np.ndarray:
    # (i, j) storage -> image rows top to bottom
    return values.T[::-1, :]


def _from_image(img: np.ndarray) -> np.ndarray:
    return img[::-1, :].T


def _check_epsilon(spec: GridSpec, stored: float, path: Path) -> None:
    if not math.isclose(spec.epsilon, stored, rel_tol=1e-9, abs_tol=0.0):
        raise ValueError(
            f"{path}: header epsilon {stored!r} inconsistent with t={spec.t!r}, M={spec.M}"
        )


def write_pbm(field: BinaryField, path: str | Path) -> None:
    """Write a binary raster as plain PBM with the window geometry comment."""
    spec = field.spec
    img = _to_image(field.values)
    lines = ["P1", f"# t={spec.t!r} epsilon={spec.epsilon!r}", f"{spec.M} {spec.M}"]
    lines.extend(" ".join("1" if v else "0" for v in row) for row in img)
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def read_pbm(path: str | Path) -> BinaryField:
    """Read a plain PBM raster written by :func:`write_pbm`.

    Tokenisation follows the PBM convention: ``#`` starts a comment for
    the rest of the line, and pixel digits may or may not be separated
    by whitespace.
    """
    path = Path(path)
    meta: dict[str, str] = {}
    tokens: list[str] = []
    for line in path.read_text(encoding="ascii").splitlines():
        body, _, comment = line.partition("#")
        for part in comment.split():
            key, sep, value = part.partition("=")
            if sep:
                meta.setdefault(key, value)
        tokens.extend(body.split())
    if not tokens or tokens[0] != "P1":
        raise ValueError(f"{path}: not a plain PBM (P1) file")
    if "t" not in meta or "epsilon" not in meta:
        raise ValueError(f"{path}: missing '# t=... epsilon=...' comment")
    if len(tokens) < 3:
        raise ValueError(f"{path}: truncated PBM header")
    width, height = int(tokens[1]), int(tokens[2])
    if width != height:
        raise ValueError(f"{path}: raster must be square, got {width}x{height}")
    digits = "".join(tokens[3:])
    if len(digits) != width * height or set(digits) - {"0", "1"}:
        raise ValueError(f"{path}: expected {width * height} pixel digits")
    spec = GridSpec(t=float(meta["t"]), M=width)
    _check_epsilon(spec, float(meta["epsilon"]), path)
    img = (np.frombuffer(digits.encode("ascii"), dtype=np.uint8) - ord("0")).reshape(
        height, width
    )
    return BinaryField(spec, _from_image(img))


def write_grf1(field: ScalarField, path: str | Path) -> None:
    """Write a scalar field in the GRF1 binary format."""
    spec = field.spec
    header = f"GRF1 rows={spec.M} cols={spec.M} t={spec.t!r} epsilon={spec.epsilon!r}\n"
    img = np.ascontiguousarray(_to_image(field.values), dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(img.tobytes())


def read_grf1(path: str | Path) -> ScalarField:
    """Read a GRF1 scalar field written by :func:`write_grf1`."""
    path = Path(path)
    with open(path, "rb") as fh:
        header = fh.readline().decode("ascii", errors="replace").split()
        if not header or header[0] != "GRF1":
            raise ValueError(f"{path}: not a GRF1 file")
        meta = {}
        for part in header[1:]:
            key, sep, value = part.partition("=")
            if sep:
                meta[key] = value
        try:
            rows, cols = int(meta["rows"]), int(meta["cols"])
            t, eps = float(meta["t"]), float(meta["epsilon"])
        except (KeyError, ValueError) as exc:
            raise ValueError(f"{path}: malformed GRF1 header") from exc
        if rows != cols:
            raise ValueError(f"{path}: raster must be square, got {rows}x{cols}")
        raw = fh.read(8 * rows * cols)
    if len(raw) != 8 * rows * cols:
        raise ValueError(f"{path}: truncated GRF1 payload")
    spec = GridSpec(t=t, M=rows)
    _check_epsilon(spec, eps, path)
    img = np.frombuffer(raw, dtype="<f8").reshape(rows, cols)
    return ScalarField(spec, _from_image(img))
