import math

import numpy as np
import pytest

from blockperim import (
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


def test_spec_spacing_and_area():
    spec = GridSpec(2.5, 6)
    assert spec.epsilon == 1.0
    assert spec.area() == 25.0
    assert np.allclose(spec.axis_coords(), [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5])


def test_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(0.0, 6)
    with pytest.raises(ValueError):
        GridSpec(2.5, 1)


def test_binary_field_rejects_bad_values():
    spec = GridSpec(1.0, 3)
    with pytest.raises(ValueError):
        BinaryField(spec, np.full((3, 3), 2, dtype=np.uint8))
    with pytest.raises(ValueError):
        BinaryField(spec, np.zeros((3, 4), dtype=np.uint8))
    with pytest.raises(ValueError):
        BinaryField(spec, np.zeros((4, 4), dtype=np.uint8))


def test_scalar_field_rejects_non_finite():
    spec = GridSpec(1.0, 3)
    vals = np.zeros((3, 3))
    vals[1, 1] = np.nan
    with pytest.raises(ValueError):
        ScalarField(spec, vals)


def test_fields_are_read_only():
    spec = GridSpec(1.0, 3)
    f = BinaryField(spec, np.zeros((3, 3), dtype=np.uint8))
    with pytest.raises(ValueError):
        f.values[0, 0] = 1


def test_threshold_is_at_least():
    spec = GridSpec(1.0, 2)
    f = ScalarField(spec, np.array([[0.0, 0.5], [0.49999, 1.0]]))
    b = threshold(f, 0.5)
    assert b.values.tolist() == [[0, 1], [0, 1]]


def test_block_origins_cover_and_order():
    got = block_origins(6, 4)
    assert got.tolist() == [[0, 0], [0, 4], [4, 0], [4, 4]]
    assert block_origins(6, 6).tolist() == [[0, 0]]
    assert len(block_origins(7, 2)) == 16


def test_pbm_round_trip(tmp_path):
    rng = np.random.default_rng(5)
    spec = GridSpec(2.5, 9)
    f = BinaryField(spec, (rng.random((9, 9)) < 0.4).astype(np.uint8))
    path = tmp_path / "f.pbm"
    write_pbm(f, path)
    g = read_pbm(path)
    assert g.spec == f.spec
    assert np.array_equal(g.values, f.values)
    # writing the reread field reproduces the file byte for byte
    path2 = tmp_path / "g.pbm"
    write_pbm(g, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_pbm_row_zero_is_top_of_domain(tmp_path):
    # only the pixel at (x=-1, y=+1), i.e. top-left of the image
    spec = GridSpec(1.0, 3)
    vals = np.zeros((3, 3), dtype=np.uint8)
    vals[0, 2] = 1  # i=0 (x=-1), j=2 (y=+1)
    path = tmp_path / "corner.pbm"
    write_pbm(BinaryField(spec, vals), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "P1"
    raster = [ln for ln in lines[1:] if ln and not ln.startswith("#")]
    assert raster[0].split() == ["3", "3"]
    flat = "".join(raster[1:]).replace(" ", "")
    assert flat[0] == "1" and flat.count("1") == 1


def test_pbm_requires_matching_spacing(tmp_path):
    spec = GridSpec(1.0, 3)
    f = BinaryField(spec, np.zeros((3, 3), dtype=np.uint8))
    path = tmp_path / "f.pbm"
    write_pbm(f, path)
    text = path.read_text().replace("t=1.0", "t=2.0")
    bad = tmp_path / "bad.pbm"
    bad.write_text(text)
    with pytest.raises(ValueError):
        read_pbm(bad)


def test_grf1_round_trip_exact(tmp_path):
    rng = np.random.default_rng(11)
    spec = GridSpec(3.0, 5)
    f = ScalarField(spec, rng.normal(size=(5, 5)))
    path = tmp_path / "f.grf1"
    write_grf1(f, path)
    g = read_grf1(path)
    assert g.spec == f.spec
    assert np.array_equal(g.values, f.values)  # bitwise, not approximate


def test_grf1_rejects_truncated(tmp_path):
    spec = GridSpec(1.0, 4)
    f = ScalarField(spec, np.zeros((4, 4)))
    path = tmp_path / "f.grf1"
    write_grf1(f, path)
    data = path.read_bytes()
    bad = tmp_path / "bad.grf1"
    bad.write_bytes(data[:-8])
    with pytest.raises(ValueError):
        read_grf1(bad)
