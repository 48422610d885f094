import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chaopad import seed
from chaopad.errors import NotPowerOfTwoSquare, RangeError

import reference

SET_A = seed.SeedParams(0.2, 0.6, 4.0, 3.99997, 262144)


def test_api_examples():
    assert seed.average_pixel_intensity(np.array([[10, 20], [30, 40]])) == 25.0
    assert seed.average_pixel_intensity(np.full((4, 4), 77)) == 77.0
    assert seed.average_pixel_intensity(np.array([[0, 100], [200, 100]])) == 100.0


def test_binarize_threshold():
    img = np.array([[10, 20, 30, 40]] * 4, dtype=np.uint8)
    assert seed.binarize(img)[0].tolist() == [0, 0, 1, 1]


def test_binarize_constant_is_all_white():
    assert seed.binarize(np.full((8, 8), 9, np.uint8)).all()


def test_binarize_fractional_mean():
    img = np.zeros((4, 4), np.uint8)
    img[0, 0] = 1  # mean 1/16: only the nonzero pixel is at or above it
    assert seed.binarize(img).sum() == 1


@pytest.mark.parametrize("shape", [(4, 8), (6, 6), (2, 2), (3, 3)])
def test_grid_must_be_power_of_two_square(shape):
    with pytest.raises(NotPowerOfTwoSquare):
        seed.binarize(np.zeros(shape, np.uint8))


def test_params_validated():
    with pytest.raises(RangeError):
        seed.SeedParams(0.2, 0.6, 3.5, 4.0, 10)
    with pytest.raises(RangeError):
        seed.SeedParams(0.2, 0.6, 4.0, 4.0, 0)


def test_single_flip_cell():
    bm = np.zeros((256, 256), np.uint8)
    out = seed.scramble(bm, seed.SeedParams(0.2, 0.2, 4.0, 4.0, 1))
    assert out.sum() == 1 and out[163, 163] == 1


def test_scramble_matches_reference():
    rng = np.random.default_rng(5)
    img = rng.integers(0, 256, (16, 16), dtype=np.uint8)
    sp = seed.SeedParams(0.31, 0.77, 3.99999, 3.99996, 5000)
    got = seed.scramble(seed.binarize(img), sp)
    want = reference.seed_matrix(img.tolist(), sp.x0, sp.y0, sp.rx, sp.ry, sp.m)
    assert got.tolist() == want


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3000))
def test_scramble_is_parity_and_hamming_bounded(m):
    sp = seed.SeedParams(0.41, 0.13, 4.0, 3.99998, m)
    bm = np.zeros((8, 8), np.uint8)
    out = seed.scramble(bm, sp)
    counts = seed.visit_counts(sp, 3)
    assert np.array_equal(out, counts & 1)
    assert counts.sum() == m
    assert out.sum() <= m


def test_row_and_col_bits():
    assert seed.row_bits(np.array([[1, 0], [0, 1]])).tolist() == [1, 0, 0, 1]
    assert seed.col_bits(np.array([[1, 0], [0, 1]])).tolist() == [1, 0, 0, 1]
    assert seed.row_bits(np.array([[1, 1], [0, 0]])).tolist() == [1, 1, 0, 0]
    assert seed.col_bits(np.array([[1, 1], [0, 0]])).tolist() == [1, 0, 1, 0]


def test_validate_all_zero_fails():
    report = seed.validate_seed(np.zeros((16, 16), np.uint8))
    assert not report.passed
    assert report.monobit_rows.statistics["chi2"] == 256
    assert report.monobit_cols.statistics["chi2"] == 256


def test_validate_balanced_monobit_zero():
    bm = np.zeros((16, 16), np.uint8)
    bm[:, ::2] = 1
    report = seed.validate_seed(bm)
    assert report.monobit_rows.statistics["chi2"] == 0
    assert report.monobit_cols.statistics["chi2"] == 0
    # rows alternate, columns are constant runs
    assert not report.serial_rows.passed


def test_validation_critical_values():
    report = seed.validate_seed(np.zeros((16, 16), np.uint8))
    assert report.monobit_critical == pytest.approx(3.8415, abs=5e-5)
    assert report.serial_critical == pytest.approx(5.9915, abs=5e-5)
    assert "monobit" in report.format_table("C'")
    assert set(report.to_dict()) >= {"passed", "alpha"}


def test_constant_image_fails_after_few_flips():
    img = np.full((16, 16), 50, np.uint8)
    sp = seed.SeedParams(0.2, 0.6, 4.0, 3.99997, 40)
    matrix, report = seed.prepare_seed(img, sp)
    assert not report.passed
    odd = int((seed.visit_counts(sp, 4) & 1).sum())
    assert report.monobit_rows.statistics["chi2"] == pytest.approx((256 - 2 * odd) ** 2 / 256)
    assert int(matrix.sum()) == 256 - odd


def test_bundled_image_set_a_passes(seed_image):
    matrix, report = seed.prepare_seed(seed_image, SET_A)
    assert report.passed
    again, _ = seed.prepare_seed(seed_image, SET_A)
    assert np.array_equal(matrix, again)
