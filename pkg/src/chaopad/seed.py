"""Seed preparation: grayscale key image -> validated dynamic black-white image.

A bit matrix is a square ``uint8`` array of zeros (black) and ones (white)
with side ``2^k``.  Grayscale images are 2-D ``uint8`` arrays indexed
``[row, column]``.
"""

from dataclasses import dataclass

import numpy as np

from . import chaos
from .errors import NotPowerOfTwoSquare, RangeError
from .randtests.appendix import monobit_chi2, serial_chi2


def grid_exponent(img):
    """Return k for a 2^k x 2^k image (k >= 2), else raise."""
    h, w = np.shape(img)
    k = h.bit_length() - 1
    if h != w or h < 4 or h != 1 << k:
        raise NotPowerOfTwoSquare(f"seed image must be 2^k x 2^k with k >= 2, got {h}x{w}")
    return k


def average_pixel_intensity(img):
    img = np.asarray(img)
    if img.size == 0:
        raise ValueError("empty image")
    # Exact integer sum; only the final division rounds.
    return int(img.sum(dtype=np.int64)) / img.size


def binarize(img):
    """Threshold at the average intensity: below -> 0, at or above -> 1."""
    img = np.asarray(img)
    grid_exponent(img)
    total = int(img.sum(dtype=np.int64))
    # pixel >= total / size, compared exactly in integers
    return (img.astype(np.int64) * img.size >= total).astype(np.uint8)


@dataclass(frozen=True)
class SeedParams:
    x0: float
    y0: float
    rx: float
    ry: float
    m: int

    def __post_init__(self):
        chaos.check_state(self.x0)
        chaos.check_state(self.y0)
        chaos.check_param(self.rx)
        chaos.check_param(self.ry)
        if int(self.m) != self.m or self.m < 1:
            raise RangeError(f"flip count M must be a positive integer, got {self.m!r}")


def visit_counts(sp, k):
    """How many times each cell is hit by the M-step planar orbit."""
    idx, _, _ = chaos.planar_indices(sp.x0, sp.y0, sp.rx, sp.ry, sp.m, k)
    return np.bincount(idx, minlength=1 << (2 * k)).reshape(1 << k, 1 << k)


def scramble(bm, sp):
    """Complement the cell under each of the M orbit points.

    A cell flipped an even number of times ends where it started, so the
    result is the input XOR the parity of the visit counts.
    """
    bm = np.asarray(bm, dtype=np.uint8)
    k = grid_exponent(bm)
    parity = (visit_counts(sp, k) & 1).astype(np.uint8)
    return bm ^ parity


def row_bits(bm):
    return np.ascontiguousarray(bm, dtype=np.uint8).ravel()


def col_bits(bm):
    return np.ascontiguousarray(np.asarray(bm, dtype=np.uint8).T).ravel()


@dataclass(frozen=True)
class SeedValidationReport:
    monobit_rows: object
    monobit_cols: object
    serial_rows: object
    serial_cols: object
    alpha: float

    @property
    def results(self):
        return (self.monobit_rows, self.monobit_cols, self.serial_rows, self.serial_cols)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    @property
    def monobit_critical(self):
        return self.monobit_rows.statistics["critical"]

    @property
    def serial_critical(self):
        return self.serial_rows.statistics["critical"]

    def format_table(self, label=""):
        """Text rendering in the column layout of a monobit/serial table."""
        def chi(r):
            return f"{r.statistics['chi2']:.4f}"

        lines = [
            f"{'':<10}{'monobit':>22}{'serial':>22}{'critical (alpha=' + format(self.alpha, 'g') + ')':>30}",
            f"{'':<10}{'rows':>11}{'cols':>11}{'rows':>11}{'cols':>11}{'monobit':>15}{'serial':>15}",
            f"{label:<10}{chi(self.monobit_rows):>11}{chi(self.monobit_cols):>11}"
            f"{chi(self.serial_rows):>11}{chi(self.serial_cols):>11}"
            f"{self.monobit_critical:>15.4f}{self.serial_critical:>15.4f}",
            f"verdict: {'PASS' if self.passed else 'FAIL'}",
        ]
        return "\n".join(lines)

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "passed": self.passed,
            "tests": [r.to_dict() for r in self.results],
        }


def validate_seed(bm, alpha=0.05):
    rows, cols = row_bits(bm), col_bits(bm)
    return SeedValidationReport(
        monobit_rows=monobit_chi2(rows, alpha, name="monobit_chi2[rows]"),
        monobit_cols=monobit_chi2(cols, alpha, name="monobit_chi2[cols]"),
        serial_rows=serial_chi2(rows, alpha, name="serial_chi2[rows]"),
        serial_cols=serial_chi2(cols, alpha, name="serial_chi2[cols]"),
        alpha=alpha,
    )


def prepare_seed(img, sp, alpha=0.05):
    """binarize -> scramble -> validate; returns ``(C', report)``."""
    seed = scramble(binarize(img), sp)
    return seed, validate_seed(seed, alpha)
