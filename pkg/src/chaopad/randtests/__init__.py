"""Chi-square seed tests, an SP 800-22 subset and their numeric kernels."""

from .appendix import monobit_chi2, serial_chi2
from .fft import fft
from .nist import (
    nist_approx_entropy,
    nist_block_frequency,
    nist_cusum,
    nist_dfft,
    nist_frequency,
    nist_longest_run,
    nist_runs,
    nist_serial,
)
from .result import TestConfig, TestResult
from .special import chi2_critical, erfc, igamc
from .suite import NIST_TEST_NAMES, TEST_NAMES, format_json, format_text, run_suite, suite_passed

__all__ = [
    "TestConfig", "TestResult", "chi2_critical", "erfc", "fft", "format_json", "format_text",
    "igamc", "monobit_chi2", "nist_approx_entropy", "nist_block_frequency", "nist_cusum",
    "nist_dfft", "nist_frequency", "nist_longest_run", "nist_runs", "nist_serial",
    "run_suite", "serial_chi2", "suite_passed", "NIST_TEST_NAMES", "TEST_NAMES",
]
