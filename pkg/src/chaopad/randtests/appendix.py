"""Chi-square monobit and two-bit serial tests used for seed validation."""

from functools import lru_cache

import numpy as np

from ..errors import TooShort
from .result import FAIL, PASS, TestResult
from .special import chi2_critical

MIN_BITS = 100


@lru_cache(maxsize=None)
def critical_value(df, alpha):
    return chi2_critical(df, alpha)


def _as_bits(bits):
    return np.asarray(bits, dtype=np.uint8).ravel()


def monobit_chi2(bits, alpha=0.05, name="monobit_chi2"):
    """chi2 = (n0 - n1)^2 / n against the 1-df critical value."""
    bits = _as_bits(bits)
    n = bits.size
    if n < MIN_BITS:
        raise TooShort(name, MIN_BITS, n)
    n1 = int(np.count_nonzero(bits))
    n0 = n - n1
    chi2 = (n0 - n1) ** 2 / n
    crit = critical_value(1, alpha)
    stats = {"n": n, "n0": n0, "n1": n1, "chi2": chi2, "critical": crit}
    return TestResult(name, stats, (), PASS if chi2 < crit else FAIL, alpha)


def serial_chi2(bits, alpha=0.05, name="serial_chi2"):
    """Overlapping-pair statistic against the 2-df critical value.

    chi2 = 4/(n-1) * sum(n_ab^2) - 2/n * (n0^2 + n1^2) + 1.  The formula
    is only asymptotically chi-square and can dip slightly below zero on
    near-perfectly balanced input; it is reported as computed.
    """
    bits = _as_bits(bits)
    n = bits.size
    if n < MIN_BITS:
        raise TooShort(name, MIN_BITS, n)
    n1 = int(np.count_nonzero(bits))
    n0 = n - n1
    pairs = np.bincount(2 * bits[:-1] + bits[1:], minlength=4)
    n00, n01, n10, n11 = (int(c) for c in pairs)
    pair_sq = n00 * n00 + n01 * n01 + n10 * n10 + n11 * n11
    chi2 = 4.0 * pair_sq / (n - 1) - 2.0 * (n0 * n0 + n1 * n1) / n + 1.0
    crit = critical_value(2, alpha)
    stats = {
        "n": n, "n0": n0, "n1": n1,
        "n00": n00, "n01": n01, "n10": n10, "n11": n11,
        "chi2": chi2, "critical": crit,
    }
    return TestResult(name, stats, (), PASS if chi2 < crit else FAIL, alpha)
