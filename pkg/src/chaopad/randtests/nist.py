"""Eight tests from NIST SP 800-22: FT, FTB, RT, LROBT, DFFT, ST, CST, AET.

Every test takes a 0/1 ``uint8`` array and returns a :class:`TestResult`
that passes when each P-value is >= ``alpha``.  Each test enforces a
minimum sequence length; pass ``check_length=False`` to run the formulas on
short worked examples.
"""

import math

import numpy as np

from ..errors import TooShort
from .fft import fft
from .result import NOT_APPLICABLE, TestResult
from .special import erfc, igamc, normal_cdf

MIN_FREQUENCY = 100
MIN_RUNS = 100
MIN_CUSUM = 100
MIN_BLOCK_FREQUENCY = 100
MIN_DFFT = 1000
MIN_APEN = 1 << 12
MIN_SERIAL = 1 << 20

# block size -> (min n, lowest class bound, degrees of freedom K, class probabilities)
LONGEST_RUN_TABLE = {
    8: (128, 1, 3, (55 / 256, 94 / 256, 59 / 256, 48 / 256)),
    128: (6272, 4, 5, (0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124)),
    10000: (750000, 10, 6, (0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727)),
}


def _bits(bits):
    return np.asarray(bits, dtype=np.uint8).ravel()


def _need(name, n, minimum, check_length):
    if check_length and n < minimum:
        raise TooShort(name, minimum, n)


def nist_frequency(bits, alpha=0.01, *, check_length=True):
    bits = _bits(bits)
    n = bits.size
    _need("FT", n, MIN_FREQUENCY, check_length)
    s = 2 * int(np.count_nonzero(bits)) - n
    s_obs = abs(s) / math.sqrt(n)
    p = erfc(s_obs / math.sqrt(2.0))
    return TestResult.from_p_values("FT", {"n": n, "s_n": s, "s_obs": s_obs}, (p,), alpha)


def default_block_size(n):
    m = 32
    while m < max(20, n / 99):
        m *= 2
    return m


def nist_block_frequency(bits, m=None, alpha=0.01, *, check_length=True):
    bits = _bits(bits)
    n = bits.size
    if m is None:
        m = default_block_size(n)
    if check_length and m < 20:
        raise ValueError(f"FTB block size must be >= 20, got {m}")
    _need("FTB", n, max(MIN_BLOCK_FREQUENCY, m), check_length)
    if n < m:
        raise TooShort("FTB", m, n)
    blocks = n // m
    ones = bits[: blocks * m].reshape(blocks, m).sum(axis=1, dtype=np.int64)
    # 4M * sum (ones/M - 1/2)^2 evaluated in integers until the last step
    chi2 = float(np.sum((2 * ones - m) ** 2)) / m
    p = igamc(blocks / 2.0, chi2 / 2.0)
    return TestResult.from_p_values("FTB", {"n": n, "m": m, "blocks": blocks, "chi2": chi2}, (p,), alpha)


def nist_runs(bits, alpha=0.01, *, check_length=True):
    bits = _bits(bits)
    n = bits.size
    _need("RT", n, MIN_RUNS, check_length)
    pi = np.count_nonzero(bits) / n
    tau = 2.0 / math.sqrt(n)
    if abs(pi - 0.5) >= tau:
        return TestResult(
            "RT", {"n": n, "pi": pi, "tau": tau}, (), NOT_APPLICABLE, alpha,
            notes="not applicable: frequency precondition failed",
        )
    v_obs = 1 + int(np.count_nonzero(bits[1:] != bits[:-1]))
    q = pi * (1.0 - pi)
    p = erfc(abs(v_obs - 2.0 * n * q) / (2.0 * math.sqrt(2.0 * n) * q))
    return TestResult.from_p_values("RT", {"n": n, "pi": pi, "v_obs": v_obs}, (p,), alpha)


def default_longest_run_block(n):
    if n >= 750000:
        return 10000
    if n >= 6272:
        return 128
    return 8


def longest_runs(bits, m):
    """Longest run of ones in each complete m-bit block."""
    blocks = bits.size // m
    framed = np.zeros((blocks, m + 2), dtype=np.uint8)
    framed[:, 1:-1] = bits[: blocks * m].reshape(blocks, m)
    zeros = np.flatnonzero(framed.ravel() == 0)
    gaps = np.diff(zeros) - 1
    # each row contributes its zeros contiguously; the gap that spans a row
    # boundary joins two sentinel zeros and is always 0
    row_start = np.searchsorted(zeros, np.arange(blocks) * (m + 2))
    return np.maximum.reduceat(np.append(gaps, 0), row_start)


def nist_longest_run(bits, m=None, alpha=0.01, *, check_length=True):
    bits = _bits(bits)
    n = bits.size
    if m is None:
        m = default_longest_run_block(n)
    if m not in LONGEST_RUN_TABLE:
        raise ValueError(f"LROBT block size must be one of {sorted(LONGEST_RUN_TABLE)}, got {m}")
    min_n, low, k, probs = LONGEST_RUN_TABLE[m]
    _need("LROBT", n, min_n, check_length)
    if n < m:
        raise TooShort("LROBT", m, n)
    runs = longest_runs(bits, m)
    counts = np.bincount(np.clip(runs - low, 0, k), minlength=k + 1)
    blocks = runs.size
    expected = blocks * np.asarray(probs)
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    p = igamc(k / 2.0, chi2 / 2.0)
    stats = {"n": n, "m": m, "blocks": blocks, "counts": counts.tolist(), "chi2": chi2}
    return TestResult.from_p_values("LROBT", stats, (p,), alpha)


def nist_dfft(bits, alpha=0.01, *, check_length=True):
    bits = _bits(bits)
    n = bits.size
    _need("DFFT", n, MIN_DFFT, check_length)
    signal = 2.0 * bits - 1.0
    modulus = np.abs(fft(signal)[: n // 2])
    threshold = math.sqrt(math.log(1.0 / 0.05) * n)
    n0 = 0.95 * n / 2.0
    n1 = int(np.count_nonzero(modulus < threshold))
    d = (n1 - n0) / math.sqrt(n * 0.95 * 0.05 / 4.0)
    p = erfc(abs(d) / math.sqrt(2.0))
    return TestResult.from_p_values("DFFT", {"n": n, "n0": n0, "n1": n1, "d": d}, (p,), alpha)


def pattern_counts(bits, m):
    """Counts of every overlapping m-bit pattern, wrapping around the end."""
    n = bits.size
    if m == 0:
        return np.array([n])
    ext = np.concatenate((bits, bits[: m - 1])).astype(np.int64)
    value = np.zeros(n, dtype=np.int64)
    for t in range(m):
        value = (value << 1) | ext[t: t + n]
    return np.bincount(value, minlength=1 << m)


def _psi_sq(bits, m):
    if m <= 0:
        return 0.0
    counts = pattern_counts(bits, m)
    n = bits.size
    return float(np.sum(counts.astype(np.float64) ** 2)) * (1 << m) / n - n


def nist_serial(bits, m=16, alpha=0.01, *, check_length=True):
    bits = _bits(bits)
    n = bits.size
    _need("ST", n, MIN_SERIAL, check_length)
    if m < 2:
        raise ValueError(f"ST pattern length must be >= 2, got {m}")
    psi = [_psi_sq(bits, m - d) for d in range(3)]
    del1 = psi[0] - psi[1]
    del2 = psi[0] - 2.0 * psi[1] + psi[2]
    # rounding can leave an exactly-zero statistic a few ulps below zero
    p1 = igamc(2.0 ** (m - 2), max(del1, 0.0) / 2.0)
    p2 = igamc(2.0 ** (m - 3), max(del2, 0.0) / 2.0)
    stats = {"n": n, "m": m, "psi2_m": psi[0], "del1": del1, "del2": del2}
    return TestResult.from_p_values("ST", stats, (p1, p2), alpha)


def cusum_p_value(n, z):
    sqrt_n = math.sqrt(n)
    total = 1.0
    for k in range(math.floor((-n / z + 1) / 4), math.floor((n / z - 1) / 4) + 1):
        total -= normal_cdf((4 * k + 1) * z / sqrt_n) - normal_cdf((4 * k - 1) * z / sqrt_n)
    for k in range(math.floor((-n / z - 3) / 4), math.floor((n / z - 1) / 4) + 1):
        total += normal_cdf((4 * k + 3) * z / sqrt_n) - normal_cdf((4 * k + 1) * z / sqrt_n)
    return total


def nist_cusum(bits, mode="forward", alpha=0.01, *, check_length=True):
    if mode not in ("forward", "reverse"):
        raise ValueError(f"cusum mode must be 'forward' or 'reverse', got {mode!r}")
    bits = _bits(bits)
    n = bits.size
    name = f"CST-{mode}"
    _need(name, n, MIN_CUSUM, check_length)
    steps = 2 * bits.astype(np.int64) - 1
    if mode == "reverse":
        steps = steps[::-1]
    z = int(np.max(np.abs(np.cumsum(steps))))
    p = cusum_p_value(n, z)
    return TestResult.from_p_values(name, {"n": n, "z": z}, (p,), alpha)


def _phi(bits, m):
    counts = pattern_counts(bits, m)
    freq = counts[counts > 0] / bits.size
    return float(np.sum(freq * np.log(freq)))


def nist_approx_entropy(bits, m=10, alpha=0.01, *, check_length=True):
    bits = _bits(bits)
    n = bits.size
    _need("AET", n, MIN_APEN, check_length)
    if m < 1:
        raise ValueError(f"AET block length must be >= 1, got {m}")
    apen = _phi(bits, m) - _phi(bits, m + 1)
    chi2 = 2.0 * n * (math.log(2.0) - apen)
    p = igamc(2.0 ** (m - 1), max(chi2, 0.0) / 2.0)
    return TestResult.from_p_values("AET", {"n": n, "m": m, "apen": apen, "chi2": chi2}, (p,), alpha)
