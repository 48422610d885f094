"""Iterative radix-2 FFT used by the spectral test."""

import numpy as np


def bit_reverse_permutation(n):
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def fft(x):
    """Forward DFT ``X_k = sum_t x_t exp(-2 pi i k t / n)`` for n = 2^p.

    Decimation in time; each butterfly stage is a single vectorised
    operation over all blocks of that stage.
    """
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    if n == 0 or n & (n - 1):
        raise ValueError(f"radix-2 FFT needs a power-of-two length, got {n}")
    out = x[bit_reverse_permutation(n)]
    size = 2
    while size <= n:
        half = size // 2
        twiddle = np.exp(-2j * np.pi * np.arange(half) / size)
        blocks = out.reshape(n // size, size)
        even = blocks[:, :half]
        odd = blocks[:, half:] * twiddle
        out = np.concatenate((even + odd, even - odd), axis=1).ravel()
        size *= 2
    return out
