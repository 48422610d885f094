"""64-bit FNV-1a, used to bind key files to their seed image."""

import numpy as np

FNV64_OFFSET = 0xCBF29CE484222325
FNV64_PRIME = 0x100000001B3
_MASK = (1 << 64) - 1


def fnv1a64(data):
    h = FNV64_OFFSET
    for byte in bytes(data):
        h = ((h ^ byte) * FNV64_PRIME) & _MASK
    return h


def image_hash(img):
    """FNV-1a over the raw row-major pixel bytes (dimensions not included)."""
    return fnv1a64(np.ascontiguousarray(img, dtype=np.uint8).tobytes())
