"""Chaotic dynamic-image bit generator, bit-padding image cipher and the
statistical tests used to evaluate them."""

from importlib import resources

from .errors import ChaopadError, DegenerateOrbit, SeedImageMismatch, SeedNotRandom
from .keystream import ChaosKey, KeystreamState

__version__ = "0.1.0"

PARAMETER_SETS = ("A", "B", "C", "D")


def data_path(name):
    """Filesystem path of a file shipped in ``chaopad/data``."""
    return str(resources.files(__package__).joinpath("data", name))


def bundled_image():
    from .imgio import read_pgm

    return read_pgm(data_path("retina_256.pgm"))


def bundled_key(name):
    """One of the reference parameter sets ``"A"`` .. ``"D"``."""
    from .imgio import read_key

    if name.upper() not in PARAMETER_SETS:
        raise ValueError(f"parameter set must be one of {PARAMETER_SETS}, got {name!r}")
    return read_key(data_path(f"set_{name.lower()}.key"))


__all__ = [
    "ChaopadError", "ChaosKey", "DegenerateOrbit", "KeystreamState", "PARAMETER_SETS",
    "SeedImageMismatch", "SeedNotRandom", "bundled_image", "bundled_key", "data_path",
]
