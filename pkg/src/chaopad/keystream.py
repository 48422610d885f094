"""The dynamic-image bit generator.

Each emitted bit is the current colour of the cell hit by a second planar
logistic orbit; the cell is complemented right after it is read.  Reading
therefore mutates the state, and bits must be produced strictly in order.
"""

import dataclasses
from dataclasses import dataclass

import numpy as np

from . import chaos
from .errors import RangeError, SeedImageMismatch, SeedNotRandom
from .fnv import image_hash
from .seed import SeedParams, grid_exponent, prepare_seed

CHUNK = 1 << 18


@dataclass(frozen=True)
class ChaosKey:
    """The nine key parameters plus the binding to a seed image.

    ``x0, y0, rx, ry`` drive seed preparation, ``xp0, yp0, rpx, rpy`` drive
    bit generation.
    """

    x0: float
    y0: float
    rx: float
    ry: float
    xp0: float
    yp0: float
    rpx: float
    rpy: float
    m: int
    seed_image_hash: int
    seed_image_path: str | None = None
    k: int = 8

    def __post_init__(self):
        for name in ("x0", "y0", "xp0", "yp0"):
            chaos.check_state(getattr(self, name))
        for name in ("rx", "ry", "rpx", "rpy"):
            chaos.check_param(getattr(self, name))
        if int(self.m) != self.m or self.m < 1:
            raise RangeError(f"flip count M must be a positive integer, got {self.m!r}")
        if self.k < 2:
            raise RangeError(f"grid exponent k must be >= 2, got {self.k}")

    @property
    def seed_params(self):
        return SeedParams(self.x0, self.y0, self.rx, self.ry, self.m)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


def emit(matrix, idx):
    """Read-then-flip the flat cells ``idx`` of ``matrix`` in order.

    Returns the emitted bits and updates ``matrix`` in place.  The t-th read
    of a cell sees its value XOR (number of earlier reads of that cell mod 2),
    which lets a whole chunk be processed at once.
    """
    n = idx.size
    order = np.argsort(idx, kind="stable")
    ranked = idx[order]
    first = np.empty(n, dtype=bool)
    first[:1] = True
    np.not_equal(ranked[1:], ranked[:-1], out=first[1:])
    pos = np.arange(n)
    group_start = np.maximum.accumulate(np.where(first, pos, 0))
    prior = np.empty(n, dtype=np.int64)
    prior[order] = pos - group_start
    bits = matrix[idx] ^ (prior & 1).astype(np.uint8)
    matrix ^= (np.bincount(idx, minlength=matrix.size) & 1).astype(np.uint8)
    return bits


class KeystreamState:
    """Working copy of C' plus the generation orbit; single owner only."""

    def __init__(self, matrix, xp, yp, rpx, rpy, emitted=0, report=None):
        matrix = np.array(matrix, dtype=np.uint8)
        self.k = grid_exponent(matrix)
        self.matrix = matrix.ravel()
        self.xp = chaos.check_state(xp)
        self.yp = chaos.check_state(yp)
        self.rpx = chaos.check_param(rpx)
        self.rpy = chaos.check_param(rpy)
        self.emitted = emitted
        self.report = report

    def copy(self):
        side = 1 << self.k
        return KeystreamState(self.matrix.reshape(side, side), self.xp, self.yp,
                              self.rpx, self.rpy, self.emitted, self.report)

    @property
    def white_count(self):
        return int(np.count_nonzero(self.matrix))

    def generate(self, n):
        """Emit the next ``n`` bits as a ``uint8`` array.

        On :class:`~chaopad.errors.DegenerateOrbit` the state is left exactly
        as it was before the call.
        """
        if n < 0:
            raise ValueError(f"bit count must be non-negative, got {n}")
        matrix = self.matrix.copy()
        xp, yp, done = self.xp, self.yp, 0
        out = np.empty(n, dtype=np.uint8)
        while done < n:
            step = min(CHUNK, n - done)
            idx, xp, yp = chaos.planar_indices(xp, yp, self.rpx, self.rpy, step, self.k,
                                               start=self.emitted + done)
            out[done: done + step] = emit(matrix, idx)
            done += step
        self.matrix, self.xp, self.yp = matrix, xp, yp
        self.emitted += n
        return out

    def next_bit(self):
        return int(self.generate(1)[0])


def init(key, img, *, strict=False, alpha=0.05):
    """Prepare C' from ``img`` and return a fresh generator state.

    The image must hash to ``key.seed_image_hash``.  With ``strict`` a
    failing seed validation raises :class:`SeedNotRandom`.
    """
    img = np.asarray(img, dtype=np.uint8)
    actual = image_hash(img)
    if actual != key.seed_image_hash:
        raise SeedImageMismatch(
            f"seed image hash {actual:016x} does not match key ({key.seed_image_hash:016x})"
        )
    if grid_exponent(img) != key.k:
        raise SeedImageMismatch(f"seed image is not {1 << key.k}x{1 << key.k} as the key requires")
    seed, report = prepare_seed(img, key.seed_params, alpha)
    if strict and not report.passed:
        raise SeedNotRandom(report)
    return KeystreamState(seed, key.xp0, key.yp0, key.rpx, key.rpy, report=report)


def generate(state, n):
    return state.generate(n)


def next_bit(state):
    return state.next_bit()
