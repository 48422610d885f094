"""Cipher-image security metrics: histogram, adjacent-pixel correlation,
NPCR/UACI and the one-pixel differential probe."""

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import cipher
from .errors import DimensionMismatch, ImageTooSmall, ZeroVariance

DIRECTIONS = ("horizontal", "vertical", "diagonal")
DEFAULT_PAIRS = 2000
DEFAULT_SAMPLER_SEED = 20130101


def histogram(img):
    return np.bincount(np.asarray(img, dtype=np.uint8).ravel(), minlength=256)


def histogram_chi2(img):
    """Chi-square of the 256-bin histogram against a flat one (255 df)."""
    counts = histogram(img).astype(np.float64)
    expected = counts.sum() / 256.0
    return float(np.sum((counts - expected) ** 2) / expected)


class PCG32:
    """PCG-XSH-RR 32-bit generator (64-bit LCG state, rotated xorshift output).

    Seeded the reference way: state 0, increment ``2*stream + 1``, one step,
    add ``seed``, one step.  Used only to pick pixel pairs reproducibly; it
    has nothing to do with the chaotic keystream.
    """

    MULT = 6364136223846793005
    MASK64 = (1 << 64) - 1

    def __init__(self, seed, stream=54):
        self.inc = ((stream << 1) | 1) & self.MASK64
        self.state = 0
        self.next()
        self.state = (self.state + seed) & self.MASK64
        self.next()

    def next(self):
        old = self.state
        self.state = (old * self.MULT + self.inc) & self.MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & 0xFFFFFFFF
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & 0xFFFFFFFF

    def below(self, bound):
        """Unbiased integer in [0, bound) by rejection."""
        threshold = (1 << 32) % bound
        while True:
            r = self.next()
            if r >= threshold:
                return r % bound


@dataclass(frozen=True)
class PixelPairSample:
    direction: str
    pairs: np.ndarray  # shape (N, 2): first pixel, its neighbour
    sampler_seed: int


def _anchor_grid(shape, direction):
    h, w = shape
    if direction == "horizontal":
        return h, w - 1, (0, 1)
    if direction == "vertical":
        return h - 1, w, (1, 0)
    if direction == "diagonal":
        return h - 1, w - 1, (1, 1)
    raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")


def sample_adjacent_pairs(img, direction, count=DEFAULT_PAIRS, sampler_seed=DEFAULT_SAMPLER_SEED):
    """Draw ``count`` distinct adjacent-pixel anchors uniformly at random.

    Anchors are chosen without replacement by a partial Fisher-Yates shuffle
    driven by :class:`PCG32`.
    """
    img = np.asarray(img)
    rows, cols, (dr, dc) = _anchor_grid(img.shape, direction)
    total = max(rows, 0) * max(cols, 0)
    if count > total:
        raise ImageTooSmall(f"{direction}: {count} pairs requested but only {total} anchors exist")
    rng = PCG32(sampler_seed)
    swapped = {}
    anchors = np.empty(count, dtype=np.int64)
    for t in range(count):
        j = t + rng.below(total - t)
        anchors[t] = swapped.get(j, j)
        swapped[j] = swapped.get(t, t)
    r, c = np.divmod(anchors, cols)
    pairs = np.stack((img[r, c], img[r + dr, c + dc]), axis=1).astype(np.int64)
    return PixelPairSample(direction, pairs, sampler_seed)


def correlation(sample):
    """Adjacent-pixel correlation with population (1/N) moments."""
    pairs = sample.pairs if isinstance(sample, PixelPairSample) else np.asarray(sample)
    x = pairs[:, 0].astype(np.float64)
    y = pairs[:, 1].astype(np.float64)
    if x.size < 2:
        raise ValueError("correlation needs at least two pairs")
    dx = x - x.mean()
    dy = y - y.mean()
    var_x = np.mean(dx * dx)
    var_y = np.mean(dy * dy)
    if var_x == 0 or var_y == 0:
        raise ZeroVariance("one side of the pixel pairs is constant")
    cov = np.mean(dx * dy)
    return float(cov / (math.sqrt(var_x) * math.sqrt(var_y)))


def _same_shape(c1, c2):
    c1 = np.asarray(c1)
    c2 = np.asarray(c2)
    if c1.shape != c2.shape:
        raise DimensionMismatch(f"image shapes differ: {c1.shape} vs {c2.shape}")
    return c1.astype(np.int64), c2.astype(np.int64)


def npcr(c1, c2):
    """Percentage of pixel positions where the two images differ."""
    c1, c2 = _same_shape(c1, c2)
    return 100.0 * np.count_nonzero(c1 != c2) / c1.size


def uaci(c1, c2):
    c1, c2 = _same_shape(c1, c2)
    return 100.0 * float(np.sum(np.abs(c1 - c2))) / (255.0 * c1.size)


def differential_probe(img, key, seed_img, pixel, delta=1):
    """Encrypt ``img`` and a copy with ``pixel`` shifted by ``delta`` (mod 256).

    Returns ``(npcr, uaci)`` between the two ciphertexts.
    """
    img = np.asarray(img, dtype=np.uint8)
    r, c = pixel
    if not (0 <= r < img.shape[0] and 0 <= c < img.shape[1]):
        raise IndexError(f"pixel {pixel} outside {img.shape[1]}x{img.shape[0]} image")
    modified = img.copy()
    modified[r, c] = (int(img[r, c]) + delta) % 256
    # the pad does not depend on the plaintext, so one keystream serves both
    stream = cipher.keystream_for(img, key, seed_img)
    c1 = cipher.encrypt_with_keystream(img, stream)
    c2 = cipher.encrypt_with_keystream(modified, stream)
    return npcr(c1, c2), uaci(c1, c2)


@dataclass(frozen=True)
class Record:
    metric: str
    params: str
    value: float
    threshold: str = ""
    verdict: str = ""


def format_records(records):
    lines = [f"{'metric':<14}{'params':<26}{'value':>14}  {'threshold':<12}verdict"]
    for rec in records:
        lines.append(f"{rec.metric:<14}{rec.params:<26}{rec.value:>14.6f}  {rec.threshold:<12}{rec.verdict}")
    return "\n".join(lines)


def records_json(records):
    return json.dumps([asdict(r) for r in records], indent=2)
