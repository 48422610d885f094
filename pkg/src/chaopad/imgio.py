"""On-disk formats: PGM images, key files and bitstream files.

Key file (UTF-8, one ``name = value`` per line, ``#`` comments)::

    format = chaopad-key/1
    x0 = 0.20000000000000
    ...                           # y0 rx ry xp0 yp0 rpx rpy, 14 decimals
    m = 262144
    k = 8
    seed_image = retina_256.pgm   # relative to the key file
    seed_image_fnv1a64 = 0x...    # FNV-1a 64 over raw pixel bytes
    rounding = half-away-from-zero

Raw bitstream: bits packed MSB first, zero-padded to a whole byte, then one
trailer byte giving the number of pad bits (0-7).  ASCII bitstream: the
characters ``0``/``1`` with no separators.
"""

import os
import re

import numpy as np

from .errors import (
    BadPadTrailer,
    MalformedHeader,
    ParseError,
    TruncatedData,
    UnsupportedMaxval,
)
from .keystream import ChaosKey

KEY_FORMAT = "chaopad-key/1"
ROUNDING = "half-away-from-zero"
KEY_DECIMALS = 14
REAL_FIELDS = ("x0", "y0", "rx", "ry", "xp0", "yp0", "rpx", "rpy")
_DECIMAL = re.compile(r"^[0-9]+(\.[0-9]+)?$")
_HEADER_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


# -- PGM ---------------------------------------------------------------------

def _header_fields(data):
    """Magic, width, height, maxval and the offset just past maxval."""
    fields = []
    pos = 0
    for _ in range(4):
        m = _HEADER_TOKEN.match(data, pos)
        if not m:
            raise MalformedHeader("PGM header ends early")
        fields.append(m.group(1))
        pos = m.end()
    return fields, pos


def parse_pgm(data):
    data = bytes(data)
    (magic, *dims), pos = _header_fields(data)
    if magic not in (b"P5", b"P2"):
        raise MalformedHeader(f"not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(v) for v in dims)
    except ValueError:
        raise MalformedHeader(f"non-numeric PGM header field in {dims!r}") from None
    if width <= 0 or height <= 0:
        raise MalformedHeader(f"bad PGM dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedMaxval(f"only maxval 255 is supported, got {maxval}")
    count = width * height
    if magic == b"P5":
        if pos >= len(data) or not data[pos:pos + 1].isspace():
            raise MalformedHeader("missing whitespace after PGM maxval")
        raster = data[pos + 1: pos + 1 + count]
        if len(raster) < count:
            raise TruncatedData(f"expected {count} pixel bytes, found {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) < count:
            raise TruncatedData(f"expected {count} pixel values, found {len(body)}")
        try:
            values = np.array([int(v) for v in body[:count]], dtype=np.int64)
        except ValueError:
            raise MalformedHeader("non-numeric value in P2 raster") from None
        if values.min() < 0 or values.max() > maxval:
            raise MalformedHeader("P2 pixel value outside [0, maxval]")
        pixels = values.astype(np.uint8)
    return pixels.reshape(height, width).copy()


def read_pgm(path):
    with open(path, "rb") as fh:
        return parse_pgm(fh.read())


def pgm_bytes(img):
    img = np.asarray(img)
    if img.ndim != 2:
        raise ValueError(f"expected a 2-D grayscale image, got shape {img.shape}")
    if img.dtype != np.uint8:
        if img.min() < 0 or img.max() > 255:
            raise ValueError("pixel values must lie in [0, 255]")
        img = img.astype(np.uint8)
    h, w = img.shape
    return b"P5\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(img).tobytes()


def write_pgm(img, path):
    with open(path, "wb") as fh:
        fh.write(pgm_bytes(img))


# -- key files ---------------------------------------------------------------

def format_decimal(value):
    text = f"{value:.{KEY_DECIMALS}f}"
    if float(text) != value:
        raise ValueError(f"{value!r} is not exactly representable with {KEY_DECIMALS} decimals")
    return text


def key_text(key):
    lines = ["# chaopad key", f"format = {KEY_FORMAT}"]
    lines += [f"{name} = {format_decimal(getattr(key, name))}" for name in REAL_FIELDS]
    lines += [
        f"m = {key.m}",
        f"k = {key.k}",
        f"seed_image = {key.seed_image_path or ''}",
        f"seed_image_fnv1a64 = 0x{key.seed_image_hash:016x}",
        f"rounding = {ROUNDING}",
    ]
    return "\n".join(lines) + "\n"


def parse_key(text, base_dir=None):
    """Parse key-file text; a relative ``seed_image`` is resolved against
    ``base_dir`` when given."""
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'name = value'")
        name = name.strip()
        if name in fields:
            raise ParseError(f"line {lineno}: duplicate field {name!r}")
        fields[name] = value.strip()

    required = ("format",) + REAL_FIELDS + ("m", "k", "seed_image_fnv1a64", "rounding")
    missing = [f for f in required if f not in fields]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}")
    if fields["format"] != KEY_FORMAT:
        raise ParseError(f"unsupported key format {fields['format']!r}")
    if fields["rounding"] != ROUNDING:
        raise ParseError(f"unsupported rounding mode {fields['rounding']!r}")

    reals = {}
    for name in REAL_FIELDS:
        text_value = fields[name]
        if not _DECIMAL.match(text_value):
            raise ParseError(f"{name}: {text_value!r} is not a plain decimal")
        reals[name] = float(text_value)  # correctly rounded, single conversion
    try:
        m = int(fields["m"])
        k = int(fields["k"])
        digest = int(fields["seed_image_fnv1a64"], 16)
    except ValueError as exc:
        raise ParseError(str(exc)) from None

    path = fields.get("seed_image") or None
    if path and base_dir is not None and not os.path.isabs(path):
        path = os.path.join(base_dir, path)
    # RangeError propagates from ChaosKey validation
    return ChaosKey(**reals, m=m, k=k, seed_image_hash=digest, seed_image_path=path)


def read_key(path):
    with open(path, encoding="utf-8") as fh:
        return parse_key(fh.read(), base_dir=os.path.dirname(os.path.abspath(path)))


def write_key(key, path, *, relative_to_file=True):
    """Write ``key``; with ``relative_to_file`` the seed image path is stored
    relative to the key file's directory."""
    if relative_to_file and key.seed_image_path:
        base = os.path.dirname(os.path.abspath(path))
        key = key.replace(seed_image_path=os.path.relpath(os.path.abspath(key.seed_image_path), base))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(key_text(key))


# -- bitstreams --------------------------------------------------------------

def bits_bytes(bits, mode="raw"):
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    if mode == "raw":
        pad = (-bits.size) % 8
        return np.packbits(bits).tobytes() + bytes([pad])
    if mode == "ascii":
        return (bits + ord("0")).astype(np.uint8).tobytes()
    raise ValueError(f"bitstream mode must be 'raw' or 'ascii', got {mode!r}")


def parse_bits(data, mode="raw"):
    data = bytes(data)
    if mode == "raw":
        if not data:
            raise BadPadTrailer("raw bitstream has no trailer byte")
        pad = data[-1]
        body = np.frombuffer(data[:-1], dtype=np.uint8)
        if pad > 7 or (pad and body.size == 0):
            raise BadPadTrailer(f"invalid pad trailer {pad}")
        bits = np.unpackbits(body)
        return bits[: bits.size - pad]
    if mode == "ascii":
        chars = np.frombuffer(data.strip(), dtype=np.uint8)
        if np.any((chars != ord("0")) & (chars != ord("1"))):
            raise ParseError("ASCII bitstream may contain only '0' and '1'")
        return chars - ord("0")
    raise ValueError(f"bitstream mode must be 'raw' or 'ascii', got {mode!r}")


def write_bits(bits, path, mode="raw"):
    with open(path, "wb") as fh:
        fh.write(bits_bytes(bits, mode))


def read_bits(path, mode="raw"):
    with open(path, "rb") as fh:
        return parse_bits(fh.read(), mode)
