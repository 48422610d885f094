"""Bit-padding image cipher: keystream XOR followed by two quadrant swaps.

Images are 2-D ``uint8`` arrays ``[row, column]``; bit sequences are 1-D
``uint8`` arrays of zeros and ones, pixels expanded MSB first in row-major
order.
"""

import numpy as np

from . import keystream
from .errors import BadDimensions, LengthMismatch


def image_to_bits(img):
    return np.unpackbits(np.ascontiguousarray(img, dtype=np.uint8).ravel())


def bits_to_image(bits, width, height):
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    if bits.size != 8 * width * height:
        raise LengthMismatch(f"{bits.size} bits cannot fill a {width}x{height} image")
    return np.packbits(bits).reshape(height, width)


def xor_bits(a, b):
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape:
        raise LengthMismatch(f"cannot XOR sequences of length {a.size} and {b.size}")
    return a ^ b


def quadrant_row_swap(img):
    """Exchange odd local rows of each quadrant with even local rows of its
    diagonal partner (top-left <-> bottom-right, top-right <-> bottom-left).

    Odd/even are 1-based: local row 2t of the top quadrants trades places
    with local row 2t+1 of the bottom quadrants.  The map is an involution.
    """
    img = np.asarray(img)
    h, w = img.shape
    if h % 4 or w % 2:
        raise BadDimensions(f"row swap needs height % 4 == 0 and even width, got {w}x{h}")
    h2, w2 = h // 2, w // 2
    top = np.arange(0, h2, 2)
    bottom = h2 + np.arange(1, h2, 2)
    out = img.copy()
    out[top, :w2] = img[bottom, w2:]
    out[bottom, w2:] = img[top, :w2]
    out[top, w2:] = img[bottom, :w2]
    out[bottom, :w2] = img[top, w2:]
    return out


def quadrant_col_swap(img):
    img = np.asarray(img)
    h, w = img.shape
    if w % 4 or h % 2:
        raise BadDimensions(f"column swap needs width % 4 == 0 and even height, got {w}x{h}")
    return quadrant_row_swap(img.T).T.copy()


def _check_cipher_shape(img):
    h, w = np.shape(img)
    if h % 4 or w % 4:
        raise BadDimensions(f"image dimensions must be multiples of 4, got {w}x{h}")


def encrypt_with_keystream(img, stream):
    img = np.asarray(img, dtype=np.uint8)
    _check_cipher_shape(img)
    h, w = img.shape
    padded = bits_to_image(xor_bits(image_to_bits(img), stream), w, h)
    return quadrant_col_swap(quadrant_row_swap(padded))


def decrypt_with_keystream(img, stream):
    img = np.asarray(img, dtype=np.uint8)
    _check_cipher_shape(img)
    h, w = img.shape
    unswapped = quadrant_row_swap(quadrant_col_swap(img))
    return bits_to_image(xor_bits(image_to_bits(unswapped), stream), w, h)


def keystream_for(img, key, seed_img, *, strict=False):
    """The 8*W*H pad bits for an image of ``img``'s size."""
    h, w = np.shape(img)
    return keystream.init(key, seed_img, strict=strict).generate(8 * w * h)


def encrypt(img, key, seed_img, *, strict=False):
    _check_cipher_shape(img)
    return encrypt_with_keystream(img, keystream_for(img, key, seed_img, strict=strict))


def decrypt(img, key, seed_img, *, strict=False):
    _check_cipher_shape(img)
    return decrypt_with_keystream(img, keystream_for(img, key, seed_img, strict=strict))
