"""Logistic-map orbits and their quantisation onto a 2^k x 2^k grid.

All arithmetic is plain IEEE-754 binary64 with the association order
``r * (x * (1 - x))``.  Keystreams must be reproduced bit-exactly for
decryption, so nothing here may be reordered, fused or vectorised in a
way that changes rounding.
"""

from array import array

import numpy as np

from .errors import DegenerateOrbit, RangeError

R_MIN = 3.99996
R_MAX = 4.0


def check_param(r):
    """Validate a control parameter, returning it as a float."""
    r = float(r)
    if not R_MIN <= r <= R_MAX:
        raise RangeError(f"control parameter {r!r} outside [{R_MIN}, {R_MAX}]")
    return r


def check_state(x):
    x = float(x)
    if not 0.0 < x < 1.0:
        raise RangeError(f"orbit state {x!r} outside (0, 1)")
    return x


def logistic_step(x, r):
    """One application of the logistic map.

    >>> logistic_step(0.5, 3.99996)
    0.99999
    """
    x = check_state(x)
    r = check_param(r)
    nxt = r * (x * (1.0 - x))
    if not 0.0 < nxt < 1.0:
        raise DegenerateOrbit(nxt, step=1)
    return nxt


def orbit(x0, r, n, *, start=0):
    """Return the iterates x_1 .. x_n of the orbit started at ``x0``.

    ``x0`` itself is not included.  ``start`` only offsets the step number
    reported by :class:`DegenerateOrbit`, for callers that generate an
    orbit in chunks.
    """
    x = check_state(x0)
    r = check_param(r)
    out = array("d")
    append = out.append
    for _ in range(n):
        x = r * (x * (1.0 - x))
        append(x)
    values = np.frombuffer(out, dtype=np.float64)
    bad = (values <= 0.0) | (values >= 1.0)
    if bad.any():
        t = int(np.argmax(bad))
        raise DegenerateOrbit(float(values[t]), step=start + t + 1)
    return values


def quantize(x, k):
    """Map ``x`` in (0, 1] to a grid index in [0, 2^k - 1].

    Rounds ``x * (2^k - 1)`` half away from zero.  The fractional part is
    taken from an exact ``floor`` rather than adding 0.5, which would round
    twice for inputs just under a half.
    """
    scaled = float(x) * ((1 << k) - 1)
    whole = int(scaled)
    if scaled - whole >= 0.5:
        whole += 1
    return whole


def quantize_array(xs, k):
    """Vectorised :func:`quantize`; bit-identical to the scalar version."""
    scaled = np.asarray(xs, dtype=np.float64) * float((1 << k) - 1)
    whole = np.floor(scaled)
    return (whole + (scaled - whole >= 0.5)).astype(np.int64)


def planar_step(xs, ys, rx, ry, k):
    """Advance both axis orbits once and quantise the new point.

    Returns ``(x_next, y_next, (i, j))`` where ``i`` comes from the x-axis
    and indexes rows.
    """
    x_next = logistic_step(xs, rx)
    y_next = logistic_step(ys, ry)
    return x_next, y_next, (quantize(x_next, k), quantize(y_next, k))


def planar_indices(x0, y0, rx, ry, n, k, *, start=0):
    """Flat cell indices ``i * 2^k + j`` of the next ``n`` planar steps.

    Also returns the final ``(x, y)`` so a caller can continue the orbit.
    """
    xs = orbit(x0, rx, n, start=start)
    ys = orbit(y0, ry, n, start=start)
    idx = quantize_array(xs, k) * (1 << k) + quantize_array(ys, k)
    if n:
        return idx, float(xs[-1]), float(ys[-1])
    return idx, float(x0), float(y0)
