"""Special functions behind the P-value computations."""

import math

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 1_000_000


def erfc(x):
    return math.erfc(x)


def normal_cdf(z):
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def _log_prefactor(a, x):
    # log(x^a e^-x / Gamma(a))
    return a * math.log(x) - x - math.lgamma(a)


def _lower_series(a, x):
    """Regularised lower incomplete gamma P(a, x) by its power series."""
    ap = a
    term = total = 1.0 / a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    else:
        raise ArithmeticError(f"igamc series did not converge for a={a}, x={x}")
    return total * math.exp(_log_prefactor(a, x))


def _upper_fraction(a, x):
    """Q(a, x) by the Legendre continued fraction (modified Lentz)."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"igamc fraction did not converge for a={a}, x={x}")
    return math.exp(_log_prefactor(a, x)) * h


def igamc(a, x):
    """Regularised upper incomplete gamma function Q(a, x)."""
    if a <= 0 or x < 0:
        raise ValueError(f"igamc domain error: a={a!r}, x={x!r}")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _lower_series(a, x)
    return _upper_fraction(a, x)


def chi2_critical(df, alpha):
    """Upper-tail critical value c with P(chi2_df >= c) = alpha."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha {alpha!r} outside (0, 1)")
    lo, hi = 0.0, max(1.0, float(df))
    while igamc(df / 2.0, hi / 2.0) > alpha:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if igamc(df / 2.0, mid / 2.0) > alpha:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
