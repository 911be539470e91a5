"""Scalar special functions used by the error-probability engines.

Everything here is a pure function of real scalars (a few accept ndarrays
and broadcast). Incomplete gamma functions follow the standard integrand
t^(m-1) e^(-t); all values of the regularized pair sum to 1.
"""
import math

import numpy as np
from scipy import special

__all__ = [
    "q_func",
    "upper_gamma_reg",
    "lower_gamma_reg",
    "double_factorial",
    "f_integral",
]

SQRT2 = math.sqrt(2.0)
SQRT_2PI = math.sqrt(2.0 * math.pi)


def q_func(x):
    """Gaussian tail probability Q(x) = P(N(0,1) > x).

    Computed through erfc so both tails keep full relative accuracy.
    Accepts scalars or arrays.
    """
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / SQRT2)


def upper_gamma_reg(m, x):
    """Regularized upper incomplete gamma Gamma(m, x) / Gamma(m).

    Decreasing in x, equals 1 at x = 0. Requires m > 0, x >= 0.
    """
    if np.any(np.asarray(m) <= 0):
        raise ValueError("shape parameter m must be positive")
    if np.any(np.asarray(x) < 0):
        raise ValueError("x must be nonnegative")
    return special.gammaincc(m, x)


def lower_gamma_reg(m, x):
    """Regularized lower incomplete gamma gamma(m, x) / Gamma(m)."""
    if np.any(np.asarray(m) <= 0):
        raise ValueError("shape parameter m must be positive")
    if np.any(np.asarray(x) < 0):
        raise ValueError("x must be nonnegative")
    return special.gammainc(m, x)


def double_factorial(n):
    """n!! for integer n >= -1, with (-1)!! = 0!! = 1."""
    n = int(n)
    if n < -1:
        raise ValueError("double factorial requires n >= -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _moment_primitive(u, l):
    """Integral of t^l exp(-t^2/2) from 0 to u (u may be +-inf)."""
    if u == 0.0:
        return 0.0
    s = 0.5 * (l + 1)
    if math.isinf(u):
        tail = special.gamma(s)
    else:
        tail = special.gammainc(s, 0.5 * u * u) * special.gamma(s)
    val = 2.0 ** (0.5 * (l - 1)) * tail
    # even l: odd primitive in u; odd l: even primitive (sgn(u)^(l+1) factor)
    if l % 2 == 0 and u < 0.0:
        val = -val
    return val


def f_integral(a, b, l):
    """Gaussian moment integral of u^l exp(-u^2/2) from b to a.

    Endpoints may be +-inf. Antisymmetric in (a, b). The closed form uses
    the lower incomplete gamma; for even l the constant sqrt(pi)(l-1)!!/sqrt(2)
    is Gamma((l+1)/2) * 2^((l-1)/2), which is folded into the primitive.
    """
    l = int(l)
    if l < 0:
        raise ValueError("moment order l must be >= 0")
    return _moment_primitive(float(a), l) - _moment_primitive(float(b), l)
