"""log-Gamma and the Barnes G-function.

Barnes G is evaluated from its Weierstrass product

    G(1+z) = (2 pi)^{z/2} exp(-(z+1)z/2 - gamma_E z^2/2)
             * prod_{k>=1} (1+z/k)^k exp(-z + z^2/(2k))

summed in log space. The product is truncated at K and the tail
sum_{k>K} [k log(1+z/k) - z + z^2/(2k)] is expanded in powers of z/k, each
power sum evaluated by Euler-Maclaurin. K doubles until two successive
values agree.
"""
import cmath
import math

import numpy as np
import scipy.special

from .errors import NumericalFailure, PoleOfBarnes

EULER_GAMMA = 0.57721566490153286060651209
_LOG_2PI = math.log(2 * math.pi)
# B_2, B_4, ..., B_14
_BERNOULLI_EVEN = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)

CUTOFF_TOL = 1e-11


def loggamma(z):
    """Principal branch of log Gamma(z), continuous off the non-positive reals."""
    return complex(scipy.special.loggamma(complex(z)))


def _power_tail(s, a):
    """sum_{k >= a} k^{-s} for integer a >= 16 and s >= 2 (Euler-Maclaurin)."""
    total = a ** (1 - s) / (s - 1) + 0.5 * a ** (-s)
    rising = float(s)
    fact = 2.0
    for j, b in enumerate(_BERNOULLI_EVEN, start=1):
        if j > 1:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
            fact *= (2 * j - 1) * (2 * j)
        total += b / fact * rising * a ** (-s - 2 * j + 1)
    return total


def _series_coeffs(z, ratio):
    """Coefficients c_m = (-1)^{m+1} z^m / m, m = 3.., for |z|/k <= ratio."""
    out = []
    zm = z**3
    m = 3
    while True:
        c = (-1) ** (m + 1) * zm / m
        out.append((m, c))
        if abs(c) * ratio ** (m - 1) < 1e-20 * max(1.0, abs(z)) or m > 80:
            return out
        zm *= z
        m += 1


def _log_barnes_truncated(z, K):
    az = abs(z)
    k = np.arange(1, K + 1, dtype=float)
    direct = k <= 4 * az
    total = 0j
    if np.any(direct):
        kd = k[direct]
        total += complex(np.sum(kd * np.log1p(z / kd) - z + z * z / (2 * kd)))
    ks = k[~direct]
    if ks.size:
        coeffs = _series_coeffs(z, az / ks[0])
        for m, c in coeffs:
            total += c * complex(np.sum(ks ** (1 - m)))
    # tail k > K
    coeffs = _series_coeffs(z, az / (K + 1))
    for m, c in coeffs:
        total += c * _power_tail(m - 1, K + 1)
    return total


def log_barnes_g(z):
    """log G(1 + z) along the product's own branch (exp of it is exact G(1+z)).

    Real arguments above -1 give the real logarithm. Raises PoleOfBarnes when
    1 + z is a non-positive integer (a zero of G).
    """
    z = complex(z)
    if z.imag == 0 and z.real <= -1 and z.real == math.floor(z.real):
        raise PoleOfBarnes(f"G(1+z) vanishes at z = {z.real:g}", z=z.real)
    head = 0.5 * z * _LOG_2PI - 0.5 * (z + 1) * z - 0.5 * EULER_GAMMA * z * z
    K = max(32, int(8 * abs(z)) + 1)
    prev = _log_barnes_truncated(z, K)
    for _ in range(12):
        K *= 2
        cur = _log_barnes_truncated(z, K)
        if abs(cur - prev) <= CUTOFF_TOL * max(1.0, abs(cur)):
            return head + cur
        prev = cur
    raise NumericalFailure("Barnes product cutoff did not settle", z=repr(z))


def barnes_g(z):
    """G(z)."""
    return cmath.exp(log_barnes_g(complex(z) - 1))


def log_barnes_pair(beta):
    """log[G(1 + beta) G(1 - beta)]."""
    return log_barnes_g(beta) + log_barnes_g(-complex(beta))
