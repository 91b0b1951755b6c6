import cmath

import mpmath as mp
import numpy as np
import pytest

from oracles import G13_G07, LOG_BARNES
from pctoeplitz import PoleOfBarnes, barnes_g, log_barnes_g, loggamma
from pctoeplitz.special import log_barnes_pair


@pytest.mark.parametrize("z", [0.0, 1.0, 2.0])
def test_barnes_at_small_integers(z):
    assert abs(log_barnes_g(z)) < 1e-12


def test_barnes_g_values_against_frozen_oracle():
    for z, want in LOG_BARNES.items():
        got = log_barnes_g(z)
        assert abs(cmath.exp(got) - cmath.exp(want)) < 1e-12 * abs(cmath.exp(want))


def test_pair_product():
    assert abs(cmath.exp(log_barnes_pair(0.3)) - G13_G07) < 1e-13


def test_recursion_against_log_gamma():
    re = np.linspace(-1.5, 1.5, 10)
    im = np.linspace(-1.5, 1.5, 5)
    for x in re:
        for y in im:
            z = complex(x, y)
            lhs = cmath.exp(log_barnes_g(z))  # G(z+1)
            rhs = cmath.exp(loggamma(z) + log_barnes_g(z - 1))
            assert abs(lhs - rhs) <= 1e-9 * abs(lhs)


def test_real_arguments_give_real_logs():
    assert log_barnes_g(0.4).imag == 0.0 or abs(log_barnes_g(0.4).imag) < 1e-15


@pytest.mark.parametrize("z", [-1, -2, -3.0])
def test_pole(z):
    with pytest.raises(PoleOfBarnes):
        log_barnes_g(z)


def test_barnes_g_zero_argument_is_pole():
    with pytest.raises(PoleOfBarnes):
        barnes_g(0)


def test_loggamma_matches_mpmath():
    for z in (0.3, 2.5 + 1j, -0.4 + 0.2j, 7.0):
        assert abs(cmath.exp(loggamma(z)) - complex(mp.gamma(z))) < 1e-13 * abs(complex(mp.gamma(z)))
