import math

import numpy as np
import pytest
import scipy.linalg

from spinentropy.special_functions import JacobiParams, jacobi_sum


def expm_d_matrix(twice_j, beta):
    """Independent oracle: d^j(beta) = exp(-i beta J_y), basis ordered m = j .. -j."""
    j = twice_j / 2
    ms = [j - k for k in range(twice_j + 1)]
    jplus = np.zeros((twice_j + 1, twice_j + 1))
    for k, m in enumerate(ms):
        if k > 0:
            jplus[k - 1, k] = math.sqrt(j * (j + 1) - m * (m + 1))
    jy = (jplus - jplus.T) / 2j
    return scipy.linalg.expm(-1j * beta * jy).real


def xlogx_sum(values):
    return sum(x * math.log(x) for x in values if x > 0)


def eq17_lhs(beta):
    """The j=3/2, m=3/2 inequality written out term by term with its four Jacobi polynomials."""
    z = math.cos(beta)
    s, c = math.sin(beta / 2), math.cos(beta / 2)
    P = lambda n, a, b: jacobi_sum(JacobiParams(n, a, b), z) ** 2  # noqa: E731
    t1 = c**6 * P(0, 0, 3)
    t2 = c**4 / (3 * s**2) * P(1, -1, 2)
    t3 = P(2, -2, 1) * c**2 / (3 * s**4)
    t4 = P(3, -3, 0) / s**6
    f = lambda x: x * math.log(x) if x > 0 else 0.0  # noqa: E731
    return -f(t4 + t3) - f(t1 + t2) - f(t1 + t3) - f(t4 + t2) + f(t1) + f(t2) + f(t3) + f(t4)


@pytest.fixture
def beta_grid():
    return np.linspace(0.0, math.pi, 64)


@pytest.fixture
def interior_grid():
    return np.linspace(0.01, math.pi - 0.01, 64)
