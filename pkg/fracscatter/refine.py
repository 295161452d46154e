#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""Local refinement of grid candidates."""

import dataclasses
import logging

import numpy as np
import scipy.optimize

LOGGER = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAXITER = 200


class NotBracketed(Exception):
    pass


@dataclasses.dataclass(frozen=True)
class Refined:
    x: float
    value: float
    iterations: int


def golden_minimum(func, lower, middle, upper, tol=DEFAULT_TOLERANCE, maxiter=DEFAULT_MAXITER):
    """Golden-section minimum of func inside the bracket (lower, middle, upper).

    The bracket must satisfy func(middle) < func(lower), func(upper); the
    search stops once the bracket width falls below tol relative to the
    abscissa, or after maxiter iterations.
    """
    f_lower, f_middle, f_upper = func(lower), func(middle), func(upper)
    if not (f_middle < f_lower and f_middle < f_upper):
        raise NotBracketed(f'({lower}, {middle}, {upper}) does not bracket a minimum')
    result = scipy.optimize.minimize_scalar(
        func,
        bracket=(lower, middle, upper),
        method='golden',
        options={'xtol': tol, 'maxiter': maxiter},
    )
    x = float(result.x)
    value = float(result.fun)
    if value > f_middle:
        x, value = middle, float(f_middle)
    LOGGER.debug(f'golden refinement in [{lower}, {upper}] -> {x!r} after {result.nit} iterations')
    return Refined(x=x, value=value, iterations=int(result.nit))


def polish_root(func, x0, tol=DEFAULT_TOLERANCE):
    """Real 2-D root of a complex function of two real variables.

    Returns the root as a numpy array, or None when the solver does not
    converge.
    """

    def split(point):
        value = complex(func(*point))
        return [value.real, value.imag]

    try:
        result = scipy.optimize.root(split, np.asarray(x0, dtype=float), method='hybr', options={'xtol': tol})
    except (ValueError, ArithmeticError):
        LOGGER.debug(f'root polish from {x0} raised', exc_info=True)
        return None
    if not result.success:
        LOGGER.debug(f'root polish from {x0} did not converge: {result.message}')
        return None
    return result.x
