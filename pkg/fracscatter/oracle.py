#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""Barrier scattering by direct plane-wave boundary matching.

Independent of the closed-form transfer matrix: the four amplitudes for a
wave incident from each side are found by solving the interface equations
(continuity of psi and of the epsilon-weighted derivative at x = 0 and
x = b) as a dense linear system. A forward travelling wave is e^{-ikx}.
"""

import logging

import numpy as np

from fracscatter import levy
from fracscatter.transfer import ScatteringSet

LOGGER = logging.getLogger(__name__)


def _inside_scales(k_bar, width):
    # Rescale A e^{-ik̄x} and B e^{ik̄x} so each is of unit size at the edge where it peaks.
    e_minus = np.exp(-1j * k_bar * width)
    e_plus = np.exp(1j * k_bar * width)
    if k_bar.imag > 0:
        return 1 / e_minus, 1.0, e_minus, e_plus
    return 1.0, 1 / e_plus, e_minus, e_plus


def _solve(matrix, rhs):
    return np.linalg.solve(np.array(matrix, dtype=np.complex128), np.array(rhs, dtype=np.complex128))


def boundary_matching_scattering(ctx, height, width, energy):
    energy = float(levy.require_physical_energy(energy))
    k = complex(levy.wavenumber(ctx, energy))
    k_bar = complex(levy.inside_wavenumber(ctx, energy, height))
    eps = complex(levy.epsilon_ratio(ctx, energy, height))
    p_a, p_b, e_minus, e_plus = _inside_scales(k_bar, width)
    out_left = np.exp(-1j * k * width)
    in_right = np.exp(1j * k * width)

    # left incidence, unknowns (r, a, b, t)
    r, _, _, t = _solve(
        [
            [1, -p_a, -p_b, 0],
            [-eps, -p_a, p_b, 0],
            [0, p_a * e_minus, p_b * e_plus, -out_left],
            [0, p_a * e_minus, -p_b * e_plus, -eps * out_left],
        ],
        [-1, -eps, 0, 0],
    )

    # right incidence, unknowns (t_r, a, b, r_r)
    t_r, _, _, r_r = _solve(
        [
            [1, -p_a, -p_b, 0],
            [eps, p_a, -p_b, 0],
            [0, p_a * e_minus, p_b * e_plus, -out_left],
            [0, -p_a * e_minus, p_b * e_plus, eps * out_left],
        ],
        [0, 0, in_right, eps * in_right],
    )
    LOGGER.debug(f'boundary matching at E={energy}: t={t} t_r={t_r}')
    return ScatteringSet(t_l=complex(t), t_r=complex(t_r), r_l=complex(r), r_r=complex(r_r))
