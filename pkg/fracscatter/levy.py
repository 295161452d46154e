#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""Levy context and dispersion-level quantities.

All fractional powers go through principal_power(), i.e. the principal
branch with Arg z in (-pi, pi]. The functions accept scalars or numpy
arrays of energies, so a whole grid row is evaluated in one call.
"""

import dataclasses
import functools
import logging
import math

import numpy as np

from fracscatter.error import BranchPointError
from fracscatter.error import DomainError

LOGGER = logging.getLogger(__name__)

ALPHA_MIN = 1.0
ALPHA_MAX = 2.0

# Natural units, as used throughout: hbar = m = c = 1.
DEFAULT_HBAR = 1.0
DEFAULT_MASS = 1.0
DEFAULT_VELOCITY = 1e-5


def alpha_in_range(alpha):
    return ALPHA_MIN < alpha <= ALPHA_MAX


def check_alpha(alpha):
    if not alpha_in_range(alpha):
        raise DomainError(f'alpha must lie in ({ALPHA_MIN:g}, {ALPHA_MAX:g}], got {alpha}')


@dataclasses.dataclass(frozen=True)
class LevyContext:
    alpha: float
    v: float = DEFAULT_VELOCITY
    m: float = DEFAULT_MASS
    hbar: float = DEFAULT_HBAR

    def __post_init__(self):
        check_alpha(self.alpha)
        for name in ('v', 'm', 'hbar'):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f'{name} must be finite and positive, got {value}')
        d_alpha = self.diffusion_coefficient
        if not (math.isfinite(d_alpha) and d_alpha > 0):
            raise DomainError(f'D_alpha must be finite and positive, got {d_alpha}')

    @functools.cached_property
    def diffusion_coefficient(self):
        return self.v ** (2 - self.alpha) / (self.alpha * self.m ** (self.alpha - 1))

    @functools.cached_property
    def energy_scale(self):
        """D_alpha * hbar^alpha, the factor between E and k^alpha."""
        return self.diffusion_coefficient * self.hbar**self.alpha

    def with_alpha(self, alpha):
        return dataclasses.replace(self, alpha=alpha)

    def __repr__(self):
        return f'<{self.__class__.__name__}| alpha={self.alpha} v={self.v} m={self.m} hbar={self.hbar}>'


def _principal_log(z):
    arg = np.angle(z)
    arg = np.where(arg == -np.pi, np.pi, arg)
    with np.errstate(divide='ignore'):
        return np.log(np.abs(z)) + 1j * arg


def principal_power(z, w):
    """z**w on the principal branch, computed as exp(w * (ln|z| + i Arg z)).

    Arg z is taken in (-pi, pi]: a point on the negative real axis carrying a
    negative zero imaginary part is mapped to +pi rather than -pi. Positive
    real z goes through the real power, so 9**0.5 is exactly 3.
    """
    z = np.asarray(z, dtype=np.complex128)
    positive = (z.imag == 0) & (z.real > 0)
    result = np.exp(w * _principal_log(z))
    result = np.where(positive, np.power(np.where(positive, z.real, 1.0), w), result)
    return result[()]


def diffusion_coefficient(ctx):
    return ctx.diffusion_coefficient


def require_physical_energy(energy):
    """Scan entry points take real, strictly positive energies only."""
    energy = np.asarray(energy)
    if np.iscomplexobj(energy):
        if np.any(energy.imag != 0):
            raise DomainError('energy must be real for scattering scans')
        energy = energy.real
    energy = energy.astype(np.float64)
    if np.any(~np.isfinite(energy)) or np.any(energy <= 0):
        raise DomainError('energy must be finite and positive')
    return energy[()]


def wavenumber(ctx, energy):
    energy = np.asarray(energy, dtype=np.complex128)
    if np.any(energy == 0):
        raise DomainError('wavenumber is undefined at zero energy')
    return principal_power(energy / ctx.energy_scale, 1.0 / ctx.alpha)


def inside_wavenumber(ctx, energy, height):
    difference = np.asarray(energy, dtype=np.complex128) - height
    if np.any(difference == 0):
        raise BranchPointError(f'E - V vanishes (branch point) for V={height}')
    return principal_power(difference / ctx.energy_scale, 1.0 / ctx.alpha)


def epsilon_offset(ctx, energy, height):
    """epsilon - 1, computed without cancelling when epsilon is close to 1."""
    # Ratio first, then the power: both wavenumbers may sit near the cut.
    k = wavenumber(ctx, energy)
    k_bar = inside_wavenumber(ctx, energy, height)
    if np.any(k_bar == 0):
        raise DomainError('inside wavenumber vanishes')
    ratio = np.where(k == k_bar, 1.0 + 0j, k / k_bar)
    return np.expm1((ctx.alpha - 1) * _principal_log(ratio))[()]


def epsilon_ratio(ctx, energy, height):
    return (1 + epsilon_offset(ctx, energy, height))[()]


def mu_pair(epsilon):
    epsilon = np.asarray(epsilon, dtype=np.complex128)
    if np.any(epsilon == 0):
        raise DomainError('epsilon must be nonzero')
    inverse = 1.0 / epsilon
    return ((epsilon + inverse) / 2)[()], ((epsilon - inverse) / 2)[()]


def mu_split(offset):
    """(1 - mu1, 1 + mu1, mu2) from delta = epsilon - 1.

    1 - mu1 = -delta^2 / (2 epsilon) and mu2 = delta (delta + 2) / (2 epsilon),
    so mu1^2 - mu2^2 = 1 holds for any delta and neither term cancels.
    """
    offset = np.asarray(offset, dtype=np.complex128)
    epsilon = 1 + offset
    if np.any(epsilon == 0):
        raise DomainError('epsilon must be nonzero')
    lower = -(offset**2) / (2 * epsilon)
    mu2 = offset * (offset + 2) / (2 * epsilon)
    return lower[()], (2 - lower)[()], mu2[()]
