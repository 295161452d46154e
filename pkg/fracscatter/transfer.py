#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""Transfer matrices of the complex delta and the complex rectangular barrier.

Matrix entries may be numpy arrays: every builder evaluates a whole energy
row at once and TransferMatrix simply carries the four broadcast arrays.
"""

import abc
import dataclasses
import logging
import math

import numpy as np

from fracscatter import levy
from fracscatter.error import DomainError
from fracscatter.error import SpectralSingularPoint

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class TransferMatrix:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @classmethod
    def identity(cls):
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @property
    def det(self):
        return self.m11 * self.m22 - self.m12 * self.m21

    def det_error(self):
        """|det - 1| relative to the size of the products forming det."""
        scale = np.maximum(1.0, np.maximum(np.abs(self.m11 * self.m22), np.abs(self.m12 * self.m21)))
        return np.abs(self.det - 1) / scale

    def compose(self, other):
        return compose(self, other)

    def __matmul__(self, other):
        return compose(self, other)

    def entries(self):
        return (self.m11, self.m12, self.m21, self.m22)

    def to_json_dict(self):
        return {name: [float(np.real(value)), float(np.imag(value))] for name, value in self._named()}

    @classmethod
    def from_json_dict(cls, data):
        return cls(**{name: complex(*data[name]) for name in ('m11', 'm12', 'm21', 'm22')})

    def _named(self):
        return zip(('m11', 'm12', 'm21', 'm22'), self.entries())


def compose(a, b):
    return TransferMatrix(
        a.m11 * b.m11 + a.m12 * b.m21,
        a.m11 * b.m12 + a.m12 * b.m22,
        a.m21 * b.m11 + a.m22 * b.m21,
        a.m21 * b.m12 + a.m22 * b.m22,
    )


def free_propagation(ctx, energy, distance):
    phase = np.exp(1j * levy.wavenumber(ctx, energy) * distance)
    return TransferMatrix(phase, 0j * phase, 0j * phase, 1 / phase)


def translate(ctx, energy, matrix, shift):
    """Move a scatterer by `shift`: P(-s) M P(s), P(s) = diag(e^{iks}, e^{-iks})."""
    return compose(compose(free_propagation(ctx, energy, -shift), matrix), free_propagation(ctx, energy, shift))


def _check_energy(energy):
    energy = np.asarray(energy)
    if np.iscomplexobj(energy) or np.any(energy <= 0):
        raise DomainError('transfer matrices need real positive energies')


def delta_coupling(ctx, energy):
    """c = (2 D_alpha k^(alpha-1) hbar^alpha)^-1"""
    k = levy.wavenumber(ctx, energy)
    return 1.0 / (2 * ctx.energy_scale * levy.principal_power(k, ctx.alpha - 1))


def delta_matrix(ctx, zeta, energy):
    _check_energy(energy)
    x = 1j * zeta * delta_coupling(ctx, energy)
    return TransferMatrix(1 + x, x, -x, 1 - x)


def barrier_matrix(ctx, height, width, energy):
    """Diagonal entries are ((1 -+ mu1) e^{i kb b} + (1 +- mu1) e^{-i kb b}) / 2 times the outside phase.

    The large exponential only multiplies 1 -+ mu1 built from epsilon - 1;
    no entry is a difference of two large terms.
    """
    _check_energy(energy)
    if not width > 0:
        raise DomainError(f'barrier width must be positive, got {width}')
    k = levy.wavenumber(ctx, energy)
    k_bar = levy.inside_wavenumber(ctx, energy, height)
    lower, upper, mu2 = levy.mu_split(levy.epsilon_offset(ctx, energy, height))
    forward = np.exp(1j * k_bar * width)
    backward = np.exp(-1j * k_bar * width)
    phase = np.exp(1j * k * width)
    m12 = mu2 * (forward - backward) / 2
    return TransferMatrix(
        (lower * forward + upper * backward) / 2 * phase,
        m12,
        -m12,
        (upper * forward + lower * backward) / 2 / phase,
    )


@dataclasses.dataclass(frozen=True)
class ScatteringSet:
    t_l: complex
    t_r: complex
    r_l: complex
    r_r: complex

    @property
    def T(self):
        return np.abs(self.t_l) ** 2

    @property
    def R_l(self):
        return np.abs(self.r_l) ** 2

    @property
    def R_r(self):
        return np.abs(self.r_r) ** 2


def scattering_set(matrix, energy=None, alpha=None):
    if np.any(matrix.m22 == 0):
        raise SpectralSingularPoint(energy, alpha)
    t = 1 / matrix.m22
    return ScatteringSet(t_l=t, t_r=t, r_l=matrix.m21 * t, r_r=matrix.m12 * t)


def log10_amplitudes(matrix):
    """(log10 R_l, log10 R_r, log10 T) from log-moduli; +inf where m22 = 0."""
    with np.errstate(divide='ignore', invalid='ignore'):
        log_m22 = np.log10(np.abs(matrix.m22))
        return (
            2 * (np.log10(np.abs(matrix.m21)) - log_m22),
            2 * (np.log10(np.abs(matrix.m12)) - log_m22),
            -2 * log_m22,
        )


def cpa_numerator(matrix):
    return 1 - matrix.m12 * matrix.m21


def cpa_residual(matrix):
    """C = t_l t_r - r_l r_r = (1 - m12 m21) / m22^2.

    Where m22 vanishes the m12 m21 - 1 form is returned instead and the
    overlap with a spectral singularity is logged.
    """
    m22 = np.asarray(matrix.m22)
    numerator = np.asarray(cpa_numerator(matrix))
    singular = m22 == 0
    if np.any(singular):
        LOGGER.warning(f'CPA residual evaluated at {int(np.count_nonzero(singular))} spectral-singular point(s)')
    with np.errstate(divide='ignore', invalid='ignore'):
        residual = np.where(singular, -numerator, numerator / np.where(singular, 1, m22) ** 2)
    return residual[()]


class Potential(metaclass=abc.ABCMeta):
    @abc.abstractmethod
    def transfer_matrix(self, ctx, energy):
        """Transfer matrix at the given (array of) real positive energies."""

    @abc.abstractmethod
    def cpa_certificate(self, ctx, energy):
        """|m12 m21 - 1| from the potential's own closed form."""

    def is_branch_point(self, energy):
        return np.zeros(np.shape(energy), dtype=bool)

    @abc.abstractmethod
    def describe(self):
        """Flat mapping of the potential parameters, for outputs."""


@dataclasses.dataclass(frozen=True)
class ComplexDelta(Potential):
    zeta: complex
    x0: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.zeta.real) and math.isfinite(self.zeta.imag)):
            raise DomainError(f'delta strength must be finite, got {self.zeta}')

    @classmethod
    def absorbing(cls, rho, x0=0.0):
        """V(x) = -i rho delta(x - x0)"""
        return cls(zeta=complex(0, -rho), x0=x0)

    def transfer_matrix(self, ctx, energy):
        # The x0 phases are kept out of the default path; see translate().
        return delta_matrix(ctx, self.zeta, energy)

    def cpa_certificate(self, ctx, energy):
        coupling = delta_coupling(ctx, energy)
        return np.abs((self.zeta * coupling) ** 2 - 1)

    def describe(self):
        return {'potential': 'delta', 'zeta_re': self.zeta.real, 'zeta_im': self.zeta.imag, 'x0': self.x0}


@dataclasses.dataclass(frozen=True)
class ComplexBarrier(Potential):
    height: complex
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError(f'barrier width must be positive, got {self.width}')

    def transfer_matrix(self, ctx, energy):
        return barrier_matrix(ctx, self.height, self.width, energy)

    def cpa_certificate(self, ctx, energy):
        k_bar = levy.inside_wavenumber(ctx, energy, self.height)
        _, _, mu2 = levy.mu_split(levy.epsilon_offset(ctx, energy, self.height))
        return np.abs(mu2**2 * np.sin(k_bar * self.width) ** 2 - 1)

    def is_branch_point(self, energy):
        height = complex(self.height)
        return (np.asarray(energy) == height.real) & (height.imag == 0)

    def describe(self):
        return {'potential': 'barrier', 'v1': self.height.real, 'v2': self.height.imag, 'width': self.width}
