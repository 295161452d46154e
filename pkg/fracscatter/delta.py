#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""Closed-form spectral singularity of V(x) = -i rho delta(x - x0)."""

import cmath
import dataclasses
import enum
import logging
import math

from fracscatter import levy
from fracscatter.error import DomainError

LOGGER = logging.getLogger(__name__)

PHASE_TOLERANCE = 1e-12
BOUNDED_TOLERANCE = 1e-12
SS_PHASE = -math.pi / 2


class ShiftClass(enum.Enum):
    BlueShift = 'blue-shift'
    RedShift = 'red-shift'
    Bounded = 'bounded'
    Indeterminate = 'indeterminate'

    def __str__(self):
        return self.value


@dataclasses.dataclass(frozen=True)
class DeltaSSResult:
    e_ss: float
    rho: float
    alpha: float
    shift_class: ShiftClass
    # ζ = |ζ| e^{iφ}; only φ = -π/2 carries a real SS energy
    phase: float = SS_PHASE

    def __post_init__(self):
        if not self.e_ss > 0:
            raise DomainError(f'SS energy must be positive, got {self.e_ss}')

    @property
    def zeta(self):
        return cmath.rect(self.rho, self.phase)

    def to_json_dict(self):
        return {
            'alpha': self.alpha,
            'rho': self.rho,
            'e_ss': self.e_ss,
            'shift_class': str(self.shift_class),
            'phase': self.phase,
        }


def _check_rho(rho):
    if not (math.isfinite(rho) and rho > 0):
        raise DomainError(f'rho must be finite and positive, got {rho}')


def _exponents(alpha):
    if alpha == levy.ALPHA_MIN:
        raise DomainError('alpha = 1 makes the SS exponent 1/(alpha - 1) blow up')
    levy.check_alpha(alpha)
    return 1.0 / (alpha - 1), alpha / (alpha - 1)


def delta_ss_energy(ctx, rho):
    """E_ss = m v^((a-2)/(a-1)) (a / hbar^a)^(1/(a-1)) (rho/2)^(a/(a-1)).

    Evaluated as (D_a hbar^a)^(-1/(a-1)) (rho/2)^(a/(a-1)) in log form,
    which is the same expression with the mass dependence kept general.
    """
    _check_rho(rho)
    inverse, power = _exponents(ctx.alpha)
    log_energy = -inverse * math.log(ctx.energy_scale) + power * math.log(rho / 2)
    try:
        energy = math.exp(log_energy)
    except OverflowError as e:
        raise DomainError(f'SS energy overflows for rho={rho} at alpha={ctx.alpha}') from e
    if energy == 0:
        raise DomainError(f'SS energy underflows for rho={rho} at alpha={ctx.alpha}')
    LOGGER.debug(f'delta SS energy {energy!r} for rho={rho} {ctx!r}')
    return energy


def complex_ss_energy(ctx, zeta):
    """Formal root of m22 = 0 for a delta of arbitrary phase.

    Equals delta_ss_energy(ctx, |zeta|) when Arg zeta = -pi/2; any other
    phase rotates the energy off the real axis.
    """
    if zeta == 0:
        raise DomainError('delta strength must be nonzero')
    inverse, power = _exponents(ctx.alpha)
    modulus = math.exp(-inverse * math.log(ctx.energy_scale) + power * math.log(abs(zeta) / 2))
    rotation = ctx.alpha * (math.pi / 2 + cmath.phase(zeta)) * inverse
    return cmath.rect(modulus, rotation)


def ss_phase_condition(zeta):
    """(True, rho) when zeta = -i rho with rho > 0, else (False, |zeta|)."""
    rho = abs(zeta)
    if rho == 0:
        return False, 0.0
    satisfied = abs(cmath.phase(zeta) - SS_PHASE) <= PHASE_TOLERANCE
    return satisfied, rho


def ss_ratio(ctx_base, alpha1, alpha2, rho):
    """E_ss(alpha1) / E_ss(alpha2) for the same rho and v; independent of m."""
    _check_rho(rho)
    inverse1, _ = _exponents(alpha1)
    inverse2, _ = _exponents(alpha2)
    x = 2 * ctx_base.hbar * ctx_base.v / rho
    log_ratio = inverse1 * math.log(alpha1) - inverse2 * math.log(alpha2) + (inverse1 - inverse2) * -math.log(x)
    return math.exp(log_ratio)


def classify_shift(rho, v, hbar=levy.DEFAULT_HBAR):
    _check_rho(rho)
    x = 2 * hbar * v / rho
    if math.isclose(x, 1.0, rel_tol=BOUNDED_TOLERANCE):
        return ShiftClass.Bounded
    if x < 1:
        return ShiftClass.BlueShift
    if x > math.e / 2:
        return ShiftClass.RedShift
    return ShiftClass.Indeterminate


def delta_ss_result(ctx, rho):
    return DeltaSSResult(
        e_ss=delta_ss_energy(ctx, rho),
        rho=rho,
        alpha=ctx.alpha,
        shift_class=classify_shift(rho, ctx.v, ctx.hbar),
    )
