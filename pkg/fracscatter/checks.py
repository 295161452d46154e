#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""Randomised invariant suite, shared by the test-suite and `fracscatter check`.

Draws use v = 1 so D_alpha stays of order one, and the barrier width is
redrawn until |Im k̄| b stays below a cap, keeping every entry inside
double precision.
"""

import dataclasses
import logging
import math

import numpy as np

from fracscatter import delta
from fracscatter import levy
from fracscatter import oracle
from fracscatter import transfer

LOGGER = logging.getLogger(__name__)

DEFAULT_SEED = 1729
DET_TOLERANCE = 1e-10
MU_TOLERANCE = 1e-12
REDUCTION_TOLERANCE = 1e-12
UNITARITY_TOLERANCE = 1e-10
ORACLE_TOLERANCE = 1e-10
CPA_TOLERANCE = 1e-10
DELTA_RESIDUAL_TOLERANCE = 1e-10

SWEEP_IM_CAP = 300.0
ORACLE_IM_CAP = 10.0

DRAWS = {
    'determinant': 10000,
    'mu-identity': 1000,
    'alpha2-reduction': 1000,
    'hermitian-unitarity': 1000,
    'oracle': 1000,
    'cpa-equivalence': 1000,
    'delta-residual': 200,
}


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    draws: int
    worst: float
    tolerance: float

    @property
    def passed(self):
        return self.worst <= self.tolerance

    def __str__(self):
        verdict = 'ok' if self.passed else 'FAILED'
        return f'{self.name}: {verdict} (worst {self.worst:.3g}, tolerance {self.tolerance:g}, {self.draws} draws)'


def _log_uniform(rng, low, high):
    return float(math.exp(rng.uniform(math.log(low), math.log(high))))


def draw_alpha(rng):
    return float(rng.uniform(1.001, 2.0))


def draw_height(rng, bound=100.0):
    return complex(rng.uniform(0, bound) * np.exp(1j * rng.uniform(-np.pi, np.pi)))


def draw_barrier(rng, im_cap=SWEEP_IM_CAP, e_range=(1e-3, 1e4), b_range=(0.1, 100.0), alpha=None, real=False):
    """(ctx, height, width, energy) with |Im k̄| b <= im_cap."""
    while True:
        ctx = levy.LevyContext(alpha=draw_alpha(rng) if alpha is None else alpha, v=1.0)
        energy = _log_uniform(rng, *e_range)
        height = complex(rng.uniform(-100.0, 100.0)) if real else draw_height(rng)
        if energy == height:
            continue
        k_bar = complex(levy.inside_wavenumber(ctx, energy, height))
        width = _log_uniform(rng, *b_range)
        if abs(k_bar.imag) * width <= im_cap:
            return ctx, height, width, energy


def _relative(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1.0)


def check_determinant(rng, draws):
    worst = 0.0
    for _ in range(draws):
        ctx, height, width, energy = draw_barrier(rng)
        worst = max(worst, float(transfer.barrier_matrix(ctx, height, width, energy).det_error()))
        zeta = draw_height(rng)
        worst = max(worst, float(transfer.delta_matrix(ctx, zeta, energy).det_error()))
    return CheckResult('determinant', draws, worst, DET_TOLERANCE)


def check_mu_identity(rng, draws):
    worst = 0.0
    for _ in range(draws):
        eps = _log_uniform(rng, 1e-6, 1e6) * np.exp(1j * rng.uniform(-np.pi, np.pi))
        mu1, mu2 = levy.mu_pair(eps)
        worst = max(worst, abs(mu1**2 - mu2**2 - 1) / max(1.0, abs(mu1) ** 2))
    return CheckResult('mu-identity', draws, float(worst), MU_TOLERANCE)


def standard_barrier_matrix(height, width, energy, m=levy.DEFAULT_MASS, hbar=levy.DEFAULT_HBAR):
    """The ordinary (alpha = 2) barrier matrix, from k = sqrt(2mE)/hbar."""
    k = np.sqrt(complex(2 * m * energy)) / hbar
    k_bar = np.sqrt(2 * m * (energy - complex(height))) / hbar
    mu1, mu2 = levy.mu_pair(k / k_bar)
    cos, sin = np.cos(k_bar * width), np.sin(k_bar * width)
    phase = np.exp(1j * k * width)
    return transfer.TransferMatrix(
        (cos - 1j * mu1 * sin) * phase,
        1j * mu2 * sin,
        -1j * mu2 * sin,
        (cos + 1j * mu1 * sin) / phase,
    )


def check_alpha2_reduction(rng, draws):
    worst = 0.0
    for _ in range(draws):
        ctx, height, width, energy = draw_barrier(rng, e_range=(1e-3, 1e3), b_range=(0.1, 10.0), alpha=2.0)
        got = transfer.barrier_matrix(ctx, height, width, energy)
        want = standard_barrier_matrix(height, width, energy)
        scale = max(1.0, *(abs(e) for e in want.entries()))
        worst = max(worst, max(abs(g - w) for g, w in zip(got.entries(), want.entries())) / scale)
    return CheckResult('alpha2-reduction', draws, float(worst), REDUCTION_TOLERANCE)


def check_hermitian_unitarity(rng, draws):
    worst = 0.0
    for _ in range(draws):
        ctx, height, width, energy = draw_barrier(rng, e_range=(1e-3, 1e3), b_range=(0.1, 10.0), alpha=2.0, real=True)
        s = transfer.scattering_set(transfer.barrier_matrix(ctx, height, width, energy))
        worst = max(worst, abs(s.R_l + s.T - 1))
        s = transfer.scattering_set(transfer.delta_matrix(ctx, rng.uniform(-100.0, 100.0), energy))
        worst = max(worst, abs(s.R_l + s.T - 1))
    return CheckResult('hermitian-unitarity', draws, float(worst), UNITARITY_TOLERANCE)


def check_oracle(rng, draws):
    worst = 0.0
    for _ in range(draws):
        ctx, height, width, energy = draw_barrier(rng, im_cap=ORACLE_IM_CAP, e_range=(1e-2, 1e3), b_range=(0.1, 20.0))
        closed = transfer.scattering_set(transfer.barrier_matrix(ctx, height, width, energy))
        matched = oracle.boundary_matching_scattering(ctx, height, width, energy)
        worst = max(
            worst,
            _relative(matched.t_l, closed.t_l),
            _relative(matched.T, closed.T),
            _relative(abs(matched.t_r) ** 2, closed.T),
            _relative(matched.R_l, closed.R_l),
            _relative(matched.R_r, closed.R_r),
        )
    return CheckResult('oracle', draws, float(worst), ORACLE_TOLERANCE)


def _random_unit_matrix(rng, absorbing=False):
    def entry():
        return complex(_log_uniform(rng, 0.1, 10.0) * np.exp(1j * rng.uniform(-np.pi, np.pi)))

    m11, m12 = entry(), entry()
    m21 = 1 / m12 if absorbing else entry()
    return transfer.TransferMatrix(m11, m12, m21, (1 + m12 * m21) / m11)


def check_cpa_equivalence(rng, draws):
    worst = 0.0
    for _ in range(draws):
        matrix = _random_unit_matrix(rng)
        via_det = (2 - matrix.m11 * matrix.m22) / matrix.m22**2
        worst = max(worst, _relative(complex(transfer.cpa_residual(matrix)), via_det))
        matrix = _random_unit_matrix(rng, absorbing=True)
        worst = max(worst, abs(transfer.cpa_residual(matrix)) * min(1.0, abs(matrix.m22) ** 2))
    return CheckResult('cpa-equivalence', draws, float(worst), CPA_TOLERANCE)


def check_delta_residual(rng, draws):
    worst = 0.0
    for _ in range(draws):
        ctx = levy.LevyContext(alpha=float(rng.uniform(1.2, 2.0)), v=_log_uniform(rng, 1e-6, 1.0))
        rho = _log_uniform(rng, 1e-3, 10.0)
        energy = delta.delta_ss_energy(ctx, rho)
        matrix = transfer.delta_matrix(ctx, complex(0, -rho), energy)
        worst = max(worst, abs(matrix.m22))
    return CheckResult('delta-residual', draws, float(worst), DELTA_RESIDUAL_TOLERANCE)


CHECKS = {
    'determinant': check_determinant,
    'mu-identity': check_mu_identity,
    'alpha2-reduction': check_alpha2_reduction,
    'hermitian-unitarity': check_hermitian_unitarity,
    'oracle': check_oracle,
    'cpa-equivalence': check_cpa_equivalence,
    'delta-residual': check_delta_residual,
}


def scaled_draws(name, scale=1.0):
    return max(1, int(round(DRAWS[name] * scale)))


def run_checks(seed=DEFAULT_SEED, scale=1.0, names=None):
    results = []
    for name in names or CHECKS:
        rng = np.random.default_rng([seed, list(CHECKS).index(name)])
        result = CHECKS[name](rng, scaled_draws(name, scale))
        LOGGER.info(str(result))
        results.append(result)
    return results
