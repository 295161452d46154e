#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""Grid scans over (E, alpha) and location of SS / CPA minima.

Every field is kept in log10 form. Rows are indexed by alpha, running
down from alpha_max, and columns by energy.
"""

import dataclasses
import enum
import logging
import math

import numpy as np
import pandas as pd
import scipy.signal

from fracscatter import levy
from fracscatter import refine
from fracscatter import transfer
from fracscatter import utils
from fracscatter.error import BranchPointError
from fracscatter.error import DomainError

LOGGER = logging.getLogger(__name__)

LOG10_CAP = 308.0
DEFAULT_E_POINTS = 4000
DEFAULT_ALPHA_POINTS = 200
DEFAULT_THRESHOLD = 6.0
DEFAULT_PROFILE_POINTS = 2000
E_SCALES = ('linear', 'logarithmic')


class Observable(enum.Enum):
    R = 'log10R'
    T = 'log10T'
    M22 = 'log10_abs_m22'
    C = 'log10_abs_C'

    def __str__(self):
        return self.value


class Kind(enum.Enum):
    SS = 'SS'
    CPA = 'CPA'

    def __str__(self):
        return self.value

    @property
    def observable(self):
        return Observable.M22 if self is Kind.SS else Observable.C


FIELD_COLUMNS = ['alpha', 'E'] + [str(o) for o in Observable]


@dataclasses.dataclass(frozen=True)
class ScanGrid:
    e_min: float
    e_max: float
    e_points: int = DEFAULT_E_POINTS
    e_scale: str = 'linear'
    alpha_min: float = levy.ALPHA_MAX
    alpha_max: float = levy.ALPHA_MAX
    alpha_points: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.e_min) and self.e_min > 0):
            raise DomainError(f'e_min must be positive, got {self.e_min}')
        if not (math.isfinite(self.e_max) and self.e_min < self.e_max):
            raise DomainError(f'e_min must be below e_max, got [{self.e_min}, {self.e_max}]')
        if self.e_points < 2:
            raise DomainError(f'e_points must be at least 2, got {self.e_points}')
        if self.e_scale not in E_SCALES:
            raise DomainError(f'e_scale must be one of {E_SCALES}, got {self.e_scale!r}')
        levy.check_alpha(self.alpha_min)
        levy.check_alpha(self.alpha_max)
        if self.alpha_min > self.alpha_max:
            raise DomainError(f'alpha_min must not exceed alpha_max, got [{self.alpha_min}, {self.alpha_max}]')
        if self.alpha_min < self.alpha_max and self.alpha_points < 2:
            raise DomainError(f'alpha_points must be at least 2 for an alpha sweep, got {self.alpha_points}')
        if self.alpha_min == self.alpha_max and self.alpha_points != 1:
            raise DomainError('a single alpha row takes alpha_points = 1')

    @classmethod
    def row(cls, e_range, alpha, e_points=DEFAULT_E_POINTS, e_scale='linear'):
        e_min, e_max = e_range
        return cls(e_min, e_max, e_points, e_scale, alpha, alpha, 1)

    @property
    def energies(self):
        if self.e_scale == 'linear':
            return np.linspace(self.e_min, self.e_max, self.e_points)
        return np.geomspace(self.e_min, self.e_max, self.e_points)

    @property
    def alphas(self):
        return np.linspace(self.alpha_max, self.alpha_min, self.alpha_points)

    @property
    def shape(self):
        return (self.alpha_points, self.e_points)


@dataclasses.dataclass(frozen=True, eq=False)
class ScanField:
    alphas: np.ndarray
    energies: np.ndarray
    values: dict

    def __getitem__(self, observable):
        return self.values[observable]

    def to_frame(self):
        alpha_col = np.repeat(self.alphas, len(self.energies))
        energy_col = np.tile(self.energies, len(self.alphas))
        data = {'alpha': alpha_col, 'E': energy_col}
        for observable in Observable:
            data[str(observable)] = self.values[observable].ravel()
        return pd.DataFrame(data, columns=FIELD_COLUMNS)


@dataclasses.dataclass(frozen=True)
class SingularityReport:
    kind: Kind
    e_star: float
    alpha_star: float
    residual: float
    depth: float
    bracket: tuple
    certificate: float = None

    def to_json_dict(self):
        data = {
            'kind': str(self.kind),
            'e_star': self.e_star,
            'alpha_star': self.alpha_star,
            'residual': self.residual,
            'depth': self.depth,
            'bracket': list(self.bracket),
        }
        if self.certificate is not None:
            data['certificate'] = self.certificate
        return data


def _cap(values):
    return np.clip(values, -LOG10_CAP, LOG10_CAP)


def _row_logs(potential, ctx, energies):
    matrix = potential.transfer_matrix(ctx, energies)
    log_r, _, log_t = transfer.log10_amplitudes(matrix)
    with np.errstate(divide='ignore', invalid='ignore'):
        log_m22 = np.log10(np.abs(matrix.m22))
        log_c = np.log10(np.abs(transfer.cpa_numerator(matrix))) - 2 * log_m22
    return {
        Observable.R: log_r,
        Observable.T: log_t,
        Observable.M22: log_m22,
        Observable.C: log_c,
    }


def evaluate_row(potential, ctx, energies):
    """All four log10 observables along one alpha row, capped at +-LOG10_CAP.

    Branch points (E = V with V real) are skipped and left as NaN.
    """
    energies = np.asarray(energies, dtype=np.float64)
    skip = np.asarray(potential.is_branch_point(energies), dtype=bool)
    if np.any(skip):
        LOGGER.warning(f'skipping {int(np.count_nonzero(skip))} branch point(s) at alpha={ctx.alpha}')
    with np.errstate(over='ignore', invalid='ignore'):
        logs = _row_logs(potential, ctx, energies[~skip])
    row = {}
    for observable, values in logs.items():
        full = np.full(energies.shape, np.nan)
        full[~skip] = _cap(values)
        row[observable] = full
    return row


def scan_fields(potential, ctx, grid, workers=None):
    energies = grid.energies
    alphas = grid.alphas
    LOGGER.debug(f'scanning {grid.shape[0]}x{grid.shape[1]} grid for {potential}')

    def row(alpha):
        return evaluate_row(potential, ctx.with_alpha(float(alpha)), energies)

    rows = utils.parallel_map(row, alphas, workers)
    values = {observable: np.vstack([r[observable] for r in rows]) for observable in Observable}
    return ScanField(alphas=alphas, energies=energies, values=values)


def scan_field(potential, ctx, grid, observable, workers=None):
    return scan_fields(potential, ctx, grid, workers)[observable]


def residual(potential, ctx, energy, kind):
    """|m22| for SS, |C| for CPA, at a single energy."""
    matrix = potential.transfer_matrix(ctx, energy)
    if kind is Kind.SS:
        return float(np.abs(matrix.m22))
    with np.errstate(over='ignore', invalid='ignore'):
        return float(np.abs(transfer.cpa_residual(matrix)))


def residual_function(potential, ctx, kind):
    def func(energy):
        try:
            return residual(potential, ctx, float(energy), kind)
        except BranchPointError:
            return math.inf

    return func


def local_minima(values):
    """Indices of interior local minima of a 1-D array (NaNs never qualify)."""
    values = np.asarray(values, dtype=np.float64)
    peaks, _ = scipy.signal.find_peaks(-np.nan_to_num(values, nan=np.inf))
    return peaks


def depth_of(median, value):
    depth = math.log10(median) - math.log10(value) if value > 0 else LOG10_CAP
    return float(min(depth, LOG10_CAP))


def grid_median(log_values):
    finite = np.asarray(log_values)[np.isfinite(log_values)]
    return float(10 ** np.median(finite))


def _find_minima(potential, ctx, e_range, kind, e_points, threshold, tol, e_scale):
    grid = ScanGrid.row(e_range, ctx.alpha, e_points=e_points, e_scale=e_scale)
    energies = grid.energies
    logs = evaluate_row(potential, ctx, energies)[kind.observable]
    median = grid_median(logs)
    candidates = local_minima(logs)
    LOGGER.debug(f'{kind} search at alpha={ctx.alpha}: {len(candidates)} candidate(s), grid median {median:.3g}')

    func = residual_function(potential, ctx, kind)
    reports = []
    for i in candidates:
        lower, middle, upper = energies[i - 1], energies[i], energies[i + 1]
        try:
            refined = refine.golden_minimum(func, lower, middle, upper, tol=tol)
        except refine.NotBracketed:
            LOGGER.debug(f'dropping candidate at E={middle}: not bracketed')
            continue
        if not lower < refined.x < upper:
            continue
        depth = depth_of(median, refined.value)
        if depth < threshold:
            continue
        certificate = None
        if kind is Kind.CPA:
            certificate = float(potential.cpa_certificate(ctx, refined.x))
        reports.append(
            SingularityReport(
                kind=kind,
                e_star=refined.x,
                alpha_star=ctx.alpha,
                residual=refined.value,
                depth=depth,
                bracket=(float(lower), float(upper)),
                certificate=certificate,
            )
        )
    reports.sort(key=lambda r: r.e_star)
    LOGGER.debug(f'{kind} search at alpha={ctx.alpha}: {len(reports)} report(s) above {threshold} decades')
    return reports


def find_ss(
    potential,
    ctx,
    e_range,
    e_points=DEFAULT_E_POINTS,
    threshold=DEFAULT_THRESHOLD,
    tol=refine.DEFAULT_TOLERANCE,
    e_scale='linear',
):
    return _find_minima(potential, ctx, e_range, Kind.SS, e_points, threshold, tol, e_scale)


def find_cpa(
    potential,
    ctx,
    e_range,
    e_points=DEFAULT_E_POINTS,
    threshold=DEFAULT_THRESHOLD,
    tol=refine.DEFAULT_TOLERANCE,
    e_scale='linear',
):
    return _find_minima(potential, ctx, e_range, Kind.CPA, e_points, threshold, tol, e_scale)


def deepest(reports):
    return max(reports, key=lambda r: r.depth) if reports else None


@dataclasses.dataclass(frozen=True, eq=False)
class AlphaProfile:
    energy: float
    alphas: np.ndarray
    log10R: np.ndarray
    log10T: np.ndarray
    log10C: np.ndarray

    @property
    def transmission_maxima(self):
        return local_minima(-self.log10T)

    @property
    def cpa_minima(self):
        return local_minima(self.log10C)

    def to_frame(self):
        return pd.DataFrame(
            {
                'alpha': self.alphas,
                'E': np.full(self.alphas.shape, self.energy),
                'log10R': self.log10R,
                'log10T': self.log10T,
                'log10_abs_C': self.log10C,
            }
        )


def alpha_axis(alpha_range, alpha_points):
    alpha_min, alpha_max = alpha_range
    levy.check_alpha(alpha_min)
    levy.check_alpha(alpha_max)
    if not alpha_min < alpha_max:
        raise DomainError(f'alpha range must be increasing, got [{alpha_min}, {alpha_max}]')
    if alpha_points < 2:
        raise DomainError(f'alpha_points must be at least 2, got {alpha_points}')
    return np.linspace(alpha_max, alpha_min, alpha_points)


def alpha_profile(potential, ctx, energy, alpha_range, alpha_points=DEFAULT_PROFILE_POINTS, workers=None):
    energy = float(levy.require_physical_energy(energy))
    alphas = alpha_axis(alpha_range, alpha_points)
    at = np.array([energy])

    def point(alpha):
        return evaluate_row(potential, ctx.with_alpha(float(alpha)), at)

    rows = utils.parallel_map(point, alphas, workers)
    profile = AlphaProfile(
        energy=energy,
        alphas=alphas,
        log10R=np.array([r[Observable.R][0] for r in rows]),
        log10T=np.array([r[Observable.T][0] for r in rows]),
        log10C=np.array([r[Observable.C][0] for r in rows]),
    )
    LOGGER.debug(
        f'alpha profile at E={energy}: {len(profile.transmission_maxima)} T maxima, '
        f'{len(profile.cpa_minima)} C minima'
    )
    return profile
