#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""Follow the sub-peaks of the alpha = 2 row down in alpha.

A sub-peak is a local minimum of |m22| (SS) or |C| (CPA) along energy,
i.e. a simultaneous maximum of R and T, or of 1/|C|. Each minimum of the
first row above the main peak is continued row by row to the nearest
minimum inside the continuation window. Along a track the residual is refined in energy at
every row; where it dips along alpha a real (E, alpha) root of m22, or of
1 - m12 m21, is polished and, if deep enough, marks the track developed.
"""

import dataclasses
import logging

import numpy as np

from fracscatter import levy
from fracscatter import refine
from fracscatter import scan
from fracscatter import transfer
from fracscatter import utils
from fracscatter.error import DomainError

LOGGER = logging.getLogger(__name__)

TRACK_TOLERANCE = 1e-8
MAIN = 'main'
ABOVE = 'above'
BELOW = 'below'


@dataclasses.dataclass(frozen=True)
class TrackSample:
    alpha: float
    e_peak: float
    log10R: float
    log10T: float
    residual: float


@dataclasses.dataclass(frozen=True)
class SubPeakTrack:
    peak_id: int
    kind: scan.Kind
    side: str
    samples: tuple
    e_main: float
    developed_at: float = None
    developed_energy: float = None
    lost: bool = False

    @property
    def e_start(self):
        return self.samples[0].e_peak

    @property
    def developed(self):
        return self.developed_at is not None

    def to_json_dict(self):
        return {
            'peak_id': self.peak_id,
            'kind': str(self.kind),
            'side': self.side,
            'e_main': self.e_main,
            'developed_at': self.developed_at,
            'developed_energy': self.developed_energy,
            'lost': self.lost,
            'samples': [dataclasses.asdict(s) for s in self.samples],
        }

    def rows(self):
        for s in self.samples:
            yield {
                'peak_id': self.peak_id,
                'side': self.side,
                'alpha': s.alpha,
                'E': s.e_peak,
                'log10R': s.log10R,
                'log10T': s.log10T,
                'residual': s.residual,
                'developed_at': self.developed_at,
            }


def default_window(start_minima, e_points):
    """Half the smallest gap between neighbouring first-row minima, in grid points."""
    if len(start_minima) < 2:
        return e_points
    return max(1, int(np.min(np.diff(start_minima)) // 2))


def _continue(row_minima, previous, window):
    if len(row_minima) == 0:
        return None
    distance = np.abs(row_minima - previous)
    nearest = int(np.argmin(distance))
    if distance[nearest] > window:
        return None
    return int(row_minima[nearest])


def _root_function(potential, ctx, kind):
    def func(energy, alpha):
        matrix = potential.transfer_matrix(ctx.with_alpha(float(alpha)), float(energy))
        if kind is scan.Kind.SS:
            return complex(matrix.m22)
        return complex(transfer.cpa_numerator(matrix))

    return func


class _Tracker:
    def __init__(self, potential, ctx, field, kind, main, threshold, window, tol):
        self.potential = potential
        self.ctx = ctx
        self.kind = kind
        self.threshold = threshold
        self.window = window
        self.tol = tol
        self.energies = field.energies
        self.alphas = field.alphas
        logs = field[kind.observable]
        self.median = scan.grid_median(logs[0])
        self.row_minima = [scan.local_minima(row) for row in logs]
        self.main = main
        self.e_main = self._sample(0, main).e_peak

    def _window_energy(self, index):
        upper = min(index + self.window, len(self.energies) - 1)
        lower = max(index - self.window, 0)
        return max(self.energies[upper] - self.energies[index], self.energies[index] - self.energies[lower])

    def _sample(self, row, index):
        ctx = self.ctx.with_alpha(float(self.alphas[row]))
        func = scan.residual_function(self.potential, ctx, self.kind)
        energy, value = float(self.energies[index]), None
        if 0 < index < len(self.energies) - 1:
            try:
                refined = refine.golden_minimum(
                    func, self.energies[index - 1], energy, self.energies[index + 1], tol=self.tol
                )
                energy, value = refined.x, refined.value
            except refine.NotBracketed:
                pass
        if value is None:
            value = func(energy)
        logs = scan.evaluate_row(self.potential, ctx, np.array([energy]))
        return TrackSample(
            alpha=float(self.alphas[row]),
            e_peak=energy,
            log10R=float(logs[scan.Observable.R][0]),
            log10T=float(logs[scan.Observable.T][0]),
            residual=value,
        )

    def _development(self, samples, indices):
        """(alpha, energy) where the track first reaches the threshold, or (None, None)."""
        found = []
        for s in samples:
            if scan.depth_of(self.median, s.residual) >= self.threshold:
                found.append((s.alpha, s.e_peak))
                break

        residuals = np.array([s.residual for s in samples])
        root_func = _root_function(self.potential, self.ctx, self.kind)
        for j in scan.local_minima(residuals):
            sample = samples[j]
            root = refine.polish_root(root_func, (sample.e_peak, sample.alpha))
            if root is None:
                continue
            energy, alpha = float(root[0]), float(root[1])
            if not samples[j + 1].alpha <= alpha <= samples[j - 1].alpha or not levy.alpha_in_range(alpha):
                continue
            if abs(energy - sample.e_peak) > self._window_energy(indices[j]) or energy <= 0:
                continue
            value = scan.residual(self.potential, self.ctx.with_alpha(alpha), energy, self.kind)
            if scan.depth_of(self.median, value) >= self.threshold:
                found.append((alpha, energy))
                break

        if not found:
            return None, None
        return max(found)

    def follow(self, peak_id, start):
        indices = [start]
        lost = False
        for row in range(1, len(self.alphas)):
            index = _continue(self.row_minima[row], indices[-1], self.window)
            if index is None:
                lost = True
                break
            indices.append(index)
        samples = tuple(self._sample(row, index) for row, index in enumerate(indices))
        developed_at, developed_energy = self._development(samples, indices)
        side = _side(start, self.main)
        LOGGER.debug(
            f'{self.kind} track {peak_id} ({side}) from E={samples[0].e_peak:.6g}: '
            f'{len(samples)} sample(s), developed_at={developed_at}, lost={lost}'
        )
        return SubPeakTrack(
            peak_id=peak_id,
            kind=self.kind,
            side=side,
            samples=samples,
            e_main=self.e_main,
            developed_at=developed_at,
            developed_energy=developed_energy,
            lost=lost,
        )


def _side(index, main):
    if index == main:
        return MAIN
    return ABOVE if index > main else BELOW


def track_subpeaks(
    potential,
    ctx,
    grid,
    kind,
    threshold=scan.DEFAULT_THRESHOLD,
    window=None,
    tol=TRACK_TOLERANCE,
    workers=None,
    sides=(ABOVE,),
):
    """Tracks of the alpha = 2 minima on the given sides of the main peak.

    By default only the sub-peaks above the main SS/CPA energy are followed;
    peak_id counts the followed peaks by increasing energy.
    """
    if grid.alpha_max != levy.ALPHA_MAX:
        raise DomainError(f'sub-peak tracks start from the alpha = 2 row, got alpha_max={grid.alpha_max}')
    unknown = set(sides) - {MAIN, ABOVE, BELOW}
    if unknown:
        raise DomainError(f'unknown track side(s) {sorted(unknown)}')
    field = scan.scan_fields(potential, ctx, grid, workers)
    first = field[kind.observable][0]
    start = scan.local_minima(first)
    if len(start) == 0:
        LOGGER.debug(f'no {kind} sub-peaks in the alpha = 2 row')
        return []
    main = int(start[np.argmin(first[start])])
    if window is None:
        window = default_window(start, grid.e_points)
    followed = [int(s) for s in start if _side(int(s), main) in sides]
    LOGGER.debug(
        f'{len(start)} {kind} minima in the alpha = 2 row, main at E={field.energies[main]:.6g}, '
        f'following {len(followed)} on side(s) {", ".join(sides)}, window={window}'
    )
    if not followed:
        return []

    tracker = _Tracker(potential, ctx, field, kind, main, threshold, window, tol)
    return utils.parallel_map(lambda item: tracker.follow(*item), list(enumerate(followed)), workers)


def main_energy(tracks):
    """Refined alpha = 2 energy of the main peak the tracks were sorted against."""
    return tracks[0].e_main if tracks else None
