#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

import logging
import math

import numpy as np
import pytest

from fracscatter import delta
from fracscatter import emit
from fracscatter import levy
from fracscatter import refine
from fracscatter import scan
from fracscatter import transfer
from fracscatter.error import DomainError

SHIFT_ALPHAS = (2.0, 1.99, 1.98, 1.95)


@pytest.fixture(scope='module')
def free_barrier():
    return transfer.ComplexBarrier(0j, 10.0)


def test_grid_axes():
    grid = scan.ScanGrid(100.0, 500.0, 5, 'linear', 1.98, 2.0, 3)
    np.testing.assert_allclose(grid.energies, [100, 200, 300, 400, 500])
    np.testing.assert_allclose(grid.alphas, [2.0, 1.99, 1.98])
    assert grid.shape == (3, 5)
    assert scan.ScanGrid(1.0, 100.0, 3, 'logarithmic').energies == pytest.approx([1, 10, 100])


@pytest.mark.parametrize(
    'args',
    [
        (0.0, 10.0),
        (10.0, 10.0),
        (1.0, 10.0, 1),
        (1.0, 10.0, 10, 'cubic'),
        (1.0, 10.0, 10, 'linear', 2.0, 1.9, 5),
        (1.0, 10.0, 10, 'linear', 1.9, 2.0, 1),
        (1.0, 10.0, 10, 'linear', 2.0, 2.0, 4),
        (1.0, 10.0, 10, 'linear', 0.9, 2.0, 4),
    ],
)
def test_grid_validation(args):
    with pytest.raises(DomainError):
        scan.ScanGrid(*args)


def test_free_field_is_flat(free_barrier, base_ctx):
    grid = scan.ScanGrid(10.0, 100.0, 50, 'linear', 1.9, 2.0, 3)
    field = scan.scan_fields(free_barrier, base_ctx, grid, workers=1)
    assert np.all(field[scan.Observable.R] == -scan.LOG10_CAP)
    np.testing.assert_allclose(field[scan.Observable.T], 0, atol=1e-12)
    np.testing.assert_allclose(field[scan.Observable.C], 0, atol=1e-12)


def test_delta_row_has_single_m22_dip(base_ctx):
    grid = scan.ScanGrid.row((0.5, 2.0), 2.0, e_points=301)
    row = scan.scan_field(transfer.ComplexDelta.absorbing(1.5), base_ctx, grid, scan.Observable.M22)[0]
    minima = scan.local_minima(row)
    assert len(minima) == 1
    assert grid.energies[minima[0]] == pytest.approx(1.125, abs=0.005)


def test_branch_points_are_skipped(caplog):
    ctx = levy.LevyContext(alpha=1.8, v=1.0)
    energies = np.linspace(1.0, 9.0, 5)
    with caplog.at_level(logging.WARNING, logger='fracscatter.scan'):
        row = scan.evaluate_row(transfer.ComplexBarrier(5.0, 1.0), ctx, energies)
    values = row[scan.Observable.T]
    assert np.isnan(values[2])
    assert np.all(np.isfinite(np.delete(values, 2)))
    assert 'branch point' in caplog.text


def test_field_is_capped(base_ctx):
    row = scan.evaluate_row(transfer.ComplexDelta.absorbing(1.5), base_ctx, np.array([1.125, 2.0]))
    for values in row.values():
        assert np.all(np.abs(values[np.isfinite(values)]) <= scan.LOG10_CAP)


def test_field_frame_layout(ss_barrier, base_ctx):
    grid = scan.ScanGrid(100.0, 500.0, 7, 'linear', 1.98, 2.0, 3)
    frame = scan.scan_fields(ss_barrier, base_ctx, grid, workers=1).to_frame()
    assert list(frame.columns) == ['alpha', 'E', 'log10R', 'log10T', 'log10_abs_m22', 'log10_abs_C']
    assert len(frame) == 21
    assert list(frame['alpha'][:7]) == [2.0] * 7
    assert frame['E'][7] == 100.0


def test_scan_is_independent_of_worker_count(ss_barrier, base_ctx, workers):
    grid = scan.ScanGrid(100.0, 500.0, 400, 'linear', 1.98, 2.0, 21)
    serial = scan.scan_fields(ss_barrier, base_ctx, grid, workers=1)
    threaded = scan.scan_fields(ss_barrier, base_ctx, grid, workers=workers)
    for observable in scan.Observable:
        np.testing.assert_array_equal(serial[observable], threaded[observable])
    assert emit.frame_to_csv(serial.to_frame()) == emit.frame_to_csv(threaded.to_frame())


def test_local_minima_treat_nan_as_walls():
    values = np.array([3.0, 1.0, 2.0, np.nan, 0.5, np.nan, 4.0, 2.0, 5.0])
    assert list(scan.local_minima(values)) == [1, 4, 7]


def test_depth_of():
    assert scan.depth_of(1.0, 1e-6) == pytest.approx(6.0)
    assert scan.depth_of(1.0, 0.0) == scan.LOG10_CAP


def test_delta_ss_search_agrees_with_closed_form():
    ctx = levy.LevyContext(alpha=1.85, v=1e-5)
    reports = scan.find_ss(transfer.ComplexDelta.absorbing(1.5), ctx, (1.0, 20.0))
    assert len(reports) == 1
    report = reports[0]
    assert report.kind is scan.Kind.SS
    assert report.alpha_star == 1.85
    assert report.e_star == pytest.approx(8.409, abs=1e-3)
    assert report.e_star == pytest.approx(delta.delta_ss_energy(ctx, 1.5), rel=1e-6)
    assert report.residual < 1e-8
    assert report.depth >= scan.DEFAULT_THRESHOLD
    assert report.bracket[0] < report.e_star < report.bracket[1]


def test_delta_ss_search_over_random_draws(rng):
    for _ in range(20):
        ctx = levy.LevyContext(alpha=float(rng.uniform(1.3, 2.0)), v=math.exp(rng.uniform(-12, -5)))
        rho = math.exp(rng.uniform(-2, 2))
        expected = delta.delta_ss_energy(ctx, rho)
        potential = transfer.ComplexDelta.absorbing(rho)
        reports = scan.find_ss(potential, ctx, (expected / 4, expected * 4), e_points=400)
        assert len(reports) == 1
        e_star = reports[0].e_star
        assert e_star == pytest.approx(expected, rel=1e-6)
        at = scan.residual(potential, ctx, e_star, scan.Kind.SS)
        assert at <= scan.residual(potential, ctx, e_star * (1 + 1e-6), scan.Kind.SS)
        assert at <= scan.residual(potential, ctx, e_star * (1 - 1e-6), scan.Kind.SS)


def _tune_height(ctx, barrier, kind, start):
    """Barrier with Im V adjusted so the kind's residual has a real zero; (barrier, energy)."""

    def func(energy, v2):
        tuned = transfer.ComplexBarrier(complex(barrier.height.real, v2), barrier.width)
        matrix = tuned.transfer_matrix(ctx, energy)
        return matrix.m22 if kind is scan.Kind.SS else transfer.cpa_numerator(matrix)

    root = refine.polish_root(func, start)
    assert root is not None
    energy, v2 = (float(x) for x in root)
    return transfer.ComplexBarrier(complex(barrier.height.real, v2), barrier.width), energy


@pytest.fixture(scope='module')
def exact_ss_barrier(ss_barrier, base_ctx):
    return _tune_height(base_ctx, ss_barrier, scan.Kind.SS, (270.11, ss_barrier.height.imag))


@pytest.fixture(scope='module')
def exact_cpa_barrier(cpa_barrier, base_ctx):
    return _tune_height(base_ctx, cpa_barrier, scan.Kind.CPA, (75.058, 5.014))


def test_barrier_ss_at_alpha_two(ss_barrier, base_ctx):
    reports = scan.find_ss(ss_barrier, base_ctx, (100.0, 500.0), threshold=1.5)
    assert len(reports) == 1
    assert reports[0].e_star == pytest.approx(270.108, abs=0.01)
    assert reports[0].depth == pytest.approx(1.886, abs=0.01)
    assert reports[0].certificate is None


def test_published_ss_barrier_is_a_rounded_exact_singularity(exact_ss_barrier, base_ctx):
    barrier, energy = exact_ss_barrier
    assert barrier.height.imag == pytest.approx(-9.9676, abs=1e-3)
    assert energy == pytest.approx(270.111, abs=0.01)
    assert abs(barrier.transfer_matrix(base_ctx, energy).m22) < 1e-8
    reports = scan.find_ss(barrier, base_ctx, (100.0, 500.0), threshold=3.0)
    assert len(reports) == 1
    assert reports[0].e_star == pytest.approx(energy, abs=1e-6)
    assert reports[0].residual < 1e-6


def test_barrier_ss_blue_shift(ss_barrier, base_ctx):
    energies = []
    for alpha in SHIFT_ALPHAS:
        reports = scan.find_ss(ss_barrier, base_ctx.with_alpha(alpha), (100.0, 800.0), threshold=0.0)
        energies.append(scan.deepest(reports).e_star)
    assert energies[0] == pytest.approx(270.11, abs=0.5)
    assert all(a < b for a, b in zip(energies, energies[1:]))


def test_cpa_at_alpha_two(cpa_barrier, base_ctx):
    reports = scan.find_cpa(cpa_barrier, base_ctx, (20.0, 300.0), threshold=1.5)
    best = scan.deepest(reports)
    assert 65 < best.e_star < 85
    matrix = cpa_barrier.transfer_matrix(base_ctx, best.e_star)
    assert best.certificate == pytest.approx(best.residual * abs(matrix.m22) ** 2, rel=1e-8)


def test_cpa_reports_carry_an_independent_certificate(exact_cpa_barrier, base_ctx):
    barrier, energy = exact_cpa_barrier
    assert barrier.height.imag == pytest.approx(5.014, abs=1e-3)
    assert abs(transfer.cpa_numerator(barrier.transfer_matrix(base_ctx, energy))) < 1e-8
    reports = scan.find_cpa(barrier, base_ctx, (60.0, 90.0), threshold=0.0)
    exact = [r for r in reports if r.residual < 1e-6]
    assert len(exact) == 1
    assert exact[0].e_star == pytest.approx(energy, abs=1e-6)
    for report in exact:
        assert report.certificate < 1e-4
        assert report.depth >= scan.DEFAULT_THRESHOLD


def test_cpa_blue_shift(cpa_barrier, base_ctx):
    energies = []
    for alpha in SHIFT_ALPHAS:
        reports = scan.find_cpa(cpa_barrier, base_ctx.with_alpha(alpha), (20.0, 300.0), threshold=0.0)
        energies.append(scan.deepest(reports).e_star)
    assert all(a < b for a, b in zip(energies, energies[1:]))


def test_free_potential_has_no_singularities(free_barrier, base_ctx):
    assert scan.find_ss(free_barrier, base_ctx, (10.0, 100.0), e_points=500) == []
    assert scan.find_cpa(free_barrier, base_ctx, (10.0, 100.0), e_points=500) == []


def test_report_json_dict(cpa_barrier, base_ctx):
    report = scan.deepest(scan.find_cpa(cpa_barrier, base_ctx, (20.0, 300.0), e_points=1000, threshold=0.0))
    data = report.to_json_dict()
    assert data['kind'] == 'CPA'
    assert data['certificate'] == report.certificate
    assert data['bracket'] == list(report.bracket)


def test_deepest_of_nothing():
    assert scan.deepest([]) is None


def test_kind_observables():
    assert scan.Kind.SS.observable is scan.Observable.M22
    assert scan.Kind.CPA.observable is scan.Observable.C


def test_free_alpha_profile_is_flat(free_barrier, base_ctx):
    profile = scan.alpha_profile(free_barrier, base_ctx, 50.0, (1.5, 2.0), alpha_points=101, workers=1)
    assert profile.alphas[0] == 2.0
    assert profile.alphas[-1] == 1.5
    np.testing.assert_allclose(profile.log10T, 0, atol=1e-12)


def test_alpha_profile_shows_sub_peaks(ss_barrier, base_ctx, workers):
    profile = scan.alpha_profile(ss_barrier, base_ctx, 280.0, (1.98, 2.0), workers=workers)
    assert len(profile.transmission_maxima) >= 2
    frame = profile.to_frame()
    assert list(frame.columns) == ['alpha', 'E', 'log10R', 'log10T', 'log10_abs_C']
    assert set(frame['E']) == {280.0}


def test_cpa_profile_minimum_moves_to_lower_alpha(cpa_barrier, base_ctx, workers):
    best = []
    for energy in (100.0, 200.0, 400.0):
        profile = scan.alpha_profile(cpa_barrier, base_ctx, energy, (1.8, 2.0), alpha_points=4000, workers=workers)
        best.append(profile.alphas[np.nanargmin(profile.log10C)])
    assert best[0] > best[1] > best[2]


@pytest.mark.parametrize(
    'alpha_range, points',
    [
        ((1.9, 1.9), 10),
        ((1.9, 2.0), 1),
        ((0.5, 2.0), 10),
        ((1.9, 2.1), 10),
    ],
)
def test_alpha_axis_validation(alpha_range, points):
    with pytest.raises(DomainError):
        scan.alpha_axis(alpha_range, points)
