#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

import math

import numpy as np
import pytest

from fracscatter import delta
from fracscatter import levy
from fracscatter import transfer
from fracscatter.error import DomainError

ALPHA_GRID = np.linspace(1.02, 2.0, 50)


def _energy(alpha, rho, v=1e-5, m=1.0, hbar=1.0):
    return delta.delta_ss_energy(levy.LevyContext(alpha=alpha, v=v, m=m, hbar=hbar), rho)


@pytest.mark.parametrize(
    'alpha, rho, expected, rel',
    [
        (2.0, 1.5, 1.125, 1e-12),
        (1.99, 1.5, 1.2625, 1e-3),
        (1.9, 1.5, 3.995, 5e-4),
        (1.85, 1.5, 8.409, 5e-4),
        (2.0, 1e-5, 5e-11, 1e-12),
        (1.9, 1e-5, 4.72e-11, 5e-3),
        (1.85, 1e-5, 4.56e-11, 5e-3),
    ],
)
def test_delta_ss_energy(alpha, rho, expected, rel):
    assert _energy(alpha, rho) == pytest.approx(expected, rel=rel)


def test_delta_ss_energy_reduces_to_standard_value(rng):
    for _ in range(100):
        rho = math.exp(rng.uniform(-5, 3))
        m = math.exp(rng.uniform(-2, 2))
        hbar = math.exp(rng.uniform(-2, 2))
        got = _energy(2.0, rho, v=math.exp(rng.uniform(-10, 0)), m=m, hbar=hbar)
        assert got == pytest.approx(m * rho**2 / (2 * hbar**2), rel=1e-10)


@pytest.mark.parametrize('rho', [0.0, -1.0, float('inf'), float('nan')])
def test_delta_ss_energy_rejects_rho(rho):
    with pytest.raises(DomainError):
        _energy(2.0, rho)


def test_delta_ss_energy_overflow_is_a_domain_error():
    with pytest.raises(DomainError, match='overflows'):
        _energy(1.001, 10.0)


def test_delta_ss_energy_zeroes_m22(rng):
    for _ in range(50):
        ctx = levy.LevyContext(alpha=float(rng.uniform(1.2, 2.0)), v=math.exp(rng.uniform(-12, -1)))
        rho = math.exp(rng.uniform(-3, 2))
        if delta.classify_shift(rho, ctx.v) != delta.ShiftClass.BlueShift:
            continue
        energy = delta.delta_ss_energy(ctx, rho)
        assert abs(transfer.delta_matrix(ctx, complex(0, -rho), energy).m22) < 1e-10


def test_ss_ratio(base_ctx):
    assert delta.ss_ratio(base_ctx, 1.85, 2.0, 1.5) == pytest.approx(7.475, rel=1e-3)
    assert delta.ss_ratio(base_ctx, 1.85, 2.0, 1e-5) == pytest.approx(0.912, rel=1e-3)
    assert delta.ss_ratio(base_ctx, 1.9, 1.9, 1.5) == 1.0


def test_ss_ratio_equals_energy_quotient(rng):
    for _ in range(100):
        a1, a2 = rng.uniform(1.1, 2.0, 2)
        rho = math.exp(rng.uniform(-8, 2))
        ctx = levy.LevyContext(alpha=2.0, v=math.exp(rng.uniform(-10, -1)), m=math.exp(rng.uniform(-2, 2)))
        quotient = delta.delta_ss_energy(ctx.with_alpha(a1), rho) / delta.delta_ss_energy(ctx.with_alpha(a2), rho)
        assert delta.ss_ratio(ctx, a1, a2, rho) == pytest.approx(quotient, rel=1e-10)


def test_ss_ratio_rejects_alpha_one(base_ctx):
    with pytest.raises(DomainError):
        delta.ss_ratio(base_ctx, 1.0, 2.0, 1.5)


@pytest.mark.parametrize(
    'rho, v, expected',
    [
        (1.5, 1e-5, delta.ShiftClass.BlueShift),
        (1e-5, 1e-5, delta.ShiftClass.RedShift),
        (2e-5, 1e-5, delta.ShiftClass.Bounded),
        (1.5e-5, 1e-5, delta.ShiftClass.Indeterminate),
    ],
)
def test_classify_shift(rho, v, expected):
    assert delta.classify_shift(rho, v) == expected


def test_shift_class_str():
    assert str(delta.ShiftClass.BlueShift) == 'blue-shift'
    assert str(delta.ShiftClass.RedShift) == 'red-shift'


def _alpha_sweep(rho, v):
    return np.array([_energy(alpha, rho, v=v) for alpha in ALPHA_GRID])


def test_blue_shift_energy_falls_with_alpha(rng):
    for _ in range(20):
        v = math.exp(rng.uniform(-10, -2))
        x = rng.uniform(0.05, 0.95)
        energies = _alpha_sweep(2 * v / x, v)
        assert np.all(np.diff(energies) < 0)


def test_red_shift_energy_rises_with_alpha(rng):
    for _ in range(20):
        v = math.exp(rng.uniform(-10, -2))
        x = rng.uniform(1.5, 20.0)
        energies = _alpha_sweep(2 * v / x, v)
        assert np.all(np.diff(energies) > 0)


def test_bounded_energy_stays_in_band(rng):
    for _ in range(20):
        v = math.exp(rng.uniform(-10, -2))
        energies = _alpha_sweep(2 * v, v)
        assert np.all(energies >= energies[-1] * (1 - 1e-12))
        assert np.all(energies < energies[-1] * math.e / 2)


def test_ss_phase_condition():
    assert delta.ss_phase_condition(-1.5j) == (True, 1.5)
    assert delta.ss_phase_condition(1.5j) == (False, 1.5)
    assert delta.ss_phase_condition(1.5) == (False, 1.5)
    assert delta.ss_phase_condition(0j) == (False, 0.0)


def test_complex_ss_energy_on_the_absorbing_axis():
    ctx = levy.LevyContext(alpha=1.85, v=1e-5)
    energy = delta.complex_ss_energy(ctx, -1.5j)
    assert energy.real == pytest.approx(delta.delta_ss_energy(ctx, 1.5), rel=1e-12)
    assert energy.imag == pytest.approx(0, abs=1e-12)


def test_complex_ss_energy_off_axis_is_complex():
    ctx = levy.LevyContext(alpha=1.85, v=1e-5)
    energy = delta.complex_ss_energy(ctx, 1.5)
    assert abs(energy.imag) > 1e-3 * abs(energy)
    assert abs(energy) == pytest.approx(delta.delta_ss_energy(ctx, 1.5), rel=1e-12)


def test_delta_ss_result(base_ctx):
    result = delta.delta_ss_result(base_ctx.with_alpha(1.85), 1.5)
    assert result.shift_class == delta.ShiftClass.BlueShift
    assert result.zeta == pytest.approx(-1.5j)
    assert result.to_json_dict() == {
        'alpha': 1.85,
        'rho': 1.5,
        'e_ss': result.e_ss,
        'shift_class': 'blue-shift',
        'phase': -math.pi / 2,
    }
