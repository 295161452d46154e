#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

import pytest

from fracscatter import checks
from fracscatter import levy
from fracscatter import oracle
from fracscatter import transfer


@pytest.mark.parametrize('name', list(checks.CHECKS))
def test_randomised_invariant(name, rng, draws):
    result = checks.CHECKS[name](rng, draws(name))
    assert result.passed, str(result)


def test_run_checks_is_reproducible():
    first = checks.run_checks(scale=0.01)
    second = checks.run_checks(scale=0.01)
    assert [r.worst for r in first] == [r.worst for r in second]
    assert [r.name for r in first] == list(checks.CHECKS)


def test_run_checks_selects_by_name():
    results = checks.run_checks(scale=0.01, names=['oracle', 'mu-identity'])
    assert [r.name for r in results] == ['oracle', 'mu-identity']
    assert results[0].draws == 10


def test_check_result_verdict():
    assert checks.CheckResult('x', 1, 1e-12, 1e-10).passed
    failed = checks.CheckResult('x', 1, 1e-3, 1e-10)
    assert not failed.passed
    assert 'FAILED' in str(failed)


def test_draw_barrier_respects_cap(rng):
    for _ in range(100):
        ctx, height, width, energy = checks.draw_barrier(rng, im_cap=5.0)
        assert abs(levy.inside_wavenumber(ctx, energy, height).imag) * width <= 5.0


def test_oracle_at_ss_barrier(ss_barrier, base_ctx):
    closed = transfer.scattering_set(ss_barrier.transfer_matrix(base_ctx, 300.0))
    matched = oracle.boundary_matching_scattering(base_ctx, ss_barrier.height, ss_barrier.width, 300.0)
    assert matched.t_l == pytest.approx(closed.t_l, rel=1e-9)
    assert abs(matched.t_r) ** 2 == pytest.approx(closed.T, rel=1e-9)
    assert matched.R_l == pytest.approx(closed.R_l, rel=1e-9)
    assert matched.R_r == pytest.approx(closed.R_r, rel=1e-9)


def test_oracle_fractional_real_barrier():
    ctx = levy.LevyContext(alpha=1.6, v=1.0)
    closed = transfer.scattering_set(transfer.barrier_matrix(ctx, 3.0, 2.0, 5.0))
    matched = oracle.boundary_matching_scattering(ctx, 3.0, 2.0, 5.0)
    assert matched.T == pytest.approx(closed.T, rel=1e-10)
    assert matched.R_l == pytest.approx(closed.R_l, rel=1e-10)
