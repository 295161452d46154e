#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

import os

import numpy as np
import pytest

from fracscatter import checks
from fracscatter import utils


@pytest.fixture(scope='session')
def draws_scale(request):
    scale = request.config.getoption('--draws-scale')
    if scale <= 0:
        raise RuntimeError(f'--draws-scale must be positive, got {scale}')
    return scale


@pytest.fixture(scope='session')
def draws(draws_scale):
    def count(name):
        return checks.scaled_draws(name, draws_scale)

    return count


@pytest.fixture
def rng():
    return np.random.default_rng(checks.DEFAULT_SEED)


@pytest.fixture(scope='session')
def workers():
    # honour an explicit cap, otherwise exercise more than one thread
    if utils.THREADS_ENV in os.environ:
        return utils.worker_count()
    return 4
