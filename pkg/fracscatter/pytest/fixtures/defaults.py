#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

import pytest

from fracscatter import levy
from fracscatter import transfer


@pytest.fixture(scope='session')
def base_ctx():
    return levy.LevyContext(alpha=2.0, v=1e-5)


@pytest.fixture(scope='session')
def ss_barrier():
    return transfer.ComplexBarrier(height=complex(9.1675, -10), width=10.0)


@pytest.fixture(scope='session')
def cpa_barrier():
    return transfer.ComplexBarrier(height=complex(0.1, 5), width=10.0)
