# -*- coding: utf-8 -*-
#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#

from fracscatter.pytest.fixtures.defaults import cpa_barrier
from fracscatter.pytest.fixtures.defaults import base_ctx
from fracscatter.pytest.fixtures.defaults import ss_barrier

from fracscatter.pytest.fixtures.env import draws
from fracscatter.pytest.fixtures.env import draws_scale
from fracscatter.pytest.fixtures.env import rng
from fracscatter.pytest.fixtures.env import workers
