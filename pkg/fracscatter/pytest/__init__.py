#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

import logging

import pytest


LOGGER = logging.getLogger(__name__)


def pytest_addoption(parser):
    parser.addoption(
        '--draws-scale',
        action='store',
        type=float,
        default=1.0,
        help='scale the number of random draws in property sweeps',
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_fixture_setup(fixturedef, request):
    LOGGER.debug(f'Creating fixture: {fixturedef}')
    yield
