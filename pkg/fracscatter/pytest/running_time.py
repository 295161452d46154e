#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

import datetime

import logging

LOGGER = logging.getLogger('')


RUNNING_TIMES = {}


def pytest_runtest_logstart(nodeid, location):
    RUNNING_TIMES[location] = datetime.datetime.now()
    LOGGER.debug(f'Running test: {nodeid}')


def pytest_runtest_logfinish(nodeid, location):
    then = RUNNING_TIMES.pop(location)
    delta = (datetime.datetime.now() - then).total_seconds()
    LOGGER.debug(f'Finished test: {nodeid} ({delta:.2f}s)')
