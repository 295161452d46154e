#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
import pytest
pytest.register_assert_rewrite('fracscatter')

from fracscatter.pytest import pytest_addoption


from fracscatter.pytest import pytest_fixture_setup

from fracscatter.pytest.running_time import pytest_runtest_logfinish
from fracscatter.pytest.running_time import pytest_runtest_logstart
