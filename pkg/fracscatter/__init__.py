#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

VERSION = '0.3.0'
