#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#


class FracScatterError(Exception):
    pass


class DomainError(FracScatterError, ValueError):
    pass


class BranchPointError(DomainError):
    pass


class ConfigError(FracScatterError):
    pass


class OutputError(FracScatterError):
    pass


class SpectralSingularPoint(FracScatterError):
    """m22 vanished exactly. Callers treat this as a located singularity."""

    @property
    def energy(self):
        return self.args[0]

    @property
    def alpha(self):
        return self.args[1]

    def __str__(self):
        return f'spectral-singular point: m22 = 0 at E={self.energy}, alpha={self.alpha}'
