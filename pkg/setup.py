#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
# fracscatter

from setuptools import find_packages
from setuptools import setup

from fracscatter import VERSION

setup(
    description="Fractional Schroedinger scattering off non-Hermitian potentials",
    license="GNU GPLv2+",
    name="fracscatter",
    packages=find_packages(include=["fracscatter", "fracscatter.*"]),
    platforms=["Linux"],
    python_requires=">=3.8",
    install_requires=["PyYAML", "numpy", "scipy", "pandas"],
    entry_points={"console_scripts": ["fracscatter = fracscatter.cli:main"]},
    version=VERSION,
)
