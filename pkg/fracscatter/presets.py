#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""One-shot reproductions of the published figure data.

Each preset binds the figure's own parameters; grid extents the figures
do not state are chosen to contain every feature they show.
"""

import dataclasses
import types

from fracscatter.error import ConfigError

SS_BARRIER = {'potential': 'barrier', 'v1': 9.1675, 'v2': -10.0, 'width': 10.0, 'v': 1e-5}
CPA_BARRIER = {'potential': 'barrier', 'v1': 0.1, 'v2': 5.0, 'width': 10.0, 'v': 1e-5}
SHIFT_ALPHAS = (2.0, 1.99, 1.98, 1.95)
# Read as 1.9: the closed form gives the captions' middle energies there, not at 1.99.
DELTA_ALPHAS = (2.0, 1.9, 1.85)


@dataclasses.dataclass(frozen=True)
class FigurePreset:
    preset_id: str
    description: str
    values: types.MappingProxyType

    def bound(self):
        return dict(self.values, preset=self.preset_id)


def _preset(preset_id, description, **values):
    return FigurePreset(preset_id, description, types.MappingProxyType(values))


PRESETS = {
    p.preset_id: p
    for p in (
        _preset(
            'fig1',
            'delta SS energies, blue shift: -1.5i delta, v=1e-5',
            subcommand='delta-ss',
            potential='delta',
            rho=1.5,
            v=1e-5,
            alphas=DELTA_ALPHAS,
        ),
        _preset(
            'fig2',
            'delta SS energies, red shift: -1e-5 i delta, v=1e-5',
            subcommand='delta-ss',
            potential='delta',
            rho=1e-5,
            v=1e-5,
            alphas=DELTA_ALPHAS,
        ),
        _preset(
            'fig3',
            'barrier SS blue shift: V=9.1675-10i, b=10',
            subcommand='barrier-ss',
            alphas=SHIFT_ALPHAS,
            e_min=100.0,
            e_max=800.0,
            threshold=0.0,
            deepest=True,
            format='json',
            **SS_BARRIER,
        ),
        _preset(
            'fig4',
            'log10 R, T over (E, alpha) for the SS barrier, 1.98 <= alpha <= 2',
            subcommand='scan',
            e_min=100.0,
            e_max=500.0,
            alpha_min=1.98,
            alpha_max=2.0,
            **SS_BARRIER,
        ),
        _preset(
            'fig5',
            'close view of the first sub-peak above the alpha=2 SS',
            subcommand='scan',
            e_min=265.0,
            e_max=290.0,
            e_points=2000,
            alpha_min=1.996,
            alpha_max=2.0,
            **SS_BARRIER,
        ),
        _preset(
            'fig6',
            'sub-peaks with alpha at E=280 for the SS barrier',
            subcommand='profile',
            energy=280.0,
            alpha_min=1.98,
            alpha_max=2.0,
            alpha_points=4000,
            **SS_BARRIER,
        ),
        _preset(
            'fig7',
            'CPA blue shift: V=0.1+5i, b=10',
            subcommand='barrier-cpa',
            alphas=SHIFT_ALPHAS,
            e_min=20.0,
            e_max=300.0,
            threshold=0.0,
            deepest=True,
            format='json',
            **CPA_BARRIER,
        ),
        _preset(
            'fig8',
            'log10 |C| over (E, alpha) for the CPA barrier, 1.992 <= alpha <= 2',
            subcommand='scan',
            e_min=50.0,
            e_max=200.0,
            alpha_min=1.992,
            alpha_max=2.0,
            **CPA_BARRIER,
        ),
        _preset(
            'fig9',
            'CPA sub-peak tracks, 1.97 <= alpha <= 2: the 17 sub-peaks above E_CPA',
            subcommand='track',
            kind='CPA',
            e_min=60.0,
            e_max=157.0,
            alpha_min=1.97,
            alpha_max=2.0,
            **CPA_BARRIER,
        ),
        _preset(
            'fig10',
            'log10 |C| against alpha at fixed energies for the CPA barrier',
            subcommand='profile',
            energies=(50.0, 100.0, 200.0, 400.0, 600.0, 800.0, 1500.0, 2000.0),
            alpha_min=1.5,
            alpha_max=2.0,
            alpha_points=4000,
            **CPA_BARRIER,
        ),
    )
}


def get(preset_id):
    try:
        return PRESETS[preset_id]
    except KeyError:
        raise ConfigError(f'unknown preset {preset_id!r}, expected one of {", ".join(PRESETS)}') from None
