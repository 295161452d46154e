#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#

import argparse
import logging
import sys

import pandas as pd

from fracscatter import VERSION
from fracscatter import checks
from fracscatter import config
from fracscatter import delta
from fracscatter import emit
from fracscatter import presets
from fracscatter import scan
from fracscatter import tracking
from fracscatter import transfer
from fracscatter import utils
from fracscatter.error import ConfigError
from fracscatter.error import DomainError
from fracscatter.error import FracScatterError

LOGGER = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s,%(msecs)03d %(levelname)-7s [%(name)s] %(message)s (%(module)s:%(lineno)d)'
LOG_DATE_FORMAT = '%Y-%m-%d %H:%M:%S%z'

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# (flag, field, argparse kwargs)
FLAGS = (
    ('--potential', 'potential', {'choices': config.POTENTIALS}),
    ('--rho', 'rho', {'type': float}),
    ('--zeta-re', 'zeta_re', {'type': float}),
    ('--zeta-im', 'zeta_im', {'type': float}),
    ('--x0', 'x0', {'type': float}),
    ('--v1', 'v1', {'type': float, 'help': 'real part of the barrier height'}),
    ('--v2', 'v2', {'type': float, 'help': 'imaginary part of the barrier height'}),
    ('--width', 'width', {'type': float, 'help': 'barrier width b'}),
    ('--alpha', 'alpha', {'type': float}),
    ('--alphas', 'alphas', {'type': float, 'nargs': '+'}),
    ('--v', 'v', {'type': float, 'help': 'characteristic velocity'}),
    ('--hbar', 'hbar', {'type': float}),
    ('--m', 'm', {'type': float}),
    ('--e-min', 'e_min', {'type': float}),
    ('--e-max', 'e_max', {'type': float}),
    ('--e-points', 'e_points', {'type': int}),
    ('--e-scale', 'e_scale', {'choices': ('linear', 'logarithmic')}),
    ('--alpha-min', 'alpha_min', {'type': float}),
    ('--alpha-max', 'alpha_max', {'type': float}),
    ('--alpha-points', 'alpha_points', {'type': int}),
    ('--energy', 'energy', {'type': float}),
    ('--energies', 'energies', {'type': float, 'nargs': '+'}),
    ('--kind', 'kind', {'choices': config.KINDS}),
    ('--threshold', 'threshold', {'type': float, 'help': 'detection depth in decades'}),
    ('--tol', 'tol', {'type': float}),
    ('--window', 'window', {'type': int, 'help': 'continuation window in E-grid points (0: automatic)'}),
    ('--deepest', 'deepest', {'action': 'store_true', 'help': 'report only the deepest minimum per alpha'}),
    ('--output', 'output', {'help': 'output path, - for standard output'}),
    ('--format', 'format', {'choices': config.FORMATS}),
    ('--dump-matrix', 'dump_matrix', {'action': 'store_true'}),
    ('--threads', 'threads', {'type': int}),
    ('--seed', 'seed', {'type': int}),
    ('--draws-scale', 'draws_scale', {'type': float}),
)

HELP = {
    'delta-ss': 'closed-form SS energy of -i rho delta(x) and its shift class',
    'barrier-ss': 'locate spectral singularities of the complex barrier',
    'barrier-cpa': 'locate coherent perfect absorption of the complex barrier',
    'scan': 'log10 R, T, |m22|, |C| over an (E, alpha) grid',
    'track': 'follow alpha = 2 sub-peaks down in alpha',
    'profile': 'fixed-energy cut across alpha',
    'check': 'run the invariant suite',
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument('--config', help='flat key = value config file')
    common.add_argument('-v', '--verbose', action='count', help='debug logging')
    for flag, dest, kwargs in FLAGS:
        common.add_argument(flag, dest=dest, **kwargs)

    parser = argparse.ArgumentParser(
        prog='fracscatter',
        description='Fractional Schroedinger scattering off complex potentials',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
    subparsers = parser.add_subparsers(dest='subcommand', metavar='SUBCOMMAND')
    subparsers.required = True
    for name in config.SUBCOMMANDS:
        subparsers.add_parser(name, parents=[common], help=HELP[name])
    preset = subparsers.add_parser('preset', parents=[common], help='reproduce one figure')
    preset.add_argument('preset_id', choices=list(presets.PRESETS))
    return parser


def _parse(argv, config_file=None):
    args = vars(build_parser().parse_args(argv))
    verbose = args.pop('verbose', 0)
    config_path = args.pop('config', None) or config_file
    subcommand = args.pop('subcommand')
    preset_values = None
    if subcommand == 'preset':
        preset_values = presets.get(args.pop('preset_id')).bound()
    else:
        args['subcommand'] = subcommand
    file_values = config.read_file(config_path) if config_path else None
    return config.resolve(preset_values, file_values, args), verbose


def parse_config(argv, config_file=None):
    return _parse(argv, config_file)[0]


def potential_of(cfg):
    if cfg.potential == 'delta':
        return transfer.ComplexDelta(cfg.zeta, cfg.x0)
    return transfer.ComplexBarrier(cfg.height, cfg.width)


def run_delta_ss(cfg):
    satisfied, rho = delta.ss_phase_condition(cfg.zeta)
    rows = []
    for alpha in cfg.alpha_list:
        ctx = cfg.context(alpha)
        if satisfied:
            result = delta.delta_ss_result(ctx, rho)
            row = dict(result.to_json_dict(), phase_condition=True, e_complex_re=result.e_ss, e_complex_im=0.0)
            if cfg.dump_matrix:
                row['matrix'] = transfer.delta_matrix(ctx, cfg.zeta, result.e_ss).to_json_dict()
        else:
            energy = delta.complex_ss_energy(ctx, cfg.zeta)
            LOGGER.info(f'no real SS energy: Arg zeta != -pi/2, formal root at E={energy}')
            row = {
                'alpha': alpha,
                'rho': rho,
                'e_ss': None,
                'shift_class': 'none',
                'phase': None,
                'phase_condition': False,
                'e_complex_re': energy.real,
                'e_complex_im': energy.imag,
            }
        rows.append(row)
    columns = ['alpha', 'rho', 'e_ss', 'shift_class', 'phase_condition', 'e_complex_re', 'e_complex_im']
    emit.write(cfg.output, cfg.format, frame=pd.DataFrame(rows, columns=columns), data=rows)
    return EXIT_OK


def _run_find(cfg, finder):
    potential = potential_of(cfg)
    rows = []
    for alpha in cfg.alpha_list:
        ctx = cfg.context(alpha)
        reports = finder(
            potential,
            ctx,
            cfg.e_range,
            e_points=cfg.e_points,
            threshold=cfg.threshold,
            tol=cfg.tol,
            e_scale=cfg.e_scale,
        )
        if cfg.deepest and reports:
            reports = [scan.deepest(reports)]
        LOGGER.info(f'alpha={alpha}: {len(reports)} report(s)')
        for report in reports:
            row = report.to_json_dict()
            if cfg.dump_matrix:
                row['matrix'] = potential.transfer_matrix(ctx, report.e_star).to_json_dict()
            rows.append(row)
    flat = []
    for row in rows:
        lower, upper = row['bracket']
        flat.append(dict({k: v for k, v in row.items() if k not in ('bracket', 'matrix')}, e_lo=lower, e_hi=upper))
    columns = ['kind', 'alpha_star', 'e_star', 'residual', 'depth', 'e_lo', 'e_hi', 'certificate']
    frame = pd.DataFrame(flat, columns=columns)
    emit.write(cfg.output, cfg.format, frame=frame, data={'potential': potential.describe(), 'reports': rows})
    return EXIT_OK


def run_barrier_ss(cfg):
    return _run_find(cfg, scan.find_ss)


def run_barrier_cpa(cfg):
    return _run_find(cfg, scan.find_cpa)


def run_scan(cfg):
    potential = potential_of(cfg)
    field = scan.scan_fields(potential, cfg.context(), cfg.grid(), workers=cfg.workers)
    data = {
        'potential': potential.describe(),
        'alphas': field.alphas,
        'energies': field.energies,
        'fields': {str(o): field[o] for o in scan.Observable},
    }
    emit.write(cfg.output, cfg.format, frame=field.to_frame(), data=data)
    return EXIT_OK


def run_track(cfg):
    potential = potential_of(cfg)
    kind = scan.Kind(cfg.kind)
    tracks = tracking.track_subpeaks(
        potential,
        cfg.context(),
        cfg.grid(),
        kind,
        threshold=cfg.threshold,
        window=cfg.window or None,
        workers=cfg.workers,
    )
    LOGGER.info(
        f'{len(tracks)} {kind} sub-peak track(s) above E={tracking.main_energy(tracks)}, '
        f'{sum(t.developed for t in tracks)} developed'
    )
    frame = pd.DataFrame([row for t in tracks for row in t.rows()])
    data = {
        'potential': potential.describe(),
        'kind': str(kind),
        'main_energy': tracking.main_energy(tracks),
        'tracks': [t.to_json_dict() for t in tracks],
    }
    emit.write(cfg.output, cfg.format, frame=frame, data=data)
    return EXIT_OK


def run_profile(cfg):
    potential = potential_of(cfg)
    profiles = [
        scan.alpha_profile(potential, cfg.context(), energy, cfg.alpha_range, cfg.alpha_points, workers=cfg.workers)
        for energy in cfg.energy_list
    ]
    data = []
    for p in profiles:
        LOGGER.info(f'E={p.energy}: {len(p.transmission_maxima)} T maxima, {len(p.cpa_minima)} C minima')
        data.append(
            {
                'energy': p.energy,
                'transmission_maxima': len(p.transmission_maxima),
                'cpa_minima': len(p.cpa_minima),
                'alpha_at_min_C': float(p.alphas[p.log10C.argmin()]),
                'rows': p.to_frame().to_dict(orient='records'),
            }
        )
    frame = pd.concat([p.to_frame() for p in profiles], ignore_index=True)
    emit.write(cfg.output, cfg.format, frame=frame, data=data)
    return EXIT_OK


def run_check(cfg):
    results = checks.run_checks(seed=cfg.seed, scale=cfg.draws_scale)
    rows = [
        {'name': r.name, 'draws': r.draws, 'worst': r.worst, 'tolerance': r.tolerance, 'passed': r.passed}
        for r in results
    ]
    emit.write(cfg.output, cfg.format, frame=pd.DataFrame(rows), data=rows)
    failed = [r.name for r in results if not r.passed]
    if failed:
        LOGGER.error(f'invariant checks failed: {", ".join(failed)}')
        return EXIT_FAILURE
    return EXIT_OK


RUNNERS = {
    'delta-ss': run_delta_ss,
    'barrier-ss': run_barrier_ss,
    'barrier-cpa': run_barrier_cpa,
    'scan': run_scan,
    'track': run_track,
    'profile': run_profile,
    'check': run_check,
}


def run(cfg):
    try:
        with utils.Stopwatch() as timer:
            code = RUNNERS[cfg.subcommand](cfg)
    except FracScatterError as e:
        LOGGER.error(f'{cfg.subcommand} failed: {e}')
        return EXIT_FAILURE
    LOGGER.info(f'{cfg.preset or cfg.subcommand} finished in {timer.running_time:.2f}s')
    return code


def setup_logging(verbose):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=LOG_FORMAT,
        datefmt=LOG_DATE_FORMAT,
        stream=sys.stderr,
    )


def main(argv=None):
    try:
        cfg, verbose = _parse(sys.argv[1:] if argv is None else argv)
    except (ConfigError, DomainError) as e:
        sys.stderr.write(f'fracscatter: error: {e}\n')
        return EXIT_USAGE
    setup_logging(verbose)
    sys.stderr.write(config.echo(cfg))
    return run(cfg)


if __name__ == '__main__':
    sys.exit(main())
