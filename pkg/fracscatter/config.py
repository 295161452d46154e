#
# Copyright fracscatter Authors
# SPDX-License-Identifier: GPL-2.0-or-later
#
#
"""Run configuration.

Values resolve as: dataclass defaults, then preset, then config file, then
command-line flags. A config file holds flat `key = value` (or `key: value`)
lines whose values are YAML scalars or flow sequences.
"""

import dataclasses
import logging
import math

import yaml

from fracscatter import levy
from fracscatter import scan
from fracscatter.error import ConfigError
from fracscatter.error import DomainError

LOGGER = logging.getLogger(__name__)

SUBCOMMANDS = ('delta-ss', 'barrier-ss', 'barrier-cpa', 'scan', 'track', 'profile', 'check')
POTENTIALS = ('barrier', 'delta')
FORMATS = ('csv', 'json')
KINDS = tuple(str(k) for k in scan.Kind)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    subcommand: str = 'scan'
    preset: str = ''
    # potential
    potential: str = 'barrier'
    rho: float = 1.5
    zeta_re: float = 0.0
    zeta_im: float = 0.0
    x0: float = 0.0
    v1: float = 9.1675
    v2: float = -10.0
    width: float = 10.0
    # Levy context
    alpha: float = 2.0
    alphas: tuple = ()
    v: float = levy.DEFAULT_VELOCITY
    hbar: float = levy.DEFAULT_HBAR
    m: float = levy.DEFAULT_MASS
    # grid
    e_min: float = 100.0
    e_max: float = 500.0
    e_points: int = scan.DEFAULT_E_POINTS
    e_scale: str = 'linear'
    alpha_min: float = 1.98
    alpha_max: float = 2.0
    alpha_points: int = scan.DEFAULT_ALPHA_POINTS
    energy: float = 280.0
    energies: tuple = ()
    # detection
    kind: str = 'SS'
    threshold: float = scan.DEFAULT_THRESHOLD
    tol: float = 1e-10
    window: int = 0
    deepest: bool = False
    # output
    output: str = '-'
    format: str = 'csv'
    dump_matrix: bool = False
    threads: int = 0
    seed: int = 1729
    draws_scale: float = 1.0

    def validate(self):
        _one_of('subcommand', self.subcommand, SUBCOMMANDS)
        _one_of('potential', self.potential, POTENTIALS)
        _one_of('format', self.format, FORMATS)
        _one_of('kind', self.kind, KINDS)
        _one_of('e_scale', self.e_scale, scan.E_SCALES)
        for alpha in (self.alpha, self.alpha_min, self.alpha_max) + self.alphas:
            levy.check_alpha(alpha)
        for name in ('v', 'hbar', 'm', 'rho', 'width', 'e_min', 'e_max', 'energy', 'tol', 'draws_scale'):
            _positive(name, getattr(self, name))
        for energy in self.energies:
            _positive('energies', energy)
        if not self.e_min < self.e_max:
            raise DomainError(f'e_min must be below e_max, got [{self.e_min}, {self.e_max}]')
        if not self.alpha_min < self.alpha_max:
            raise DomainError(f'alpha_min must be below alpha_max, got [{self.alpha_min}, {self.alpha_max}]')
        for name in ('e_points', 'alpha_points'):
            if getattr(self, name) < 2:
                raise DomainError(f'{name} must be at least 2, got {getattr(self, name)}')
        for name in ('window', 'threads'):
            if getattr(self, name) < 0:
                raise DomainError(f'{name} must not be negative, got {getattr(self, name)}')
        if not math.isfinite(self.threshold):
            raise DomainError(f'threshold must be finite, got {self.threshold}')
        return self

    @property
    def height(self):
        return complex(self.v1, self.v2)

    @property
    def zeta(self):
        if self.zeta_re == 0 and self.zeta_im == 0:
            return complex(0, -self.rho)
        return complex(self.zeta_re, self.zeta_im)

    @property
    def alpha_list(self):
        return self.alphas or (self.alpha,)

    @property
    def energy_list(self):
        return self.energies or (self.energy,)

    @property
    def e_range(self):
        return (self.e_min, self.e_max)

    @property
    def alpha_range(self):
        return (self.alpha_min, self.alpha_max)

    @property
    def workers(self):
        return self.threads or None

    def context(self, alpha=None):
        return levy.LevyContext(alpha=self.alpha if alpha is None else alpha, v=self.v, m=self.m, hbar=self.hbar)

    def grid(self):
        return scan.ScanGrid(
            self.e_min, self.e_max, self.e_points, self.e_scale, self.alpha_min, self.alpha_max, self.alpha_points
        )


def _one_of(name, value, allowed):
    if value not in allowed:
        raise DomainError(f'{name} must be one of {", ".join(allowed)}, got {value!r}')


def _positive(name, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f'{name} must be finite and positive, got {value}')


FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def coerce(key, value):
    """Convert a raw (YAML or command-line) value to the type of field `key`."""
    if key not in FIELDS:
        raise ConfigError(f'unknown config key {key!r}')
    kind = FIELDS[key].type
    try:
        if kind is bool:
            if isinstance(value, str):
                value = yaml.safe_load(value)
            if not isinstance(value, bool):
                raise ValueError(value)
            return value
        if kind is int:
            if isinstance(value, bool) or isinstance(value, float):
                raise ValueError(value)
            return int(value)
        if kind is float:
            if isinstance(value, bool):
                raise ValueError(value)
            return float(value)
        if kind is tuple:
            if isinstance(value, str):
                value = [v for v in value.replace(',', ' ').split()]
            if not isinstance(value, (list, tuple)):
                value = [value]
            return tuple(coerce_item(v) for v in value)
        return '' if value is None else str(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f'cannot read {value!r} as {kind.__name__} for {key!r}') from e


def coerce_item(value):
    if isinstance(value, bool):
        raise ValueError(value)
    return float(value)


def _split_line(line):
    separators = [i for i in (line.find('='), line.find(':')) if i > 0]
    if not separators:
        return None
    at = min(separators)
    return line[:at].strip(), line[at + 1 :].strip()


def parse_text(text, source='<config>'):
    """{key: coerced value} from flat `key = value` text."""
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        parts = _split_line(line)
        if parts is None:
            raise ConfigError(f'{source}:{number}: expected "key = value", got {raw!r}')
        key, value = parts
        key = key.replace('-', '_')
        try:
            loaded = yaml.safe_load(value) if value else None
        except yaml.YAMLError as e:
            raise ConfigError(f'{source}:{number}: cannot parse value {value!r}') from e
        values[key] = coerce(key, loaded)
    LOGGER.debug(f'read {len(values)} value(s) from {source}')
    return values


def read_file(path):
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f'cannot read config file {path}: {e}') from e
    return parse_text(text, source=path)


def _dump_value(value):
    if isinstance(value, tuple):
        value = list(value)
    text = yaml.safe_dump(value, default_flow_style=True, width=2**31).strip()
    if text.endswith('\n...'):
        text = text[: -len('\n...')]
    return text


def echo(config):
    """One `key = value` line per field; parse_text() reads it back unchanged."""
    return ''.join(f'{f.name} = {_dump_value(getattr(config, f.name))}\n' for f in dataclasses.fields(config))


def resolve(preset_values=None, file_values=None, flag_values=None):
    values = {}
    for layer in (preset_values, file_values, flag_values):
        for key, value in (layer or {}).items():
            values[key] = coerce(key, value)
    return RunConfig(**values).validate()
