"""Run configuration files.

A configuration is a key = value file with the sections [flow], [geometry], [time],
[thresholds] and [output]; every key is optional. The effective configuration is
echoed into each output directory so that a run can be repeated from its outputs.
"""

import configparser
import dataclasses
import math
import pathlib
from dataclasses import dataclass
from typing import Optional, Union

from .chart.field import GridSpec
from .errors import ConfigError, RGFlowError
from .flows.kinds import Flow, FlowKind
from .integrate.state import Controls

RUN_PRESETS = ('flat', 'flat-perturbed', 'warped', 'constant-curvature')
"""tuple: accepted values of geometry.preset."""

DEFAULT_N = {1: 128, 3: 16}
"""dict: default points per axis by grid dimension."""

SECTIONS = {
    'flow': ('kind', 'a', 'full_contraction'),
    'geometry': ('preset', 'dim', 'n', 'amplitude', 'k0', 'c0', 'background'),
    'time': ('dt0', 't_end', 'cfl', 'refresh'),
    'thresholds': ('eps_par', 'm_max', 'eps_g', 'dt_min'),
    'output': ('directory', 'snapshot_every', 'seed'),
}
"""dict: the keys each section accepts."""

_POSITIVE = ('amplitude', 'c0', 'dt0', 'cfl', 'eps_par', 'm_max', 'eps_g', 'dt_min')


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs, with defaults for every key."""

    # [flow]
    kind: str = 'rg2'
    a: float = 0.0
    full_contraction: bool = False
    # [geometry]
    preset: str = 'flat-perturbed'
    dim: int = 1
    n: Optional[int] = None
    amplitude: float = 1e-3
    k0: float = -1.0
    c0: float = 1.0
    background: str = 'initial'
    # [time]
    dt0: float = 1e-3
    t_end: float = 0.5
    cfl: float = 0.2
    refresh: int = 10
    # [thresholds]
    eps_par: float = 1e-8
    m_max: float = 1e6
    eps_g: float = 1e-8
    dt_min: float = 1e-12
    # [output]
    directory: str = 'rgflow-out'
    snapshot_every: int = 0
    seed: int = 0

    def __post_init__(self):
        for name in _POSITIVE:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f'[{_section_of(name)}] {name} must be positive, got {value}.')
        if not math.isfinite(self.t_end) or self.t_end < 0:
            raise ConfigError(f'[time] t_end must be non-negative, got {self.t_end}.')
        if self.refresh < 1:
            raise ConfigError(f'[time] refresh must be at least 1, got {self.refresh}.')
        if self.snapshot_every < 0:
            raise ConfigError(f'[output] snapshot_every must be non-negative, got {self.snapshot_every}.')
        if self.seed < 0:
            raise ConfigError(f'[output] seed must be non-negative, got {self.seed}.')
        if self.preset not in RUN_PRESETS:
            raise ConfigError(f'[geometry] preset must be one of {RUN_PRESETS}, got {self.preset!r}.')
        if self.background not in ('initial', 'flat'):
            raise ConfigError(f"[geometry] background must be 'initial' or 'flat', got {self.background!r}.")
        try:
            self.flow
        except ConfigError:
            raise
        except RGFlowError as err:
            raise ConfigError(f'[flow] {err}') from err
        try:
            self.grid
        except ValueError as err:
            raise ConfigError(f'[geometry] {err}') from err

    @property
    def flow(self) -> Flow:
        try:
            kind = FlowKind(self.kind)
        except ValueError:
            raise ConfigError(f'[flow] kind must be one of {[k.value for k in FlowKind]}, got {self.kind!r}.')
        return Flow(kind, self.a)

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.dim, self.n if self.n is not None else DEFAULT_N.get(self.dim, 0))

    def controls(self, force: bool = False) -> Controls:
        """Run controls of this configuration."""
        return Controls(
            cfl=self.cfl,
            eps_par=self.eps_par,
            m_max=self.m_max,
            eps_g=self.eps_g,
            dt_min=self.dt_min,
            refresh=self.refresh,
            force=force,
            verify=self.full_contraction,
            snapshot_every=self.snapshot_every,
        )

    def replace(self, **changes) -> 'RunConfig':
        """Copy with some keys changed; None values are ignored."""
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_parser(self) -> configparser.ConfigParser:
        parser = configparser.ConfigParser(interpolation=None)
        for section, keys in SECTIONS.items():
            parser[section] = {}
            for key in keys:
                value = getattr(self, key)
                if value is None:
                    continue
                parser[section][key] = _format(value)
        return parser

    def write(self, file_name: Union[str, pathlib.Path]) -> None:
        """Echo the effective configuration as a config file."""
        with open(file_name, 'w') as f:
            self.to_parser().write(f)


def _format(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _section_of(key: str) -> str:
    for section, keys in SECTIONS.items():
        if key in keys:
            return section
    return '?'


def _convert(section: str, key: str, raw: str, parser: configparser.ConfigParser):
    target = RunConfig.__dataclass_fields__[key].type
    try:
        if target in (float,):
            return float(raw)
        if target in (int, Optional[int]):
            return int(raw)
        if target is bool:
            return parser[section].getboolean(key)
    except ValueError as err:
        raise ConfigError(f'[{section}] {key}: cannot parse {raw!r}: {err}') from err
    return raw


def parse_config(text: str) -> RunConfig:
    """Parse the text of a configuration file.

    Raises:
        ConfigError: on syntax errors, unknown sections or keys, and invalid values,
            naming the section and key.
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as err:
        raise ConfigError(f'Cannot parse configuration: {err}') from err
    if parser.defaults():
        raise ConfigError(f'[DEFAULT] keys are not supported: {sorted(parser.defaults())}.')
    values = {}
    for section in parser.sections():
        if section not in SECTIONS:
            raise ConfigError(f'Unknown section [{section}].')
        for key, raw in parser.items(section):
            if key not in SECTIONS[section]:
                raise ConfigError(f'[{section}] unknown key {key!r}.')
            values[key] = _convert(section, key, raw.strip(), parser)
    return RunConfig(**values)


def load_config(file_name: Union[str, pathlib.Path, None]) -> RunConfig:
    """Load a configuration file, the defaults if `file_name` is None."""
    if file_name is None:
        return RunConfig()
    try:
        with open(file_name, 'r') as f:
            text = f.read()
    except OSError as err:
        raise ConfigError(f'Cannot read configuration {file_name}: {err}') from err
    return parse_config(text)
