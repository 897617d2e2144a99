"""
Run settings: command-line flags over a flat key = value config file over built-in defaults.
"""
import configparser
import os
from dataclasses import dataclass
from typing import Dict, List, Optional

from entities.landau import PhysParams
from utils.errors import ArgumentError, UsageError


COMMANDS = ('sweep', 'field', 'verify', 'wigner-dump')
QUANTITIES = ('purity', 'concurrence', 'density', 'wigner', 'purity-tabulated', 'concurrence-tabulated')
FORMATS = ('csv', 'json', 'ppm')
DIMENSIONLESS_KEYS = ('eps', 'kappa')
PHYSICAL_KEYS = ('m', 'eB', 'kz', 'ky')
THREADS_ENV = 'DWL_THREADS'


def parse_float_list(text) -> List[float]:
    if isinstance(text, (list, tuple)):
        return [float(value) for value in text]
    items = [item.strip() for item in str(text).split(',') if item.strip()]
    if not items:
        raise UsageError("list: expected at least one comma-separated number")
    try:
        return [float(item) for item in items]
    except ValueError as error:
        raise UsageError(f"list: could not parse {text!r} ({error})")


def parse_bool(text) -> bool:
    if isinstance(text, bool):
        return text
    lowered = str(text).strip().lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off'):
        return False
    raise UsageError(f"flag: expected a boolean, got {text!r}")


def parse_entry(text):
    """
    '4,4' -> (3, 3): the flag is 1-based, the result 0-based.
    """
    if isinstance(text, tuple):
        return text
    try:
        row, column = (int(part) for part in str(text).split(','))
    except ValueError:
        raise UsageError(f"entry: expected 'i,j' with 1 <= i, j <= 4, got {text!r}")
    if not (1 <= row <= 4 and 1 <= column <= 4):
        raise UsageError(f"entry: indices must lie in 1..4, got {text!r}")
    return row - 1, column - 1


def parse_probe(text):
    if isinstance(text, tuple):
        return text
    try:
        s, k = (float(part) for part in str(text).split(','))
    except ValueError:
        raise UsageError(f"probe: expected 's,k', got {text!r}")
    return s, k


def _parse_probes(value):
    if isinstance(value, str):
        value = [item for item in value.split(';') if item.strip()]
    return [parse_probe(item) for item in value]


CONVERTERS = {
    'n': int,
    'n_max': int,
    'r': int,
    'spin': str,
    'eps': parse_float_list,
    'kappa': parse_float_list,
    'm': float,
    'eB': float,
    'kz': float,
    'ky': float,
    'grid_points': int,
    'grid_pad': float,
    'with_quadrature': parse_bool,
    'quantity': str,
    'entry': parse_entry,
    'probe': _parse_probes,
    'format': str,
    'out': str,
    'tolerance_scale': float,
    'threads': int,
    'verbose': parse_bool,
}

DEFAULTS = {
    'n': 1,
    'n_max': 4,
    'r': 1,
    'spin': '+',
    'eps': [1.0],
    'kappa': [1.0],
    'm': None,
    'eB': None,
    'kz': None,
    'ky': None,
    'grid_points': 512,
    'grid_pad': 6.0,
    'with_quadrature': False,
    'quantity': 'purity',
    'entry': (3, 3),
    'probe': [],
    'format': None,
    'out': None,
    'tolerance_scale': 1.0,
    'threads': None,
    'verbose': False,
}


@dataclass
class RunConfig:
    command: str
    n: int
    n_max: int
    r: int
    spin: str
    eps: List[float]
    kappa: List[float]
    m: Optional[float]
    eB: Optional[float]
    kz: Optional[float]
    ky: Optional[float]
    grid_points: int
    grid_pad: float
    with_quadrature: bool
    quantity: str
    entry: tuple
    probe: list
    format: Optional[str]
    out: Optional[str]
    tolerance_scale: float
    threads: Optional[int]
    verbose: bool
    physical: bool = False

    def param_sets(self) -> List[PhysParams]:
        """
        One PhysParams per (eps, kappa) pair, or the single physical parameter set.
        """
        try:
            if self.physical:
                return [PhysParams(eB=self.eB, m=self.m, k_y=self.ky, k_z=self.kz)]
            return [PhysParams.from_dimensionless(eps, kappa) for eps in self.eps for kappa in self.kappa]
        except ArgumentError as error:
            raise UsageError(str(error))


def read_config_file(path: str) -> Dict[str, object]:
    """
    Read a flat `key = value` file; `#` starts a comment, keys may use dashes or underscores.
    """
    if not os.path.isfile(path):
        raise UsageError(f"config: file not found: {path}")

    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=('#',),
                                       comment_prefixes=('#',))
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_string("[dwl]\n" + handle.read(), source=path)
    except configparser.Error as error:
        raise UsageError(f"config: could not parse {path} ({error})")

    values = {}
    for key, raw in parser['dwl'].items():
        name = key.strip().replace('-', '_')
        if name not in CONVERTERS:
            raise UsageError(f"config: unknown key {key!r} in {path}")
        values[name] = _convert(name, raw)
    return values


def _convert(name, value):
    if value is None:
        return None
    try:
        return CONVERTERS[name](value)
    except UsageError:
        raise
    except (TypeError, ValueError) as error:
        raise UsageError(f"{name}: invalid value {value!r} ({error})")


def resolve_settings(command: str, flags: Dict[str, object], file_values: Dict[str, object] = None) -> RunConfig:
    """
    Merge flags > config file > defaults and validate the result.
    """
    if command not in COMMANDS:
        raise UsageError(f"command: expected one of {', '.join(COMMANDS)}, got {command!r}")
    file_values = file_values or {}

    explicit = {}
    for name in CONVERTERS:
        if flags.get(name) is not None:
            explicit[name] = _convert(name, flags[name])
        elif file_values.get(name) is not None:
            explicit[name] = file_values[name]

    dimensionless = [key for key in DIMENSIONLESS_KEYS if key in explicit]
    physical = [key for key in PHYSICAL_KEYS if key in explicit]
    if dimensionless and physical:
        raise UsageError(
            f"physics: give either (eps, kappa) or (m, eB, kz, ky), got {', '.join(dimensionless + physical)}"
        )

    merged = {name: explicit.get(name, DEFAULTS[name]) for name in CONVERTERS}
    config = RunConfig(command=command, physical=bool(physical), **merged)
    if config.physical:
        if config.eB is None:
            raise UsageError("eB: required when physical parameters are given")
        config.m = 1.0 if config.m is None else config.m
        config.kz = 0.0 if config.kz is None else config.kz
        config.ky = 0.0 if config.ky is None else config.ky

    _validate(config)
    return config


def _validate(config: RunConfig):
    if config.n < 1:
        raise UsageError(f"n: Landau index must be >= 1, got {config.n}")
    if config.n_max < 1:
        raise UsageError(f"n_max: must be >= 1, got {config.n_max}")
    if config.r not in (1, 2):
        raise UsageError(f"r: parity branch must be 1 or 2, got {config.r}")
    if config.spin not in ('+', '-'):
        raise UsageError(f"spin: must be '+' or '-', got {config.spin!r}")
    if any(eps <= 0 for eps in config.eps):
        raise UsageError(f"eps: values must be positive, got {config.eps}")
    if any(kappa < 0 for kappa in config.kappa):
        raise UsageError(f"kappa: values must be non-negative, got {config.kappa}")
    if config.grid_points < 16:
        raise UsageError(f"grid_points: need at least 16, got {config.grid_points}")
    if config.grid_pad <= 0:
        raise UsageError(f"grid_pad: must be positive, got {config.grid_pad}")
    if config.quantity not in QUANTITIES:
        raise UsageError(f"quantity: expected one of {', '.join(QUANTITIES)}, got {config.quantity!r}")
    if config.format is not None and config.format not in FORMATS:
        raise UsageError(f"format: expected one of {', '.join(FORMATS)}, got {config.format!r}")
    if config.tolerance_scale <= 0:
        raise UsageError(f"tolerance_scale: must be positive, got {config.tolerance_scale}")
    if config.threads is not None and config.threads < 0:
        raise UsageError(f"threads: must be >= 0, got {config.threads}")
    if config.physical and not (config.m > 0 and config.eB > 0):
        raise UsageError(f"m, eB: mass and magnetic coupling must be positive, got m={config.m}, eB={config.eB}")


def worker_count(threads: Optional[int] = None) -> int:
    """
    joblib n_jobs from --threads, else DWL_THREADS; 0 or unset means all cores (-1).
    """
    if threads is None:
        raw = os.environ.get(THREADS_ENV, '').strip()
        try:
            threads = int(raw) if raw else 0
        except ValueError:
            raise UsageError(f"{THREADS_ENV}: expected an integer, got {raw!r}")
    if threads < 0:
        raise UsageError(f"threads: must be >= 0, got {threads}")
    return -1 if threads == 0 else threads
