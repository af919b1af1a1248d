"""Logging setup and run configuration for market reconstruction."""
import logging
import os
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import coloredlogs
import toml

from market_recon.exceptions import ConfigException

coloredlogs.install()
formatter = logging.Formatter(
    "%(asctime)s - %(name)s - %(levelname)s - %(message)s")
PACKAGE_LOGGER = "market_recon"
_file_handler: Optional[logging.FileHandler] = None

DEFAULTS_FILE = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), "defaults.toml")
OUTPUT_DIR_ENV = "MARKET_RECON_OUT"
COMMANDS = ("stats", "encode", "reconstruct", "montecarlo", "ksweep", "randomwalk")
DATA_COMMANDS = ("stats", "encode", "reconstruct", "montecarlo", "ksweep")
PRICE_BASES = ("raw", "detrended", "rescaled")


def get_custom_logger(name):
    return logging.getLogger(name)


def attach_log_file(path):
    """Copy every package log record to ``path``; returns the handler."""
    global _file_handler
    detach_log_file()
    parent = os.path.dirname(path)
    os.makedirs(parent if parent else ".", exist_ok=True)
    _file_handler = logging.FileHandler(path, "w", encoding="utf-8")
    _file_handler.setLevel(logging.DEBUG)
    _file_handler.setFormatter(formatter)
    logging.getLogger(PACKAGE_LOGGER).addHandler(_file_handler)
    return _file_handler


def detach_log_file():
    global _file_handler
    if _file_handler is None:
        return
    logging.getLogger(PACKAGE_LOGGER).removeHandler(_file_handler)
    _file_handler.close()
    _file_handler = None


def set_log_level(level):
    """Reinstall the console handler at the requested level."""
    coloredlogs.install(level=level)


def load_defaults(file=DEFAULTS_FILE) -> Dict[str, Any]:
    """Read the packaged defaults, one table per section."""
    return toml.load(file)


def parse_int_range(text: str) -> Tuple[int, int]:
    """
    Parse an inclusive range written as ``a..b``
    :param text: the flag value
    """
    parts = str(text).split("..")
    if len(parts) != 2:
        raise ConfigException(text, f"range '{text}' must look like 'a..b'")
    try:
        low, high = int(parts[0]), int(parts[1])
    except ValueError as e:
        raise ConfigException(text, f"range '{text}' must hold integers") from e
    if low > high:
        raise ConfigException(text, f"range '{text}' is empty")
    return low, high


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters for one CLI invocation."""
    command: str
    input_path: Optional[str] = None
    n_symbols: int = 3
    order_k: int = 1
    sims: int = 500
    seed: int = 0
    degree: int = 3
    window: int = 10
    k_range: Tuple[int, int] = (2, 8)
    fit_range: Tuple[int, int] = (1, 100)
    output_dir: str = "output"
    n_max: int = 1000
    q_max: int = 8
    t_max: int = 100
    basis: str = "raw"
    reverse: bool = False
    runs: int = 3
    workers: int = 1
    start_price: float = 100.0
    paths: int = 10000
    steps: int = 100
    walk_lengths: Tuple[int, ...] = (50, 100, 1000, 10000)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigException("command", f"unknown command '{self.command}'")
        if self.command in DATA_COMMANDS and not self.input_path:
            raise ConfigException("input", f"--input is required for '{self.command}'")
        if self.n_symbols < 3 or self.n_symbols % 2 == 0:
            raise ConfigException("symbols", "--symbols must be odd and at least 3")
        if self.order_k < 1:
            raise ConfigException("order", "--order must be at least 1")
        if self.k_range[0] < 1:
            raise ConfigException("k-range", "--k-range must start at 1 or above")
        if self.fit_range[0] < 1:
            raise ConfigException("fit-range", "--fit-range must start at 1 or above")
        if self.basis not in PRICE_BASES:
            raise ConfigException("basis", f"--basis must be one of {PRICE_BASES}")
        for name in ("sims", "window", "n_max", "q_max", "runs", "workers", "paths", "steps"):
            if getattr(self, name) < 1:
                raise ConfigException(name, f"--{name.replace('_', '-')} must be positive")
        if self.degree < 0 or self.t_max < 0:
            raise ConfigException("degree", "--degree and --t-max must not be negative")
        if any(steps < 1 for steps in self.walk_lengths):
            raise ConfigException("walk-lengths", "walk lengths must be positive")

    @classmethod
    def from_sources(cls, command, flags: Dict[str, Any], defaults: Dict[str, Any] = None,
                     environ=None):
        """
        Build a config from packaged defaults, overridden by flags that were set,
        with the output directory finally overridden by the environment.
        """
        defaults = load_defaults() if defaults is None else defaults
        environ = os.environ if environ is None else environ
        values = {}
        for section in defaults.values():
            values.update(section)
        values.update({k: v for k, v in flags.items() if v is not None})
        for key in ("k_range", "fit_range"):
            if isinstance(values.get(key), str):
                values[key] = parse_int_range(values[key])
            elif values.get(key) is not None:
                values[key] = tuple(values[key])
        if values.get("walk_lengths") is not None:
            values["walk_lengths"] = tuple(values["walk_lengths"])
        if environ.get(OUTPUT_DIR_ENV):
            values["output_dir"] = environ[OUTPUT_DIR_ENV]
        known = set(cls.__dataclass_fields__)
        return cls(command=command, **{k: v for k, v in values.items() if k in known})
