"""Experiment configuration files.

Flat ``key = value`` lines, ``#`` comments, and two optional function
sections using the piecewise grammar of :func:`bdop.funcmodel.parse_piecewise`::

    experiment = bv-limit
    x = 0.5
    n_values = 128, 512, 2048
    seed = 7

    [f]
    piece(0, 0.5): 0
    piece(0.5, 1): 1

    [w]
    piece(0, 0.5): 1
    piece(0.5, 1): 2

List values accept commas and/or whitespace.  ``grid = lo, hi, points``.
"""

import re
from dataclasses import dataclass, field

from .errors import ConfigError
from .funcmodel import PiecewiseFunction, parse_piecewise

__all__ = ["EXPERIMENTS", "ExperimentConfig", "parse_config", "load_config"]

EXPERIMENTS = ("kernel-normality", "bv-limit", "lupas-limit", "beta-pdf", "nu-table")

_SECTIONS = ("f", "w")
_KEY_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_SECTION_RE = re.compile(r"^\[\s*([A-Za-z_]+)\s*\]$")


@dataclass
class ExperimentConfig:
    experiment: str
    x: float = 0.5
    n_values: list = None
    f: PiecewiseFunction = None
    w: PiecewiseFunction = None
    grid: tuple = None
    seed: int = 0
    output_path: str = None
    mc_samples: int = 0
    tolerance: float = None
    gamma: list = field(default_factory=lambda: [0.5])
    scales: list = field(default_factory=lambda: [1e2, 1e3, 1e4])
    r_values: list = field(default_factory=lambda: [0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 10.0, 100.0])

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if not 0 < self.x < 1:
            raise ConfigError("x must lie in (0, 1)")
        if self.n_values is not None:
            if not self.n_values or any(int(n) != n or n < 1 for n in self.n_values):
                raise ConfigError("n_values must be positive integers")
            if list(self.n_values) != sorted(self.n_values):
                raise ConfigError("n_values must be sorted ascending")
            self.n_values = [int(n) for n in self.n_values]
        if self.grid is not None:
            lo, hi, pts = self.grid
            if int(pts) != pts or pts < 2 or not hi > lo:
                raise ConfigError("grid needs lo < hi and at least 2 points")
            self.grid = (float(lo), float(hi), int(pts))
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.mc_samples < 0:
            raise ConfigError("mc_samples must be >= 0")


def _floats(text, line):
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"expected numbers, got {text!r}", line) from None


def _int(text, line):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"expected an integer, got {text!r}", line) from None
    if value != int(value):
        raise ConfigError(f"expected an integer, got {text!r}", line)
    return int(value)


def _scalar(values, key, line):
    if len(values) != 1:
        raise ConfigError(f"{key} takes a single value", line)
    return values[0]


def parse_config(text, experiment=None):
    """Parse configuration ``text``; ``experiment`` (e.g. from the command line)
    must agree with an ``experiment =`` key when both are present."""
    kwargs = {}
    sections = {name: [] for name in _SECTIONS}
    current = None
    seen = {}
    for line, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        m = _SECTION_RE.match(body)
        if m:
            name = m.group(1)
            if name not in _SECTIONS:
                raise ConfigError(f"unknown section [{name}]", line)
            if sections[name]:
                raise ConfigError(f"section [{name}] given twice", line)
            current = name
            continue
        if current is not None:
            sections[current].append((line, body))
            continue
        m = _KEY_RE.match(body)
        if not m:
            raise ConfigError(f"expected 'key = value', got {body!r}", line)
        key, value = m.group(1), m.group(2).strip()
        if key in seen:
            raise ConfigError(f"duplicate key {key!r} (first on line {seen[key]})", line)
        seen[key] = line
        if key == "experiment":
            if value not in EXPERIMENTS:
                raise ConfigError(f"unknown experiment {value!r}", line)
            kwargs[key] = value
        elif key == "output_path":
            kwargs[key] = value
        elif key in ("x", "tolerance"):
            kwargs[key] = _scalar(_floats(value, line), key, line)
        elif key in ("seed", "mc_samples"):
            kwargs[key] = _int(value, line)
        elif key == "n_values":
            vals = _floats(value, line)
            if any(v != int(v) for v in vals):
                raise ConfigError("n_values must be integers", line)
            kwargs[key] = [int(v) for v in vals]
        elif key == "grid":
            vals = _floats(value, line)
            if len(vals) != 3:
                raise ConfigError("grid = lo, hi, points", line)
            kwargs[key] = tuple(vals)
        elif key in ("gamma", "scales", "r_values"):
            kwargs[key] = _floats(value, line)
        else:
            raise ConfigError(f"unknown key {key!r}", line)
    if experiment is not None:
        if kwargs.get("experiment", experiment) != experiment:
            raise ConfigError(
                f"config is for {kwargs['experiment']!r}, not {experiment!r}", seen["experiment"]
            )
        kwargs["experiment"] = experiment
    if "experiment" not in kwargs:
        raise ConfigError("no experiment given")
    for name in _SECTIONS:
        if sections[name]:
            kwargs[name] = parse_piecewise(sections[name])
    try:
        return ExperimentConfig(**kwargs)
    except ConfigError as exc:
        # validation messages start with the offending key
        key = str(exc).split()[0]
        if exc.line is None and key in seen:
            raise ConfigError(str(exc), seen[key]) from None
        raise


def load_config(path, experiment=None):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), experiment)
