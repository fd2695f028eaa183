"""
Run configuration for the command line.

A RunConfig is built from parsed arguments, validated before any work is
done, and written as config.json next to every output so a run can be
repeated exactly.
"""

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Optional

from errors import ConfigError
from metric import WeightVector, parse_norm
from weighting import Kappa

COMMANDS = ('evaluate', 'weights', 'boundaries', 'generate')
WEIGHT_MODE_CHOICES = ('both', 'proposed', 'uniform')
GENERATORS = ('two-class', 'gene-like')
CONFIG_FILENAME = 'config.json'


def parse_int_list(text, name):
    """'1,3,5' -> (1, 3, 5)"""
    if isinstance(text, (list, tuple)):
        return tuple(int(v) for v in text)
    try:
        values = tuple(int(part) for part in str(text).split(',') if part.strip())
    except ValueError:
        raise ConfigError(f"{name} must be a comma-separated list of integers (got {text!r})") from None
    if not values:
        raise ConfigError(f"{name} must not be empty")
    return values


def parse_float_list(text, name):
    """'1.5,0.5' -> (1.5, 0.5)"""
    try:
        return tuple(float(part) for part in str(text).split(',') if part.strip())
    except ValueError:
        raise ConfigError(f"{name} must be a comma-separated list of numbers (got {text!r})") from None


def parse_weight_pairs(text):
    """'1,1;1.5,0.5' -> ((1.0, 1.0), (1.5, 0.5))"""
    pairs = tuple(parse_float_list(chunk, 'weights') for chunk in str(text).split(';') if chunk.strip())
    if not pairs:
        raise ConfigError("weights must list at least one pair")
    return pairs


@dataclass
class RunConfig:
    """Fully resolved settings of one command-line run."""

    command: str
    data: Optional[str] = None
    builtin: Optional[str] = None
    label_col: str = '-1'
    has_header: bool = True
    k_values: tuple = (1, 3, 5)
    fold_counts: tuple = (3, 5, 10)
    p: Optional[str] = None
    norms: Optional[tuple] = None
    weights: Optional[tuple] = None
    kappa: float = 0.0
    weight_mode: str = 'both'
    seed: int = 42
    standardize: bool = False
    pooled: bool = True
    strict: bool = False
    out: str = 'results'
    radius: float = 1.0
    resolution: int = 360
    field: bool = False
    fig4: bool = False
    center: tuple = (0.0, 0.0)
    query: tuple = (0.0, 0.0)
    generator: str = 'two-class'
    n_per_class: int = 100
    x_spread: float = 4.0
    y_spread: float = 1.0
    separation: float = 8.0
    n_samples: int = 60
    n_dims: int = 500
    n_informative: int = 20
    shift: float = 1.0

    @classmethod
    def from_namespace(cls, args):
        """Build from an argparse namespace; attributes the parser lacks keep their defaults."""
        values = {}
        for f in fields(cls):
            if hasattr(args, f.name) and getattr(args, f.name) is not None:
                values[f.name] = getattr(args, f.name)
        if 'k_values' in values:
            values['k_values'] = parse_int_list(values['k_values'], '--k')
        if 'fold_counts' in values:
            values['fold_counts'] = parse_int_list(values['fold_counts'], '--folds')
        if 'norms' in values and isinstance(values['norms'], str):
            values['norms'] = tuple(part.strip() for part in values['norms'].split(',') if part.strip())
        if 'weights' in values and isinstance(values['weights'], str):
            values['weights'] = parse_weight_pairs(values['weights'])
        for key in ('center', 'query'):
            if key in values and isinstance(values[key], str):
                values[key] = parse_float_list(values[key], '--' + key)
        return cls(**values)

    def validate(self):
        """Raise ConfigError on the first invalid value."""
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        self.norm()
        for norm in self.norms or ():
            parse_norm(norm)
        Kappa(self.kappa)
        if any(k < 1 for k in self.k_values):
            raise ConfigError(f"k values must be positive (got {self.k_values})")
        if any(f < 2 for f in self.fold_counts):
            raise ConfigError(f"fold counts must be >= 2 (got {self.fold_counts})")
        if self.weight_mode not in WEIGHT_MODE_CHOICES:
            raise ConfigError(f"weight mode must be one of {WEIGHT_MODE_CHOICES}")
        if self.generator not in GENERATORS:
            raise ConfigError(f"generator must be one of {GENERATORS}")
        for pair in self.weights or ():
            if len(pair) != 2:
                raise ConfigError(f"boundary weights must be pairs (got {pair})")
            WeightVector(pair)
        for key in ('center', 'query'):
            if len(getattr(self, key)) != 2:
                raise ConfigError(f"--{key} must be a 2-D point (got {getattr(self, key)})")
        if not self.radius > 0:
            raise ConfigError(f"--radius must be positive (got {self.radius})")
        if self.resolution < 8:
            raise ConfigError(f"--resolution must be >= 8 (got {self.resolution})")
        if self.command in ('evaluate', 'weights') and not (self.data or self.builtin):
            raise ConfigError(f"{self.command} needs --data or --builtin")
        if self.data and self.builtin:
            raise ConfigError("--data and --builtin are mutually exclusive")
        return self

    def norm(self):
        return parse_norm(2.0 if self.p is None else self.p)

    def methods(self):
        return ('uniform', 'proposed') if self.weight_mode == 'both' else (self.weight_mode,)

    def to_dict(self):
        return asdict(self)

    def write(self, directory):
        """Write config.json into directory and return its path."""
        path = Path(directory) / CONFIG_FILENAME
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + '\n', encoding='utf-8')
        return path

    @classmethod
    def read(cls, path):
        values = json.loads(Path(path).read_text(encoding='utf-8'))
        for key in ('k_values', 'fold_counts', 'center', 'query'):
            if key in values:
                values[key] = tuple(values[key])
        if values.get('norms') is not None:
            values['norms'] = tuple(values['norms'])
        if values.get('weights') is not None:
            values['weights'] = tuple(tuple(pair) for pair in values['weights'])
        return cls(**values)
