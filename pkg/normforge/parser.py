import json
import logging
import math
import tomllib
from dataclasses import dataclass, field, fields
from typing import Any, Optional

from .consts import DEFAULT_SEED, DEFAULT_TOLERANCE, ENCODING
from .seqcore import FiniteSequence, format_p, parse_p, parse_sequence

COMMANDS = ('rate', 'sandwich', 'characterize', 'schatten-check', 'rv-check')
KINDS = ('gaussian', 'identity', 'diagonal')


def parse_list(text: str | list, name: str, cast=float) -> list:
    "a comma separated string, or a TOML array"
    items = text if isinstance(text, list) else [s for s in text.split(',') if s.strip()]
    try:
        return [cast(v.strip() if isinstance(v, str) else v) for v in items]
    except (TypeError, ValueError):
        raise ValueError(f'{name}: cannot parse {text!r}')


@dataclass
class RunConfig:
    command: str
    x: Optional[FiniteSequence] = None
    input_path: Optional[str] = None
    p: Optional[float] = None
    n: list[int] = field(default_factory=lambda: [10, 100, 500])
    epsilon: float = 0.05
    t_grid: list[float] = field(default_factory=list)
    t_grid_size: int = 200
    seed: int = DEFAULT_SEED
    samples: int = 500
    dim_max: int = 6
    tolerance: float = DEFAULT_TOLERANCE
    norm: Optional[str] = None
    sizes: list[int] = field(default_factory=lambda: [2, 3, 4])
    p_list: list[float] = field(default_factory=lambda: [1.0, 2.0, math.inf])
    trials: int = 20
    n_max: int = 10
    kind: str = 'gaussian'
    output_format: Optional[str] = None
    out: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f'command must be one of {", ".join(COMMANDS)}, got {self.command!r}')
        if self.output_format not in (None, 'csv', 'json'):
            raise ValueError(f'format must be csv or json, got {self.output_format!r}')
        if any(n < 1 for n in self.n):
            raise ValueError(f'n: every entry must be >= 1, got {self.n}')
        if not self.epsilon > 0:
            raise ValueError(f'epsilon must be > 0, got {self.epsilon}')
        if self.t_grid_size < 1:
            raise ValueError(f't_grid_size must be >= 1, got {self.t_grid_size}')
        if self.samples < 1:
            raise ValueError(f'samples must be >= 1, got {self.samples}')
        if self.dim_max < 2:
            raise ValueError(f'dim_max must be >= 2, got {self.dim_max}')
        if not self.tolerance > 0:
            raise ValueError(f'tolerance must be > 0, got {self.tolerance}')
        if any(not 1 <= s <= 6 for s in self.sizes) or not self.sizes:
            raise ValueError(f'sizes: every entry must be in 1..6, got {self.sizes}')
        if self.trials < 1:
            raise ValueError(f'trials must be >= 1, got {self.trials}')
        if not 1 <= self.n_max <= 50:
            raise ValueError(f'n_max must be in 1..50, got {self.n_max}')
        if self.kind not in KINDS:
            raise ValueError(f'kind must be one of {", ".join(KINDS)}, got {self.kind!r}')
        if self.command in ('rate', 'sandwich'):
            self._resolve_x()
            if self.x is None or self.x.is_zero():
                raise ValueError('x: a nonzero sequence is required (--x or --input)')
        if self.command == 'sandwich' and (self.p is None or math.isinf(self.p)):
            raise ValueError(f'p: sandwich needs a finite p >= 1, got {self.p}')
        if self.command == 'rate' and not self.t_grid:
            raise ValueError('t_grid: at least one t is required')
        if self.command == 'characterize' and not self.norm:
            raise ValueError('norm: a selector such as lp:2 or kyfan:2 is required')

    def _resolve_x(self):
        if self.input_path is None:
            return
        if self.x is not None:
            logging.warning('both --x and --input given, using --x')
            return
        with open(self.input_path, encoding=ENCODING) as fp:
            self.x = FiniteSequence.from_json(json.load(fp))


_CASTS = {
    'x': lambda v: FiniteSequence.from_json(v) if isinstance(v, list) else parse_sequence(v),
    'p': parse_p,
    'n': lambda v: parse_list(v, 'n', int),
    't_grid': lambda v: parse_list(v, 't_grid'),
    'sizes': lambda v: parse_list(v, 'sizes', int),
    'p_list': lambda v: parse_list(v, 'p_list', parse_p),
    'epsilon': float,
    'tolerance': float,
}

# keys of the TOML file that differ from the field names
_ALIASES = {'format': 'output_format', 'input': 'input_path'}


def build_config(values: dict[str, Any]) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    kwargs = {}
    for key, value in values.items():
        if value is None:
            continue
        key = _ALIASES.get(key, key).replace('-', '_')
        if key not in known:
            raise ValueError(f'unknown parameter {key!r}')
        kwargs[key] = _CASTS[key](value) if key in _CASTS else value
    if 'command' not in kwargs:
        raise ValueError('command: missing')
    return RunConfig(**kwargs)


def load_config(path: str) -> dict[str, Any]:
    with open(path, 'rb') as fp:
        return tomllib.load(fp)


def gen_config(file: str = 'normforge.toml'):
    tmpl = '''\
# normforge run file; command-line flags override these values.

command = 'sandwich'

# the sequence x, inline; or point `input` at a JSON array file
x = [2, 1]
# input = 'x.json'

p = 2
n = [10, 100, 500]
epsilon = 0.05
t_grid_size = 200

# rate
# t_grid = [0.2, 0.5]

# characterize: lp:<p>, kyfan:<k>, schatten-diag:<p>
# norm = 'lp:2'
# samples = 500
# dim_max = 6
# tolerance = 1e-9

# schatten-check
# sizes = [2, 3, 4]
# p_list = ['1', '2', 'inf']
# trials = 20
# kind = 'gaussian'

# rv-check
# n_max = 10

seed = 42
format = 'csv'
# out = 'trace.csv'
'''
    with open(file, 'w', encoding=ENCODING) as fp:
        fp.write(tmpl)
    return file


def describe(config: RunConfig) -> str:
    p = '-' if config.p is None else format_p(config.p)
    return f'{config.command} p={p} seed={config.seed}'
