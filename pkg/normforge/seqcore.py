import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .consts import INF


@dataclass(frozen=True)
class FiniteSequence:
    """
    An element of c00: finitely many real coordinates followed by zeros.

    Trailing zeros are trimmed on construction, so two sequences that differ
    only in trailing zeros compare equal.
    """

    coords: tuple[float, ...] = ()

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        end = len(coords)
        while end > 0 and coords[end - 1] == 0:
            end -= 1
        object.__setattr__(self, 'coords', coords[:end])

    @classmethod
    def of(cls, *values: float) -> 'FiniteSequence':
        return cls(tuple(values))

    def __len__(self):
        return len(self.coords)

    def __iter__(self) -> Iterator[float]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> float:
        return self.coords[i] if i < len(self.coords) else 0.0

    def is_zero(self) -> bool:
        return not self.coords

    def to_json(self) -> list[float]:
        return list(self.coords)

    @classmethod
    def from_json(cls, data: list) -> 'FiniteSequence':
        if not isinstance(data, list):
            raise ValueError(f'sequence must be a JSON array, got {type(data).__name__}')
        return cls(tuple(float(v) for v in data))


def parse_p(value: str | float) -> float:
    "accepts a number or the string 'inf'"
    if isinstance(value, str):
        value = value.strip().lower()
        p = INF if value in ('inf', 'infinity') else float(value)
    else:
        p = float(value)
    if math.isnan(p) or p < 1:
        raise ValueError(f'p must be >= 1 or inf, got {value}')
    return p


def format_p(p: float) -> str | float:
    return 'inf' if math.isinf(p) else p


def check_p(p: float):
    if math.isnan(p) or p < 1:
        raise ValueError(f'p must be >= 1 or inf, got {p}')


def ones(n: int) -> FiniteSequence:
    return FiniteSequence((1.0,) * n)


def canonical(x: FiniteSequence) -> FiniteSequence:
    return FiniteSequence(tuple(sorted((abs(c) for c in x.coords), reverse=True)))


def outer(x: FiniteSequence, y: FiniteSequence) -> FiniteSequence:
    "row-major products x_i*y_j, zeros kept in place"
    return FiniteSequence(tuple(a * b for a in x.coords for b in y.coords))


def tensor(x: FiniteSequence, y: FiniteSequence) -> FiniteSequence:
    return canonical(outer(x, y))


def sign_symmetrize(x: FiniteSequence) -> FiniteSequence:
    return outer(x, FiniteSequence((1.0, -1.0)))


def same_up_to_permutation(x: FiniteSequence, y: FiniteSequence) -> bool:
    # zeros may sit anywhere inside a permuted sequence
    a = sorted(c for c in x.coords if c != 0)
    b = sorted(c for c in y.coords if c != 0)
    return a == b


def add(x: FiniteSequence, y: FiniteSequence) -> FiniteSequence:
    size = max(len(x), len(y))
    return FiniteSequence(tuple(x[i] + y[i] for i in range(size)))


def scale(x: FiniteSequence, c: float) -> FiniteSequence:
    return FiniteSequence(tuple(c * v for v in x.coords))


def lp_norm(x: FiniteSequence, p: float) -> float:
    check_p(p)
    values = [abs(c) for c in x.coords]
    if not values:
        return 0.0
    if math.isinf(p):
        return max(values)
    if p == 1:
        return math.fsum(values)
    # fsum is correctly rounded, hence independent of coordinate order
    try:
        total = math.fsum(v**p for v in values)
    except OverflowError:
        total = INF
    # trimmed, so the last coordinate is nonzero and top > 0
    if math.isinf(total) or total < 1e-290:
        top = max(values)
        return top * math.fsum((v / top) ** p for v in values) ** (1 / p)
    return total ** (1 / p)


def kyfan_norm(x: FiniteSequence, k: int) -> float:
    if k < 1:
        raise ValueError(f'k must be >= 1, got {k}')
    return math.fsum(canonical(x).coords[:k])


@dataclass(frozen=True)
class NormOracle:
    eval: Callable[[FiniteSequence], float]
    label: str

    def __call__(self, x: FiniteSequence) -> float:
        return self.eval(x)


def lp_oracle(p: float) -> NormOracle:
    check_p(p)
    return NormOracle(lambda x: lp_norm(x, p), f'lp:{format_p(p)}')


def kyfan_oracle(k: int) -> NormOracle:
    if k < 1:
        raise ValueError(f'k must be >= 1, got {k}')
    return NormOracle(lambda x: kyfan_norm(x, k), f'kyfan:{k}')


def scaled_oracle(oracle: NormOracle, c: float) -> NormOracle:
    return NormOracle(lambda x: c * oracle(x), f'{c}*{oracle.label}')


def parse_sequence(text: str) -> FiniteSequence:
    "comma separated, dot decimal separator"
    parts = [s for s in (part.strip() for part in text.split(',')) if s]
    try:
        return FiniteSequence(tuple(float(s) for s in parts))
    except ValueError:
        raise ValueError(f'x: cannot parse {text!r} as a comma separated list of numbers')

