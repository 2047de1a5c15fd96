"""
Simple random variables with exact rational values and probabilities.

Only distributions are represented; independence is built into
`independent_product`.
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, NamedTuple, Optional

from .characterize import CharacterizationReport, CharacterizeConfig, characterize
from .consts import MAX_EMBED
from .seqcore import FiniteSequence, NormOracle, check_p

Rational = Fraction | int


@dataclass(frozen=True)
class SimpleRV:
    "atoms are (value, probability), values strictly increasing"

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        for (a, _), (b, _) in zip(self.atoms, self.atoms[1:]):
            if not a < b:
                raise ValueError('atom values must be strictly increasing')
        if any(not 0 < prob <= 1 for _, prob in self.atoms):
            raise ValueError('atom probabilities must lie in (0, 1]')
        if sum(prob for _, prob in self.atoms) != 1:
            raise ValueError('probabilities must sum to exactly 1')

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Rational, Rational]]) -> 'SimpleRV':
        "merge equal values and drop zero-probability atoms"
        merged: dict[Fraction, Fraction] = defaultdict(Fraction)
        for value, prob in pairs:
            merged[Fraction(value)] += Fraction(prob)
        return cls(tuple(sorted((v, p) for v, p in merged.items() if p != 0)))

    def map_values(self, fn: Callable[[Fraction], Fraction]) -> 'SimpleRV':
        return SimpleRV.from_pairs((fn(v), p) for v, p in self.atoms)

    def to_json(self) -> list[list[int]]:
        return [
            [v.numerator, v.denominator, p.numerator, p.denominator]
            for v, p in self.atoms
        ]

    @classmethod
    def from_json(cls, data: list) -> 'SimpleRV':
        return cls.from_pairs(
            (Fraction(vn, vd), Fraction(pn, pd)) for vn, vd, pn, pd in data
        )


def delta(c: Rational) -> SimpleRV:
    return SimpleRV.from_pairs([(c, 1)])


def bernoulli(n: int) -> SimpleRV:
    "P(B_n = 1) = 1/n, P(B_n = 0) = 1 - 1/n"
    if n < 1:
        raise ValueError(f'n must be >= 1, got {n}')
    return SimpleRV.from_pairs([(1, Fraction(1, n)), (0, 1 - Fraction(1, n))])


def abs_rv(x: SimpleRV) -> SimpleRV:
    return x.map_values(abs)


def same_distribution(x: SimpleRV, y: SimpleRV) -> bool:
    return x.atoms == y.atoms


def independent_product(x: SimpleRV, y: SimpleRV) -> SimpleRV:
    return SimpleRV.from_pairs(
        (vx * vy, px * py) for (vx, px), (vy, py) in product(x.atoms, y.atoms)
    )


def lp_norm_rv(x: SimpleRV, p: float) -> float:
    """
    (E|X|^p)^{1/p}, or max |X| for p = inf.

    E|X|^p is summed exactly over rationals and rounded once, so the result
    depends only on the distribution of |X| and is monotone in X.
    """
    check_p(p)
    top = max(abs(v) for v, _ in x.atoms)
    if math.isinf(p):
        return float(top)
    try:
        moment = sum(prob * Fraction(float(abs(v)) ** p) for v, prob in x.atoms)
    except OverflowError:
        moment = None
    if top == 0 or (moment is not None and moment >= 1e-290):
        return float(moment) ** (1 / p)
    # powers leave the double range: sum the ratios to max |X| instead
    moment = sum(prob * Fraction(float(abs(v) / top) ** p) for v, prob in x.atoms)
    return float(top) * float(moment) ** (1 / p)


class Embedding(NamedTuple):
    x: FiniteSequence
    n: int


def embed(x: SimpleRV) -> Embedding:
    "x has n coordinates, value v filling prob*n of them, values non-increasing"
    n = math.lcm(*(p.denominator for _, p in x.atoms))
    if n > MAX_EMBED:
        raise ValueError(f'embedding needs lcm {n} slots, above the limit {MAX_EMBED}')
    coords: list[float] = []
    for value, prob in sorted(x.atoms, reverse=True):
        coords.extend([float(value)] * int(prob * n))
    return Embedding(FiniteSequence(tuple(coords)), n)


def from_sequence(x: FiniteSequence, n: Optional[int] = None) -> SimpleRV:
    "the distribution (1/n)(δ_{x_1} + ... + δ_{x_n}), x padded with zeros to n"
    if n is None:
        n = max(len(x), 1)
    if n < len(x):
        raise ValueError(f'n must be >= len(x) = {len(x)}, got {n}')
    pairs = [(Fraction(c), Fraction(1, n)) for c in x.coords]
    pairs.append((Fraction(0), Fraction(n - len(x), n)))
    return SimpleRV.from_pairs(pairs)


def padding_identity_defect(x: SimpleRV, p: float, m: int) -> float:
    """
    Relative gap in ||X||·||B_m|| = ||X'||·||B_n||, where X' is the
    embedding of X padded with zeros to m >= n slots.
    """
    emb = embed(x)
    if m < emb.n:
        raise ValueError(f'm must be >= n = {emb.n}, got {m}')
    padded = from_sequence(emb.x, m)
    lhs = lp_norm_rv(x, p) * lp_norm_rv(bernoulli(m), p)
    rhs = lp_norm_rv(padded, p) * lp_norm_rv(bernoulli(emb.n), p)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs)) if lhs or rhs else 0.0


def induced_sequence_norm(
    rv_norm: Callable[[SimpleRV], float], label: str = 'rv'
) -> NormOracle:
    "|||x||| = ||X|| / ||B_n|| with X uniform over the n coordinates of x"

    def evaluate(x: FiniteSequence) -> float:
        if x.is_zero():
            return 0.0
        n = len(x)
        return rv_norm(from_sequence(x, n)) / rv_norm(bernoulli(n))

    return NormOracle(evaluate, f'induced:{label}')


def characterize_rv_norm(
    rv_norm: Callable[[SimpleRV], float],
    config: Optional[CharacterizeConfig] = None,
    label: str = 'rv',
) -> CharacterizationReport:
    return characterize(induced_sequence_norm(rv_norm, label), config)


def triple_norm(
    x: SimpleRV,
    sequence_norm: NormOracle,
    config: Optional[CharacterizeConfig] = None,
    rtol: float = 1e-12,
) -> float:
    """
    The random-variable norm induced by a sequence norm: ||X|| =
    |||x|||·||B_n|| with (x, n) = embed(X). The sequence norm has to pass
    `characterize`, which supplies p.
    """
    report = characterize(sequence_norm, config)
    if not report.consistent:
        raise ValueError(
            f'sequence norm {sequence_norm.label} is not an l_p norm: {report.verdict}'
        )
    p = report.p_estimate
    emb = embed(x)
    result = lp_norm_rv(x, p)
    for m in (emb.n, 2 * emb.n, 3 * emb.n):
        defect = padding_identity_defect(x, p, m)
        if defect > rtol:
            raise ArithmeticError(f'padding identity off by {defect!r} at m={m}')
    induced = sequence_norm(emb.x) * lp_norm_rv(bernoulli(emb.n), p)
    tolerance = (config or CharacterizeConfig()).tolerance
    if abs(induced - result) > tolerance * max(result, 1.0):
        raise ArithmeticError(
            f'|||x|||·||B_n|| = {induced!r} disagrees with ||X||_p = {result!r}'
        )
    return result
