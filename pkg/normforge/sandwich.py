"""
Finite-n lower and staircase upper bounds for ||x||_p built from the exact
counts N(x^{⊗n}, e^{tn}).
"""

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np

from .rate_function import RateFunction
from .seqcore import FiniteSequence, lp_norm
from .tensor_stats import LogAtomMeasure, count_geq, from_sequence, log_count, power


@dataclass(frozen=True)
class StaircaseGrid:
    thresholds: tuple[float, ...]
    epsilon: float

    @property
    def d(self) -> int:
        return len(self.thresholds) - 1


def _check_p(p: float):
    if math.isinf(p) or math.isnan(p) or p < 1:
        raise ValueError(f'p must be finite and >= 1, got {p}')


def build_grid(x: FiniteSequence, epsilon: float) -> StaircaseGrid:
    if not epsilon > 0:
        raise ValueError(f'epsilon must be > 0, got {epsilon}')
    rf = RateFunction.from_sequence(x)
    # t_0 is the log of the smallest nonzero coordinate
    t0, t1, td = rf.t_min, rf.t_mean, rf.t_max
    if rf.degenerate or td <= t1:
        return StaircaseGrid((t0, td), epsilon)
    intervals = math.ceil((td - t1) / epsilon)
    step = (td - t1) / intervals
    upper = [t1 + i * step for i in range(intervals)] + [td]
    return StaircaseGrid((t0, *upper), epsilon)


def _bound_term(t: float, count: int, n: int, p: float) -> float:
    "exp(t) * count^{1/(np)}, zero when nothing is counted"
    if count == 0:
        return 0.0
    return math.exp(t + log_count(count) / (n * p))


def lower_bound(
    x: FiniteSequence,
    p: float,
    t: float,
    n: int,
    measure: Optional[LogAtomMeasure] = None,
) -> float:
    _check_p(p)
    if measure is None:
        measure = power(from_sequence(x), n)
    return _bound_term(t, count_geq(measure, t * n), n, p)


def lower_grid(x: FiniteSequence, size: int) -> np.ndarray:
    if size < 1:
        raise ValueError(f't_grid_size must be >= 1, got {size}')
    rf = RateFunction.from_sequence(x)
    return np.linspace(rf.t_mean, rf.t_max, size)


def best_lower_bound(
    x: FiniteSequence,
    p: float,
    n: int,
    t_grid_size: int,
    measure: Optional[LogAtomMeasure] = None,
) -> float:
    _check_p(p)
    if measure is None:
        measure = power(from_sequence(x), n)
    return max(
        lower_bound(x, p, float(t), n, measure) for t in lower_grid(x, t_grid_size)
    )


def upper_bound(
    x: FiniteSequence,
    p: float,
    grid: StaircaseGrid,
    n: int,
    measure: Optional[LogAtomMeasure] = None,
) -> float:
    _check_p(p)
    if measure is None:
        measure = power(from_sequence(x), n)
    ts = grid.thresholds
    best = max(
        _bound_term(ts[i], count_geq(measure, ts[i - 1] * n), n, p)
        for i in range(1, len(ts))
    )
    return math.exp(math.log(grid.d) / n) * best


def geometric_floor(x: FiniteSequence, p: float) -> float:
    "exp(t_1) * k^{1/p}; never above ||x||_p by the AM-GM inequality"
    _check_p(p)
    rf = RateFunction.from_sequence(x)
    return math.exp(rf.t_mean + math.log(rf.k) / p)


@dataclass(frozen=True)
class TraceRow:
    n: int
    epsilon: float
    best_lower: float
    upper: float
    lp_reference: float

    @property
    def ratio(self) -> float:
        return self.upper / self.best_lower if self.best_lower > 0 else math.inf

    @property
    def sandwiched(self) -> bool:
        # bounds and reference are computed along different float paths
        slack = 1e-12 * self.lp_reference
        return self.best_lower <= self.lp_reference + slack and (
            self.lp_reference <= self.upper + slack
        )


def convergence_trace(
    x: FiniteSequence,
    p: float,
    epsilon: float,
    n_list: Iterable[int],
    t_grid_size: int,
) -> Iterator[TraceRow]:
    _check_p(p)
    grid = build_grid(x, epsilon)
    base = from_sequence(x)
    reference = lp_norm(x, p)
    for n in n_list:
        measure = power(base, n)
        yield TraceRow(
            n=n,
            epsilon=epsilon,
            best_lower=best_lower_bound(x, p, n, t_grid_size, measure),
            upper=upper_bound(x, p, grid, n, measure),
            lp_reference=reference,
        )
