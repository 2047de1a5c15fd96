import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .seqcore import FiniteSequence
from .tensor_stats import LogAtomMeasure, from_sequence

LOG_EXP_MAX = 700.0
BISECT_WIDTH = 1e-13


@dataclass(frozen=True)
class RateFunction:
    """
    Λ_x(λ) = ln Σ x_i^λ over the positive coordinates of x, stored as
    (ln x_i, multiplicity) pairs.
    """

    log_values: tuple[tuple[float, int], ...]
    k: int
    t_min: float
    t_max: float
    t_mean: float

    @classmethod
    def from_measure(cls, m: LogAtomMeasure) -> 'RateFunction':
        log_values = tuple(m.atoms)
        k = m.total_mass
        t_min, t_max = log_values[0][0], log_values[-1][0]
        # a single atom has its mean exactly, not up to rounding
        t_mean = math.fsum(c * logv for logv, c in log_values) / k
        return cls(
            log_values=log_values,
            k=k,
            t_min=t_min,
            t_max=t_max,
            t_mean=t_min if len(log_values) == 1 else min(max(t_mean, t_min), t_max),
        )

    @classmethod
    def from_sequence(cls, x: FiniteSequence) -> 'RateFunction':
        return cls.from_measure(from_sequence(x))

    @property
    def degenerate(self) -> bool:
        return len(self.log_values) == 1

    @property
    def spread(self) -> float:
        return self.t_max - self.t_min


def _weights(rf: RateFunction, lam: float) -> tuple[float, list[float]]:
    "max shift and the shifted weights m_i*exp(λ l_i - shift)"
    exponents = [lam * logv for logv, _ in rf.log_values]
    shift = max(exponents)
    return shift, [
        c * math.exp(e - shift) for (_, c), e in zip(rf.log_values, exponents)
    ]


def cgf(rf: RateFunction, lam: float) -> float:
    shift, weights = _weights(rf, lam)
    return shift + math.log(math.fsum(weights))


def cgf_prime(rf: RateFunction, lam: float) -> float:
    _, weights = _weights(rf, lam)
    mean = math.fsum(w * logv for w, (logv, _) in zip(weights, rf.log_values))
    mean /= math.fsum(weights)
    return min(max(mean, rf.t_min), rf.t_max)


def _solve_slope(rf: RateFunction, t: float) -> float:
    "λ with cgf_prime(λ) = t, for t strictly inside (t_min, t_max)"
    cap = LOG_EXP_MAX / rf.spread
    lo, hi = -1.0, 1.0
    while cgf_prime(rf, lo) > t and lo > -cap:
        lo = max(2 * lo, -cap)
    while cgf_prime(rf, hi) < t and hi < cap:
        hi = min(2 * hi, cap)
    logging.debug('conjugate t=%r bracket [%r, %r]', t, lo, hi)
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if cgf_prime(rf, mid) < t:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def conjugate(rf: RateFunction, t: float) -> float:
    """
    Λ*(t) = sup_λ λt - Λ(λ); returns math.inf outside [t_min, t_max].
    """
    log_k = math.log(rf.k)
    if rf.degenerate:
        return -log_k if t == rf.t_min else math.inf
    if t < rf.t_min or t > rf.t_max:
        return math.inf
    if t == rf.t_min:
        return -math.log(rf.log_values[0][1])
    if t == rf.t_max:
        return -math.log(rf.log_values[-1][1])
    if t == rf.t_mean:
        return -log_k
    lam = _solve_slope(rf, t)
    # λ = 0 is a candidate of the sup, so -ln k is a valid floor
    return max(lam * t - cgf(rf, lam), -log_k)


def cramer_limit(rf: RateFunction, t: float) -> float:
    "lim (1/n) ln N(x^{⊗n}, e^{tn}): ln k up to the geometric mean, -Λ* above it"
    if t <= rf.t_mean:
        return math.log(rf.k)
    if t > rf.t_max:
        return -math.inf
    return -conjugate(rf, t)


def lp_norm_via_cgf(rf: RateFunction, p: float) -> float:
    return math.exp(cgf(rf, p) / p)


def fenchel_moreau_check(
    rf: RateFunction, lam_grid: Sequence[float], t_grid: Sequence[float]
) -> float:
    if not lam_grid or not t_grid:
        raise ValueError('lam_grid and t_grid must be non-empty')
    conj = [(t, conjugate(rf, t)) for t in t_grid]
    conj = [(t, c) for t, c in conj if not math.isinf(c)]
    if not conj:
        raise ValueError('t_grid has no point inside [t_min, t_max]')
    deviation = 0.0
    for lam in lam_grid:
        best = max(lam * t - c for t, c in conj)
        deviation = max(deviation, abs(cgf(rf, lam) - best))
    return deviation


def grid_conjugate(rf: RateFunction, t: float, lam_grid: np.ndarray) -> float:
    "sup of λt - Λ(λ) over a dense λ grid, vectorised"
    logvs = np.array([logv for logv, _ in rf.log_values])
    counts = np.array([float(c) for _, c in rf.log_values])
    exponents = np.outer(lam_grid, logvs) + np.log(counts)
    shift = exponents.max(axis=1)
    values = shift + np.log(np.exp(exponents - shift[:, None]).sum(axis=1))
    return float(np.max(lam_grid * t - values))
