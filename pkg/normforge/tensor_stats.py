"""
Exact coordinate statistics of tensor powers.

The coordinates of x^{⊗n} are all n-fold products of coordinates of x, so
their logarithms form the n-fold additive self-convolution of the measure
sum_i δ_{ln x_i}. Counts are Python ints and never overflow.
"""

import bisect
import logging
import math
import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .consts import COUNT_SLACK, MAX_ATOMS, MAX_ATOMS_ENV, MERGE_RTOL
from .seqcore import FiniteSequence, canonical

LN2 = math.log(2)


@dataclass(frozen=True)
class LogAtomMeasure:
    atoms: tuple[tuple[float, int], ...]

    def __post_init__(self):
        for (a, _), (b, _) in zip(self.atoms, self.atoms[1:]):
            if not a < b:
                raise ValueError('atoms must be strictly increasing in logv')
        if any(count < 1 for _, count in self.atoms):
            raise ValueError('atom counts must be >= 1')

    def __len__(self):
        return len(self.atoms)

    def __iter__(self) -> Iterator[tuple[float, int]]:
        return iter(self.atoms)

    @cached_property
    def logvs(self) -> list[float]:
        return [logv for logv, _ in self.atoms]

    @cached_property
    def tail_mass(self) -> list[int]:
        "tail_mass[i] = sum of counts of atoms i, i+1, ..."
        tails = [0] * (len(self.atoms) + 1)
        for i in range(len(self.atoms) - 1, -1, -1):
            tails[i] = tails[i + 1] + self.atoms[i][1]
        return tails

    @property
    def total_mass(self) -> int:
        return self.tail_mass[0]

    def to_json(self) -> list[list]:
        return [[logv, str(count)] for logv, count in self.atoms]

    @classmethod
    def from_json(cls, data: list) -> 'LogAtomMeasure':
        return cls(tuple((float(logv), int(count)) for logv, count in data))


def _merge(pairs: Iterable[tuple[float, int]]) -> LogAtomMeasure:
    "sort by logv and merge atoms closer than MERGE_RTOL*max(1, |logv|)"
    merged: list[list] = []
    for logv, count in sorted(pairs):
        if merged:
            anchor = merged[-1][0]
            if logv - anchor < MERGE_RTOL * max(1.0, abs(anchor)):
                merged[-1][1] += count
                continue
        merged.append([logv, count])
    return LogAtomMeasure(tuple((logv, count) for logv, count in merged))


def from_sequence(x: FiniteSequence) -> LogAtomMeasure:
    values = canonical(x).coords
    if not values:
        raise ValueError('x must not be the zero sequence')
    multiplicities = Counter(values)
    return _merge((math.log(v), m) for v, m in multiplicities.items())


def convolve(a: LogAtomMeasure, b: LogAtomMeasure) -> LogAtomMeasure:
    return _merge(
        (la + lb, ca * cb) for la, ca in a.atoms for lb, cb in b.atoms
    )


def max_atoms() -> int:
    value = os.environ.get(MAX_ATOMS_ENV)
    if not value:
        return MAX_ATOMS
    try:
        return int(value)
    except ValueError:
        raise ValueError(f'{MAX_ATOMS_ENV} must be an integer, got {value!r}')


def projected_atoms(k: int, n: int) -> int:
    "number of compositions of n into k parts, an upper bound on the atom count"
    return math.comb(n + k - 1, k - 1)


def _compositions(
    n: int, logvs: list[float], counts: list[int]
) -> Iterator[tuple[float, int]]:
    """
    Yield (logv, count) for every way of choosing j_1 + ... + j_k = n.

    count = n!/(j_1!...j_k!) * prod m_i^{j_i}, logv = sum j_i * l_i.
    """
    k = len(logvs)
    js = [0] * k

    def walk(i: int, remaining: int, weight: int):
        if i == k - 1:
            js[i] = remaining
            w = weight * counts[i] ** remaining
            yield math.fsum(j * l for j, l in zip(js, logvs)), w
            return
        for j in range(remaining, -1, -1):
            js[i] = j
            yield from walk(
                i + 1, remaining - j, weight * math.comb(remaining, j) * counts[i] ** j
            )

    yield from walk(0, n, 1)


def power(m: LogAtomMeasure, n: int) -> LogAtomMeasure:
    if n < 1:
        raise ValueError(f'n must be >= 1, got {n}')
    if n == 1:
        return m
    bound = max_atoms()
    projected = projected_atoms(len(m), n)
    if projected > bound:
        raise ValueError(
            f'power would create up to {projected} atoms, above the bound {bound} '
            f'(set {MAX_ATOMS_ENV} to raise it)'
        )
    logvs = [logv for logv, _ in m.atoms]
    counts = [count for _, count in m.atoms]
    result = _merge(_compositions(n, logvs, counts))
    logging.debug('power n=%d: %d compositions, %d atoms', n, projected, len(result))
    return result


def count_geq(m: LogAtomMeasure, threshold_log: float) -> int:
    slack = COUNT_SLACK * max(1.0, abs(threshold_log))
    i = bisect.bisect_left(m.logvs, threshold_log - slack)
    return m.tail_mass[i]


def log_count(count: int) -> float:
    "natural log of a positive big integer from its bit length and top 64 bits"
    if count < 1:
        raise ValueError(f'count must be >= 1, got {count}')
    shift = max(count.bit_length() - 64, 0)
    return math.log(count >> shift) + shift * LN2


def empirical_rate(x: FiniteSequence, t: float, n: int) -> float:
    count = count_geq(power(from_sequence(x), n), t * n)
    if count == 0:
        return -math.inf
    return log_count(count) / n
