"""
Decide whether a symmetric norm oracle is an l_p norm.

The checks run in a fixed order: norm axioms (with unconditionality),
exponent extraction from ||1^n||, agreement with l_p, multiplicativity.
The first failure becomes the verdict together with a witness pair that
reproduces the defect when the oracle is evaluated again.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .consts import (
    ALPHA_ZERO_TOL,
    DEFAULT_SEED,
    DEFAULT_TOLERANCE,
    POWER_LAW_N_MAX,
    POWER_LAW_RTOL,
    SNAP,
    Verdict,
)
from .seqcore import (
    FiniteSequence,
    NormOracle,
    add,
    format_p,
    lp_norm,
    ones,
    scale,
    sign_symmetrize,
    tensor,
)

_LN2 = math.log(2)
_FLIP = FiniteSequence((1.0, -1.0))

Witness = tuple[FiniteSequence, FiniteSequence]


@dataclass
class CharacterizeConfig:
    seed: int = DEFAULT_SEED
    samples: int = 500
    dim_max: int = 6
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f'samples must be >= 1, got {self.samples}')
        if self.dim_max < 2:
            raise ValueError(f'dim_max must be >= 2, got {self.dim_max}')
        if not self.tolerance > 0:
            raise ValueError(f'tolerance must be > 0, got {self.tolerance}')


@dataclass
class CharacterizationReport:
    verdict: Verdict
    p_estimate: Optional[float]
    max_defect: float
    witness: Optional[Witness]
    samples_tested: int
    seed: int
    label: str = ''
    check: Optional[str] = None

    @property
    def consistent(self) -> bool:
        return self.verdict is Verdict.CONSISTENT_LP

    def to_json(self) -> dict:
        return {
            'verdict': str(self.verdict),
            'p_estimate': None if self.p_estimate is None else format_p(self.p_estimate),
            'max_defect': self.max_defect,
            'witness': None if self.witness is None else [w.to_json() for w in self.witness],
            'samples_tested': self.samples_tested,
            'seed': self.seed,
            'label': self.label,
            'check': self.check,
        }


class Violation(Exception):
    def __init__(self, verdict: Verdict, check: str, witness: Witness, defect: float):
        super().__init__(f'{verdict}: {check} defect {defect!r}')
        self.verdict = verdict
        self.check = check
        self.witness = witness
        self.defect = defect


def _relative(gap: float, base: float) -> float:
    return abs(gap) / base if base > 0 else abs(gap)


def multiplicativity_defect(
    oracle: NormOracle, x: FiniteSequence, y: FiniteSequence
) -> float:
    nx, ny = oracle(x), oracle(y)
    if not (nx > 0 and ny > 0):
        raise ValueError(f'multiplicativity needs nonzero norms, got {nx!r}, {ny!r}')
    return abs(oracle(tensor(x, y)) - nx * ny) / (nx * ny)


def _alpha(oracle: NormOracle) -> float:
    return math.log(oracle(ones(2))) / _LN2


def _p_from_alpha(alpha: float) -> float:
    return math.inf if alpha <= ALPHA_ZERO_TOL else 1 / alpha


def _power_law_defect(oracle: NormOracle, n: int, alpha: float) -> float:
    expected = n**alpha
    return abs(oracle(ones(n)) - expected) / expected


def _axiom_defect(
    oracle: NormOracle, check: str, x: FiniteSequence, y: FiniteSequence
) -> float:
    match check:
        case 'zero':
            return abs(oracle(FiniteSequence()))
        case 'definite':
            return 1.0 if oracle(x) <= 0 and not x.is_zero() else 0.0
        case 'homogeneity':
            c = y[0]
            target = abs(c) * oracle(x)
            return _relative(oracle(scale(x, c)) - target, target)
        case 'triangle':
            bound = oracle(x) + oracle(y)
            excess = max(oracle(add(x, y)) - bound, 0.0)
            return excess / bound if bound > 0 else excess
        case 'monotone':
            # 0 <= x <= y coordinatewise
            small, large = oracle(x), oracle(y)
            return _relative(max(small - large, 0.0), large)
    raise ValueError(f'unknown check {check!r}')


def witness_defect(oracle: NormOracle, report: CharacterizationReport) -> float:
    "re-evaluate the oracle on the report's witness"
    if report.witness is None or report.check is None:
        return 0.0
    x, y = report.witness
    match report.check:
        case 'multiplicativity':
            return multiplicativity_defect(oracle, x, y)
        case 'permutation' | 'unconditional':
            return _relative(oracle(x) - oracle(y), oracle(y))
        case 'power_law':
            return _power_law_defect(oracle, len(x), _alpha(oracle))
        case 'agreement':
            # clamped to [0, 1] as in extract_p
            alpha = min(max(_alpha(oracle), 0.0), 1.0)
            reference = lp_norm(x, _p_from_alpha(alpha))
            return _relative(oracle(x) - reference, reference)
        case check:
            return _axiom_defect(oracle, check, x, y)


def _u_sequence(oracle: NormOracle) -> list[float]:
    u = [0.0] + [oracle(ones(n)) for n in range(1, POWER_LAW_N_MAX + 1)]
    for n in range(1, POWER_LAW_N_MAX + 1):
        if not u[n] > 0:
            raise ValueError(f'oracle must be positive on 1^n, got {u[n]!r} at n={n}')
    return u


def _power_law_violation(
    oracle: NormOracle, u: list[float], n: int, alpha: float, rtol: float
) -> Violation:
    "prefer the pair (1^a, 1^b) that breaks u_ab = u_a u_b the most"
    best, pair = 0.0, None
    for a in range(1, POWER_LAW_N_MAX + 1):
        for b in range(a, POWER_LAW_N_MAX // a + 1):
            defect = abs(u[a * b] - u[a] * u[b]) / (u[a] * u[b])
            if defect > best:
                best, pair = defect, (ones(a), ones(b))
    if pair is not None and best > rtol:
        return Violation(Verdict.VIOLATES_POWER_LAW, 'multiplicativity', pair, best)
    return Violation(
        Verdict.VIOLATES_POWER_LAW,
        'power_law',
        (ones(n), ones(2)),
        _power_law_defect(oracle, n, alpha),
    )


def extract_p(oracle: NormOracle, rtol: float = POWER_LAW_RTOL) -> float:
    """
    p from u_2 = ||(1,1)|| = 2^{1/p}; u_1..u_64 must follow n^{1/p}.

    Raises `Violation` when the power law fails or when the exponent is
    outside [0, 1] by more than the tolerance allows.
    """
    u = _u_sequence(oracle)
    alpha = math.log(u[2]) / _LN2
    for n in range(1, POWER_LAW_N_MAX + 1):
        expected = n**alpha
        if abs(u[n] - expected) > rtol * expected:
            raise _power_law_violation(oracle, u, n, alpha, rtol)
    if alpha > 1:
        # u_2 <= u_1 + u_1 means alpha <= 1
        pair = (ones(1), FiniteSequence((0.0, 1.0)))
        defect = _axiom_defect(oracle, 'triangle', *pair)
        if defect > rtol:
            raise Violation(Verdict.VIOLATES_NORM_AXIOM, 'triangle', pair, defect)
        alpha = 1.0
    elif alpha < 0:
        pair = (ones(1), ones(2))
        defect = _axiom_defect(oracle, 'monotone', *pair)
        if defect > rtol:
            raise Violation(Verdict.VIOLATES_NORM_AXIOM, 'monotone', pair, defect)
        alpha = 0.0
    return _p_from_alpha(alpha)


@dataclass
class _Sampler:
    "entries uniform on [-2, 2] snapped to multiples of 1/SNAP"

    rng: np.random.Generator
    dim_max: int

    def sequence(self, nonzero: bool = False) -> FiniteSequence:
        while True:
            dim = int(self.rng.integers(1, self.dim_max + 1))
            ints = self.rng.integers(-2 * SNAP, 2 * SNAP + 1, size=dim)
            x = FiniteSequence(tuple(int(v) / SNAP for v in ints))
            if not nonzero or not x.is_zero():
                return x

    def scalar(self) -> FiniteSequence:
        return FiniteSequence((int(self.rng.integers(-2 * SNAP, 2 * SNAP + 1)) / SNAP,))

    def permutation(self, x: FiniteSequence) -> FiniteSequence:
        # the shuffle may move coordinates into extra zero slots
        padded = np.array(x.coords + (0.0,) * int(self.rng.integers(0, 3)))
        return FiniteSequence(tuple(float(v) for v in self.rng.permutation(padded)))


@dataclass
class _Run:
    oracle: NormOracle
    tolerance: float
    max_defect: float = 0.0
    samples_tested: int = 0

    def expect(self, defect: float, verdict: Verdict, check: str, witness: Witness):
        if defect > self.tolerance:
            raise Violation(verdict, check, witness, defect)
        self.max_defect = max(self.max_defect, defect)

    def axiom(self, check: str, witness: Witness):
        self.expect(
            _axiom_defect(self.oracle, check, *witness),
            Verdict.VIOLATES_NORM_AXIOM,
            check,
            witness,
        )

    def worst_product(self, pairs: list[Witness], verdict: Verdict) -> Optional[Violation]:
        defects = [multiplicativity_defect(self.oracle, a, b) for a, b in pairs]
        i = int(np.argmax(defects))
        if defects[i] > self.tolerance:
            return Violation(verdict, 'multiplicativity', pairs[i], defects[i])
        return None


def _unconditional(run: _Run, x: FiniteSequence):
    """
    oracle(x) = oracle(|x|). On failure, x⊗(1,-1) and |x|⊗(1,-1) are
    permutations of each other, so either permutation invariance or
    multiplicativity with (1,-1) is broken.
    """
    absx = FiniteSequence(tuple(abs(c) for c in x.coords))
    nabs = run.oracle(absx)
    defect = _relative(run.oracle(x) - nabs, nabs)
    if defect <= run.tolerance:
        run.max_defect = max(run.max_defect, defect)
        return
    sx, sabs = sign_symmetrize(x), sign_symmetrize(absx)
    run.expect(
        _relative(run.oracle(sx) - run.oracle(sabs), run.oracle(sabs)),
        Verdict.VIOLATES_PERMUTATION_INVARIANCE,
        'permutation',
        (sx, sabs),
    )
    violation = run.worst_product(
        [(x, _FLIP), (absx, _FLIP)], Verdict.VIOLATES_MULTIPLICATIVITY
    )
    if violation is not None:
        raise violation
    raise Violation(
        Verdict.VIOLATES_PERMUTATION_INVARIANCE, 'unconditional', (x, absx), defect
    )


def _check_axioms(run: _Run, sampler: _Sampler, samples: int):
    zero = FiniteSequence()
    run.axiom('zero', (zero, zero))
    for _ in range(samples):
        x, y = sampler.sequence(nonzero=True), sampler.sequence()
        run.axiom('definite', (x, x))
        run.axiom('homogeneity', (x, sampler.scalar()))
        run.axiom('triangle', (x, y))
        shuffled = sampler.permutation(x)
        nx = run.oracle(x)
        run.expect(
            _relative(run.oracle(shuffled) - nx, nx),
            Verdict.VIOLATES_PERMUTATION_INVARIANCE,
            'permutation',
            (shuffled, x),
        )
        _unconditional(run, x)
        run.samples_tested += 1


def _check_agreement(run: _Run, sampler: _Sampler, samples: int, p: float):
    for _ in range(samples):
        x = sampler.sequence(nonzero=True)
        reference = lp_norm(x, p)
        defect = _relative(run.oracle(x) - reference, reference)
        run.samples_tested += 1
        if defect <= run.tolerance:
            run.max_defect = max(run.max_defect, defect)
            continue
        # a norm that is permutation invariant and multiplicative is l_p
        violation = run.worst_product(
            [(x, x), (x, ones(2)), (x, ones(3))], Verdict.VIOLATES_MULTIPLICATIVITY
        )
        if violation is not None:
            raise violation
        raise Violation(Verdict.DISAGREES_WITH_LP, 'agreement', (x, ones(2)), defect)


def _check_multiplicativity(run: _Run, sampler: _Sampler, samples: int):
    for _ in range(samples):
        pair = (sampler.sequence(nonzero=True), sampler.sequence(nonzero=True))
        run.expect(
            multiplicativity_defect(run.oracle, *pair),
            Verdict.VIOLATES_MULTIPLICATIVITY,
            'multiplicativity',
            pair,
        )
        run.samples_tested += 1


def characterize(
    oracle: NormOracle, config: Optional[CharacterizeConfig] = None
) -> CharacterizationReport:
    """
    A consistent_lp verdict is a bounded-sample claim: it records the seed
    and the number of samples it rests on.
    """
    if config is None:
        config = CharacterizeConfig()
    sampler = _Sampler(np.random.default_rng(config.seed), config.dim_max)
    run = _Run(oracle, config.tolerance)
    try:
        _check_axioms(run, sampler, config.samples)
        p = extract_p(oracle, max(config.tolerance, POWER_LAW_RTOL))
        logging.info('%s: p estimate %r', oracle.label, p)
        _check_agreement(run, sampler, config.samples, p)
        _check_multiplicativity(run, sampler, config.samples)
    except Violation as v:
        logging.info('%s: %s', oracle.label, v)
        return CharacterizationReport(
            verdict=v.verdict,
            p_estimate=None,
            max_defect=max(run.max_defect, v.defect),
            witness=v.witness,
            samples_tested=run.samples_tested,
            seed=config.seed,
            label=oracle.label,
            check=v.check,
        )
    return CharacterizationReport(
        verdict=Verdict.CONSISTENT_LP,
        p_estimate=p,
        max_defect=run.max_defect,
        witness=None,
        samples_tested=run.samples_tested,
        seed=config.seed,
        label=oracle.label,
    )
