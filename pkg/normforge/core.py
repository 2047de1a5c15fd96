from typing import Iterable

import numpy as np

from .characterize import CharacterizationReport, CharacterizeConfig, characterize
from .consts import ExitCode, Verdict
from .io import Table
from .rate_function import RateFunction, conjugate, cramer_limit
from .rvalg import bernoulli, independent_product, lp_norm_rv, same_distribution
from .sandwich import convergence_trace
from .schatten import (
    Matrix,
    diag_oracle,
    kron,
    random_orthogonal,
    signed_permutation,
    singular_values,
)
from .seqcore import FiniteSequence, NormOracle, kyfan_oracle, lp_norm, lp_oracle, parse_p
from .tensor_stats import empirical_rate

SCHATTEN_BOUND = 1e-9


def cmd_rate(x: FiniteSequence, t_grid: Iterable[float], n_list: Iterable[int]) -> tuple[Table, ExitCode]:
    rf = RateFunction.from_sequence(x)
    table = Table(
        'rate', ['n', 't', 'empirical_rate', 'neg_conjugate', 'branch', 'abs_error']
    )
    t_grid = list(t_grid)
    for n in n_list:
        for t in t_grid:
            rate = empirical_rate(x, t, n)
            limit = cramer_limit(rf, t)
            branch = 'ln_k' if t <= rf.t_mean else 'conjugate'
            error = 0.0 if rate == limit else abs(rate - limit)
            table.append(n, t, rate, -conjugate(rf, t), branch, error)
    return table, ExitCode.OK


def cmd_sandwich(
    x: FiniteSequence, p: float, epsilon: float, n_list: Iterable[int], t_grid_size: int = 200
) -> tuple[Table, ExitCode]:
    table = Table(
        'sandwich',
        ['n', 'epsilon', 'best_lower', 'upper', 'lp_reference', 'ratio_upper_lower'],
    )
    code = ExitCode.OK
    for row in convergence_trace(x, p, epsilon, n_list, t_grid_size):
        table.append(row.n, row.epsilon, row.best_lower, row.upper, row.lp_reference, row.ratio)
        if not row.sandwiched:
            code = ExitCode.VIOLATION
    return table, code


def select_norm(selector: str) -> NormOracle:
    "lp:<p>, kyfan:<k> or schatten-diag:<p>"
    family, _, arg = selector.partition(':')
    try:
        match family:
            case 'lp':
                return lp_oracle(parse_p(arg))
            case 'kyfan':
                return kyfan_oracle(int(arg))
            case 'schatten-diag':
                return diag_oracle(parse_p(arg))
    except ValueError as e:
        raise ValueError(f'norm: bad selector {selector!r}: {e}')
    raise ValueError(f'norm: unknown selector {selector!r}')


def cmd_characterize(selector: str, config: CharacterizeConfig) -> tuple[CharacterizationReport, ExitCode]:
    report = characterize(select_norm(selector), config)
    code = ExitCode.OK if report.verdict is Verdict.CONSISTENT_LP else ExitCode.VIOLATION
    return report, code


def _draw_pair(kind: str, sizes: list[int], rng: np.random.Generator) -> tuple[Matrix, Matrix]:
    def draw() -> Matrix:
        rows, cols = (int(s) for s in rng.choice(sizes, size=2))
        match kind:
            case 'identity':
                return Matrix.identity(rows)
            case 'diagonal':
                return Matrix.diag(rng.integers(-8, 9, size=rows) / 4)
        return Matrix(rng.standard_normal((rows, cols)))

    return draw(), draw()


def _rotations(kind: str, a: Matrix, rng: np.random.Generator) -> tuple[Matrix, Matrix]:
    # exact orthogonal factors keep structured cases free of rounding
    if kind == 'gaussian':
        return random_orthogonal(a.rows, rng), random_orthogonal(a.cols, rng)
    return signed_permutation(a.rows, rng), signed_permutation(a.cols, rng)


def _relative(a: float, b: float) -> float:
    return abs(a - b) / b if b > 0 else abs(a - b)


def cmd_schatten_check(
    sizes: list[int], p_list: list[float], trials: int, seed: int, kind: str = 'gaussian'
) -> tuple[Table, ExitCode]:
    if any(not 1 <= s <= 6 for s in sizes) or not sizes:
        raise ValueError(f'sizes: every entry must be in 1..6, got {sizes}')
    rng = np.random.default_rng(seed)
    table = Table(
        'schatten-check',
        ['trial', 'p', 'defect_multiplicativity', 'defect_unitary_invariance', 'max_spectrum_mismatch'],
    )
    code = ExitCode.OK
    for trial in range(trials):
        a, b = _draw_pair(kind, sizes, rng)
        u, v = _rotations(kind, a, rng)
        sa, sb = singular_values(a), singular_values(b)
        sab, srot = singular_values(kron(a, b)), singular_values(u @ a @ v)
        actual = np.array(sab.values)
        # outer product of the spectra, padded with the zero singular values of a⊗b
        expected = np.zeros(len(actual))
        outer = np.sort(np.outer(sa.values, sb.values).ravel())[::-1]
        expected[: len(outer)] = outer
        mismatch = float(np.max(np.abs(expected - actual)))
        for p in p_list:
            na, nb = lp_norm(sa.as_sequence(), p), lp_norm(sb.as_sequence(), p)
            defect_mult = _relative(lp_norm(sab.as_sequence(), p), na * nb)
            defect_unit = _relative(lp_norm(srot.as_sequence(), p), na)
            table.append(trial, p, defect_mult, defect_unit, mismatch)
            if max(defect_mult, defect_unit, mismatch) > SCHATTEN_BOUND:
                code = ExitCode.VIOLATION
    return table, code


def cmd_rv_check(n_max: int, p_list: list[float]) -> tuple[Table, ExitCode]:
    if not 1 <= n_max <= 50:
        raise ValueError(f'n_max must be in 1..50, got {n_max}')
    table = Table('rv-check', ['n', 'm', 'p', 'semigroup', 'norm_b_n', 'expected', 'rel_error'])
    code = ExitCode.OK
    for n in range(1, n_max + 1):
        for m in range(1, n_max + 1):
            semigroup = same_distribution(
                independent_product(bernoulli(n), bernoulli(m)), bernoulli(n * m)
            )
            for p in p_list:
                norm = lp_norm_rv(bernoulli(n), p)
                expected = float(n) ** (-1 / p)
                error = _relative(norm, expected)
                table.append(n, m, p, semigroup, norm, expected, error)
                if not semigroup or error > 1e-12:
                    code = ExitCode.VIOLATION
    return table, code
