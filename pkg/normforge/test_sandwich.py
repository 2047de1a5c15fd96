import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from .sandwich import (
    TraceRow,
    best_lower_bound,
    build_grid,
    convergence_trace,
    geometric_floor,
    lower_bound,
    upper_bound,
)
from .seqcore import FiniteSequence, lp_norm, ones

LN2 = math.log(2)
SQRT5 = math.sqrt(5)


def seq(*values):
    return FiniteSequence.of(*values)


def test_grid():
    grid = build_grid(seq(2, 1), 0.1)
    assert grid.d == 5
    assert grid.thresholds[0] == 0
    assert grid.thresholds[1] == pytest.approx(LN2 / 2)
    assert grid.thresholds[-1] == LN2
    steps = [b - a for a, b in zip(grid.thresholds[1:], grid.thresholds[2:])]
    assert max(steps) <= 0.1


def test_grid_exact_split():
    assert build_grid(seq(math.e, 1), 0.25).thresholds == (0, 0.5, 0.75, 1)


def test_grid_degenerate():
    grid = build_grid(seq(2, 2, 2), 0.1)
    assert grid.thresholds == (LN2, LN2)
    assert grid.d == 1


def test_grid_bad_epsilon():
    with pytest.raises(ValueError, match='epsilon'):
        build_grid(seq(2, 1), 0)


def test_lower_bound():
    assert lower_bound(seq(2, 1), 2, LN2, 1) == pytest.approx(2)
    for k in (1, 3, 5):
        for n in (1, 4, 9):
            assert lower_bound(ones(k), 3, 0, n) == pytest.approx(k ** (1 / 3))
    value = lower_bound(seq(2, 1), 2, 0.5, 500)
    assert 2.0 <= value <= SQRT5


def test_lower_bound_nothing_counted():
    assert lower_bound(seq(2, 1), 2, 1.0, 3) == 0


def test_lower_bound_rejects_infinite_p():
    with pytest.raises(ValueError, match='finite'):
        lower_bound(seq(2, 1), math.inf, 0.5, 3)


def test_best_lower_bound():
    for n in (1, 10, 100):
        assert best_lower_bound(seq(1, 1), 3, n, 20) == pytest.approx(2 ** (1 / 3))
    assert best_lower_bound(seq(2, 1), 2, 500, 200) >= 0.98 * SQRT5
    assert best_lower_bound(seq(3, 2, 1), 1, 200, 200) >= 0.95 * 6


def test_upper_bound():
    x = seq(2, 1)
    grid = build_grid(x, 0.05)
    value = upper_bound(x, 2, grid, 500)
    assert SQRT5 <= value <= math.exp(0.05) * SQRT5 * grid.d ** (1 / 500) * 1.03


def test_tight_on_ones():
    row = next(convergence_trace(seq(1, 1), 3, 0.05, [1], 10))
    assert row.best_lower == pytest.approx(2 ** (1 / 3))
    assert row.upper == pytest.approx(2 ** (1 / 3))


@pytest.mark.parametrize('values', [(2, 1), (3, 1), (3, 2, 1)])
@pytest.mark.parametrize('p', [1, 1.5, 2, 3])
def test_sandwich_holds(values, p):
    for row in convergence_trace(FiniteSequence(values), p, 0.05, range(1, 51), 50):
        assert row.sandwiched, row


def test_convergence():
    rows = list(convergence_trace(seq(2, 1), 2, 0.05, [10, 100, 500], 200))
    last = rows[-1]
    assert last.ratio <= 1.12
    assert abs(last.best_lower - SQRT5) <= 0.06 * SQRT5
    assert abs(last.upper - SQRT5) <= 0.06 * SQRT5


def test_trace_row():
    row = TraceRow(n=1, epsilon=0.1, best_lower=0.0, upper=2.0, lp_reference=1.0)
    assert row.ratio == math.inf
    assert row.sandwiched
    assert not TraceRow(1, 0.1, 1.5, 2.0, 1.0).sandwiched


@given(st.lists(st.integers(1, 64).map(lambda v: v / 8), min_size=1, max_size=8))
def test_geometric_floor(values):
    x = FiniteSequence(tuple(values))
    for p in (1, 2, 3.5):
        assert geometric_floor(x, p) <= lp_norm(x, p) * (1 + 1e-12)
