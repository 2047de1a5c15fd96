import math

import numpy as np
import pytest

from .rate_function import (
    RateFunction,
    cgf,
    cgf_prime,
    conjugate,
    cramer_limit,
    fenchel_moreau_check,
    grid_conjugate,
    lp_norm_via_cgf,
)
from .seqcore import FiniteSequence, lp_norm, scale
from .tensor_stats import empirical_rate

LN2 = math.log(2)
DENSE = np.arange(-50, 50, 1e-4)


def rf_of(*values) -> RateFunction:
    return RateFunction.from_sequence(FiniteSequence.of(*values))


def test_from_sequence():
    rf = rf_of(2, 2, 1)
    assert rf.k == 3
    assert rf.t_min == 0
    assert rf.t_max == LN2
    assert rf.t_mean == pytest.approx(2 * LN2 / 3)
    assert not rf.degenerate
    assert rf_of(5, 5).degenerate


def test_cgf():
    assert cgf(rf_of(2, 1), 0) == pytest.approx(LN2)
    assert cgf(rf_of(2, 1), 1) == pytest.approx(math.log(3))
    assert cgf(rf_of(3, 4), 2) == pytest.approx(math.log(25))
    # far from overflow thanks to the max shift
    assert cgf(rf_of(2, 1), 5000) == pytest.approx(5000 * LN2)


def test_cgf_prime():
    assert cgf_prime(rf_of(2, 1), 0) == pytest.approx(LN2 / 2)
    for lam in (-7, 0, 3.5):
        assert cgf_prime(rf_of(3, 3, 3), lam) == pytest.approx(math.log(3))
    assert abs(cgf_prime(rf_of(2, 1), 50) - LN2) < 1e-10
    assert abs(cgf_prime(rf_of(2, 1), -50)) < 1e-10


def test_cgf_prime_matches_finite_differences():
    h = 1e-6
    for rf in (rf_of(2, 1), rf_of(3, 2, 1), rf_of(5, 5, 0.5)):
        for lam in np.linspace(-10, 10, 41):
            numeric = (cgf(rf, lam + h) - cgf(rf, lam - h)) / (2 * h)
            assert abs(cgf_prime(rf, lam) - numeric) < 1e-6


def test_cgf_convex():
    rf = rf_of(4, 3, 1, 0.25)
    lams = np.linspace(-6, 6, 25)
    for a in lams:
        for b in lams:
            mid = cgf(rf, (a + b) / 2)
            assert mid <= (cgf(rf, a) + cgf(rf, b)) / 2 + 1e-12


def test_conjugate():
    rf = rf_of(2, 1)
    assert conjugate(rf, LN2 / 2) == pytest.approx(-LN2)
    assert conjugate(rf, LN2) == 0
    assert conjugate(rf, 0) == 0
    assert conjugate(rf, LN2 + 0.1) == math.inf
    assert conjugate(rf, -0.1) == math.inf


def test_conjugate_matches_grid_search():
    rf = rf_of(2, 1)
    for t in (0.05, 0.2, LN2 / 2, 0.5, 0.65):
        assert abs(conjugate(rf, t) - grid_conjugate(rf, t, DENSE)) <= 1e-6


def test_conjugate_boundaries():
    rf = rf_of(2, 2, 1)
    assert conjugate(rf, 0) == 0
    assert conjugate(rf, LN2) == pytest.approx(-LN2)
    # the grid sup approaches the closed form from below
    near = [grid_conjugate(rf, LN2, np.arange(0, top, 0.01)) for top in (5, 20, 50)]
    assert near == sorted(near)
    assert near[-1] == pytest.approx(-LN2, abs=1e-9)


def test_conjugate_degenerate():
    rf = rf_of(3, 3)
    assert conjugate(rf, math.log(3)) == pytest.approx(-LN2)
    assert conjugate(rf, 1.0) == math.inf


def test_conjugate_floor_and_young_fenchel():
    rf = rf_of(3, 2, 1)
    for t in np.linspace(0, math.log(3), 30):
        c = conjugate(rf, t)
        assert c >= -math.log(3)
        for lam in (-4, -1, 0, 0.5, 2, 6):
            assert lam * t <= cgf(rf, lam) + c + 1e-9


def test_scaling_identity():
    x = FiniteSequence.of(2, 1)
    c = 3.0
    rx, ry = RateFunction.from_sequence(x), RateFunction.from_sequence(scale(x, c))
    for t in (0.1, 0.4, 0.5, 0.6):
        assert abs(conjugate(ry, t + math.log(c)) - conjugate(rx, t)) < 1e-10


def test_cramer_limit():
    rf = rf_of(2, 1)
    assert cramer_limit(rf, 0.2) == LN2
    assert cramer_limit(rf, 1.0) == -math.inf
    assert cramer_limit(rf, 0.5) == pytest.approx(-conjugate(rf, 0.5))


def test_empirical_rate_converges():
    x = FiniteSequence.of(2, 1)
    limit = -conjugate(RateFunction.from_sequence(x), 0.5)
    assert abs(empirical_rate(x, 0.5, 500) - limit) < 0.03
    assert abs(empirical_rate(x, 0.5, 100) - limit) < 0.05


@pytest.mark.parametrize('values', [(2, 1), (3, 2, 1), (5, 0.5, 0.5)])
@pytest.mark.parametrize('p', [1, 1.5, 2, 3])
def test_lp_norm_via_cgf(values, p):
    x = FiniteSequence(values)
    assert lp_norm_via_cgf(RateFunction.from_sequence(x), p) == pytest.approx(
        lp_norm(x, p), rel=1e-12
    )


def test_fenchel_moreau_constant():
    assert fenchel_moreau_check(rf_of(1, 1), [-2, 0, 3], [-1, 0, 1]) == 0


@pytest.mark.parametrize(
    'values, points', [((2, 1), 2001), ((3, 2, 1), 2001), ((5, 4, 3, 2, 1), 2001)]
)
def test_fenchel_moreau(values, points):
    rf = RateFunction.from_sequence(FiniteSequence(values))
    lam_grid = list(np.arange(-3, 3.25, 0.5))
    t_grid = [float(t) for t in np.linspace(rf.t_min, rf.t_max, points)]
    assert fenchel_moreau_check(rf, lam_grid, t_grid) <= 1e-6


def test_fenchel_moreau_needs_grids():
    with pytest.raises(ValueError):
        fenchel_moreau_check(rf_of(2, 1), [], [0.1])
    with pytest.raises(ValueError, match='inside'):
        fenchel_moreau_check(rf_of(2, 1), [0.0], [5.0])
