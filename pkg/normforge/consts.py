import math
from enum import IntEnum, StrEnum

ENCODING = 'UTF-8'

DEFAULT_SEED = 42

# tensor_stats
MAX_ATOMS = 10**7
MAX_ATOMS_ENV = 'NORMFORGE_MAX_ATOMS'
MERGE_RTOL = 1e-12
COUNT_SLACK = 1e-9

# characterize
DEFAULT_TOLERANCE = 1e-9
POWER_LAW_RTOL = 1e-9
POWER_LAW_N_MAX = 64
ALPHA_ZERO_TOL = 1e-12
SNAP = 8  # random entries are multiples of 1/SNAP

# rvalg
MAX_EMBED = 10**6

# schatten
MAX_ENTRIES = 10**6
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 60

INF = math.inf


class Verdict(StrEnum):
    CONSISTENT_LP = 'consistent_lp'
    VIOLATES_PERMUTATION_INVARIANCE = 'violates_permutation_invariance'
    VIOLATES_MULTIPLICATIVITY = 'violates_multiplicativity'
    VIOLATES_POWER_LAW = 'violates_power_law'
    VIOLATES_NORM_AXIOM = 'violates_norm_axiom'
    DISAGREES_WITH_LP = 'disagrees_with_lp'


class ExitCode(IntEnum):
    OK = 0
    USAGE = 2
    VIOLATION = 3
