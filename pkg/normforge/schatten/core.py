from dataclasses import dataclass

from ..seqcore import FiniteSequence, NormOracle, check_p, format_p, lp_norm
from .jacobi import jacobi_svd
from .matrix import Matrix


@dataclass(frozen=True)
class SingularSpectrum:
    values: tuple[float, ...]

    def __post_init__(self):
        if any(v < 0 for v in self.values):
            raise ValueError('singular values must be nonnegative')
        if any(a < b for a, b in zip(self.values, self.values[1:])):
            raise ValueError('singular values must be non-increasing')

    def as_sequence(self) -> FiniteSequence:
        return FiniteSequence(self.values)


def singular_values(a: Matrix) -> SingularSpectrum:
    sigma, _ = jacobi_svd(a.array)
    return SingularSpectrum(tuple(float(s) for s in sigma))


def gauge_norm(a: Matrix, oracle: NormOracle) -> float:
    "a unitarily invariant norm as a symmetric gauge function of the spectrum"
    return oracle(singular_values(a).as_sequence())


def schatten_norm(a: Matrix, p: float) -> float:
    check_p(p)
    return lp_norm(singular_values(a).as_sequence(), p)


def diag_oracle(p: float) -> NormOracle:
    "x -> ||diag(x)||_p, the commutative slice of the Schatten norm"
    check_p(p)

    def evaluate(x: FiniteSequence) -> float:
        if x.is_zero():
            return 0.0
        return schatten_norm(Matrix.diag(x.coords), p)

    return NormOracle(evaluate, f'schatten-diag:{format_p(p)}')
