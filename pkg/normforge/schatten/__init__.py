from .core import SingularSpectrum, diag_oracle, gauge_norm, schatten_norm, singular_values
from .jacobi import jacobi_svd
from .matrix import Matrix, kron, random_orthogonal, signed_permutation
