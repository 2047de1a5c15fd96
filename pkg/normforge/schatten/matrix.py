import json
from typing import Iterable

import numpy as np

from ..consts import MAX_ENTRIES


class Matrix:
    """
    Dense real matrix, stored row-major in a read-only float64 array.
    """

    def __init__(self, array: np.ndarray | Iterable):
        a = np.array(array, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f'matrix must be 2-D and non-empty, got shape {a.shape}')
        if a.size > MAX_ENTRIES:
            raise ValueError(f'matrix has {a.size} entries, above the limit {MAX_ENTRIES}')
        if not np.isfinite(a).all():
            raise ValueError('matrix entries must be finite')
        a.setflags(write=False)
        self.array = a

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @classmethod
    def diag(cls, values: Iterable[float]) -> 'Matrix':
        values = list(values)
        return cls(np.diag(values) if values else np.zeros((1, 1)))

    @classmethod
    def identity(cls, n: int) -> 'Matrix':
        return cls(np.eye(n))

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        return Matrix(self.array @ other.array)

    def __eq__(self, other):
        return isinstance(other, Matrix) and np.array_equal(self.array, other.array)

    def __repr__(self):
        return f'<Matrix {self.rows}x{self.cols}>'

    def to_json(self) -> dict:
        return {
            'rows': self.rows,
            'cols': self.cols,
            'entries': self.array.ravel().tolist(),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> 'Matrix':
        if isinstance(data, str):
            data = json.loads(data)
        rows, cols, entries = data['rows'], data['cols'], data['entries']
        if len(entries) != rows * cols:
            raise ValueError(f'expected {rows * cols} entries, got {len(entries)}')
        return cls(np.reshape(entries, (rows, cols)))


def kron(a: Matrix, b: Matrix) -> Matrix:
    size = a.array.size * b.array.size
    if size > MAX_ENTRIES:
        raise ValueError(f'kron would have {size} entries, above the limit {MAX_ENTRIES}')
    return Matrix(np.kron(a.array, b.array))


def random_orthogonal(n: int, rng: np.random.Generator) -> Matrix:
    "Haar-distributed orthogonal matrix from the QR of a Gaussian matrix"
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return Matrix(q * np.sign(np.diag(r)))


def signed_permutation(n: int, rng: np.random.Generator) -> Matrix:
    "an orthogonal matrix with exact entries 0, 1, -1"
    p = np.zeros((n, n))
    p[np.arange(n), rng.permutation(n)] = rng.choice([-1.0, 1.0], size=n)
    return Matrix(p)
