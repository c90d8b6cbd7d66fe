"""Complex matrix kernels and a splittable random source.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The helpers here
add the shape checks and the pivoted inverse the relay formulas rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "RandomSource",
    "SingularMatrixError",
    "cgauss_matrix",
    "herm",
    "matmul",
    "inv_hermitian",
    "trace",
]

# pivot threshold, relative to the largest diagonal entry
SINGULAR_RTOL = 1e-12


class SingularMatrixError(np.linalg.LinAlgError):
    """Raised when Gaussian elimination meets a pivot below threshold."""

    def __init__(self, pivot: float, scale: float):
        self.pivot = pivot
        self.scale = scale
        super().__init__(
            f"matrix is numerically singular: pivot {pivot:.3e} "
            f"(largest diagonal {scale:.3e})")


@dataclass(frozen=True)
class RandomSource:
    """Counter-style random source identified by ``(seed, stream)``.

    Two sources with equal ``(seed, stream)`` yield identical sequences.
    Distinct streams are independent Philox keys derived through
    ``numpy.random.SeedSequence``, so trial ``t`` can always be given stream
    ``t`` no matter which worker runs it.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        # plain ints: numpy integers would overflow at 64 bits
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "stream", int(self.stream))
        if self.seed < 0 or self.stream < 0:
            raise ValueError("seed and stream must be non-negative")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.Philox(ss))

    def split(self, n: int) -> tuple["RandomSource", ...]:
        """Children with streams ``n*stream + i`` for ``i < n``.

        Children of distinct parents never collide for a fixed `n`.
        """
        return tuple(RandomSource(self.seed, n * self.stream + i)
                     for i in range(n))


def cgauss_matrix(rows: int, cols: int, rng: RandomSource) -> np.ndarray:
    """Matrix of i.i.d. CN(0, 1) entries.

    Real and imaginary parts are independent N(0, 1/2) draws, so every entry
    has unit total variance.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix dimensions must be >= 1, got {rows}x{cols}")
    z = rng.generator().standard_normal((rows, cols, 2))
    z *= np.sqrt(0.5)
    return z[..., 0] + 1j * z[..., 1]


def herm(A: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(np.asarray(A)).T


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def _require_square(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def inv_hermitian(A: np.ndarray) -> np.ndarray:
    """Inverse of a Hermitian positive-definite matrix.

    Gauss-Jordan elimination with partial pivoting; the result is
    symmetrised as ``(X + X^H) / 2``.

    Raises
    ------
    ValueError
        If `A` is not square.
    SingularMatrixError
        If a pivot falls below ``1e-12`` times the largest diagonal entry.
    """
    A = _require_square(A)
    n = A.shape[0]
    aug = np.hstack([A.astype(np.complex128), np.eye(n, dtype=np.complex128)])
    scale = float(np.max(np.abs(np.diag(A)))) if n else 0.0
    tol = SINGULAR_RTOL * scale
    for col in range(n):
        p = col + int(np.argmax(np.abs(aug[col:, col])))
        pivot = abs(aug[p, col])
        if pivot <= tol or pivot == 0.0:
            raise SingularMatrixError(pivot, scale)
        if p != col:
            aug[[col, p]] = aug[[p, col]]
        aug[col] /= aug[col, col]
        factors = aug[:, col].copy()
        factors[col] = 0.0
        aug -= np.outer(factors, aug[col])
    X = aug[:, n:]
    return 0.5 * (X + herm(X))


def trace(A: np.ndarray) -> complex:
    A = _require_square(A)
    return complex(np.trace(A))
