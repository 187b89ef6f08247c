"""Labeled density matrices: the substrate of both measurement pipelines.

A :class:`DensityMatrix` is an immutable complex square matrix with one
composite label per basis vector, validated on construction to be
Hermitian (1e-12), unit trace (1e-12) and positive (smallest eigenvalue
>= -1e-10).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGEN_TOL = 1e-10


def _frozen_complex(mat) -> np.ndarray:
    out = np.array(mat, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DensityMatrix:
    labels: tuple[tuple[str, ...], ...]
    mat: np.ndarray

    def __post_init__(self):
        mat = _frozen_complex(self.mat)
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "labels", tuple(tuple(l) for l in self.labels))
        n = len(self.labels)
        if mat.shape != (n, n):
            raise ValidationError(
                f"matrix shape {mat.shape} does not match {n} labels"
            )
        if len(set(self.labels)) != n:
            raise ValidationError("basis labels must be unique")
        if np.max(np.abs(mat - mat.conj().T), initial=0.0) > HERMITICITY_TOL:
            raise ValidationError("matrix is not Hermitian within 1e-12")
        if abs(np.trace(mat).real - 1.0) > TRACE_TOL or abs(np.trace(mat).imag) > TRACE_TOL:
            raise ValidationError("trace must equal 1 within 1e-12")
        if np.min(np.linalg.eigvalsh(mat)) < -EIGEN_TOL:
            raise ValidationError("matrix has an eigenvalue below -1e-10")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.mat)).copy()

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    def max_offdiagonal(self) -> float:
        off = self.mat - np.diag(np.diag(self.mat))
        return float(np.max(np.abs(off), initial=0.0))

    def with_matrix(self, mat) -> "DensityMatrix":
        return DensityMatrix(self.labels, mat)

    def with_labels(self, labels) -> "DensityMatrix":
        return DensityMatrix(tuple(labels), self.mat)


def scale_offdiagonal(rho: DensityMatrix, factors: np.ndarray) -> DensityMatrix:
    """Multiply each off-diagonal entry (m, n) by ``factors[m, n]``.

    ``factors`` must be symmetric with entries in [0, 1]; the diagonal of
    the input is untouched, so the trace is preserved exactly.
    """
    f = np.asarray(factors, dtype=float)
    if f.shape != rho.mat.shape:
        raise ValidationError("factor matrix shape mismatch")
    if np.any(f < 0.0) or np.any(f > 1.0):
        raise ValidationError("damping factors must lie in [0, 1]")
    if np.max(np.abs(f - f.T), initial=0.0) != 0.0:
        raise ValidationError("factor matrix must be symmetric")
    out = rho.mat * f
    np.fill_diagonal(out, np.diag(rho.mat))
    return rho.with_matrix(out)
