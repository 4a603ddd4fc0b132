"""Orthonormal frames and subspace comparison.

A Frame is an N x K complex matrix with orthonormal columns: an ordered basis
of a K-dimensional subspace, i.e. an encoding of a K-dimensional logical space
into an N-dimensional physical space.  Subspaces are compared through the
singular values of the frame overlap (cosines of the principal angles).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Frame",
    "orthonormalize",
    "principal_overlap",
    "principal_angles",
    "subspace_equal",
    "subspace_distance",
    "EmptySpanError",
]

ORTHONORMALITY_TOL = 1e-10


class EmptySpanError(ValueError):
    """All input vectors were dropped as numerically dependent."""


@dataclass(frozen=True)
class Frame:
    """N x K complex matrix with orthonormal columns."""

    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.data, dtype=complex)
        if a.ndim != 2:
            raise ValueError("frame data must be a 2-d array")
        n, k = a.shape
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= K <= N, got K={k}, N={n}")
        g = a.conj().T @ a
        err = np.max(np.abs(g - np.eye(k)))
        if err >= ORTHONORMALITY_TOL:
            raise ValueError(f"columns not orthonormal (max deviation {err:.3e})")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "data", a)

    @property
    def N(self) -> int:
        return self.data.shape[0]

    @property
    def K(self) -> int:
        return self.data.shape[1]

    def matmul_logical(self, m: np.ndarray) -> "Frame":
        """Right-multiply by a K x K unitary: same span, new column basis."""
        return Frame(self.data @ m)

    def projector(self) -> np.ndarray:
        """Dense rank-K projector F F^dagger.  Small-N diagnostics only."""
        return self.data @ self.data.conj().T


def orthonormalize(vectors, tol: float = 1e-10) -> Frame:
    """Gram-Schmidt in input order, dropping numerically dependent vectors.

    Deterministic: the output columns follow the input order, each vector
    either normalized after projection or dropped when its residual norm
    falls below ``tol``.  Re-orthogonalizes once for stability.
    """
    vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    if not vecs:
        raise EmptySpanError("no input vectors")
    dim = vecs[0].size
    cols: list[np.ndarray] = []
    for v in vecs:
        if v.size != dim:
            raise ValueError("input vectors have mixed dimensions")
        w = v.copy()
        for _ in range(2):
            for c in cols:
                w -= c * (c.conj() @ w)
        nrm = np.linalg.norm(w)
        if nrm >= tol:
            cols.append(w / nrm)
    if not cols:
        raise EmptySpanError("all vectors below tolerance; span is empty")
    return Frame(np.column_stack(cols))


def principal_overlap(f1: Frame, f2: Frame) -> np.ndarray:
    """M = F1^dagger F2; its singular values are cosines of principal angles."""
    if f1.N != f2.N or f1.K != f2.K:
        raise ValueError(
            f"frame dimensions differ: ({f1.N},{f1.K}) vs ({f2.N},{f2.K})"
        )
    return f1.data.conj().T @ f2.data


def principal_angles(f1: Frame, f2: Frame) -> np.ndarray:
    s = np.linalg.svd(principal_overlap(f1, f2), compute_uv=False)
    return np.arccos(np.clip(s, 0.0, 1.0))


def subspace_equal(f1: Frame, f2: Frame, tol: float = 1e-9) -> bool:
    """True iff the column spans agree: every overlap singular value > 1 - tol."""
    s = np.linalg.svd(principal_overlap(f1, f2), compute_uv=False)
    return bool(s.min() > 1.0 - tol)


def subspace_distance(f1: Frame, f2: Frame) -> float:
    """One minus the smallest principal cosine: 0 iff the spans agree.

    This is the quantity subspace_equal thresholds, so equal-span frames
    computed in floats score ~1e-16 rather than the sqrt-amplified values a
    sine-based metric would give.
    """
    s = np.linalg.svd(principal_overlap(f1, f2), compute_uv=False)
    return float(max(0.0, 1.0 - float(s.min())))
