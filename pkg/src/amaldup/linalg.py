"""Dense complex linear algebra with an explicit tolerance policy.

Every other module reduces to the primitives here: SVD-based rank and
nullspace with a relative threshold, least-norm linear solves with a
certified residual, and orthonormal subspaces supporting sum,
intersection and containment tests.

Conventions:
  * matrices are ``numpy`` arrays of ``complex128``;
  * a :class:`Subspace` stores an orthonormal column basis;
  * all comparisons are made against an explicit ``tol`` argument
    (default ``DEFAULT_TOL``); there is no hidden global epsilon.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidMatrix, ShapeError

DEFAULT_TOL = 1e-9


def as_cmatrix(entries, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce to a finite complex matrix, optionally checking its shape."""
    m = np.asarray(entries, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1) if cols == 1 else m.reshape(1, -1) if rows == 1 else m
    if not np.all(np.isfinite(m)):
        raise InvalidMatrix("matrix has non-finite entries")
    if rows is not None and m.shape[0] != rows:
        raise ShapeError(f"expected {rows} rows, got {m.shape[0]}")
    if cols is not None and m.shape[1] != cols:
        raise ShapeError(f"expected {cols} columns, got {m.shape[1]}")
    return m


def as_cvector(entries, length: int | None = None) -> np.ndarray:
    v = np.asarray(entries, dtype=complex).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise InvalidMatrix("vector has non-finite entries")
    if length is not None and v.size != length:
        raise ShapeError(f"expected length {length}, got {v.size}")
    return v


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^n via an orthonormal column basis.

    ``basis`` has shape ``(ambient_dim, dim)``; ``tol`` records the
    tolerance used at construction and is reused by membership tests.
    """

    ambient_dim: int
    basis: np.ndarray = field(repr=False)
    tol: float = DEFAULT_TOL

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @staticmethod
    def zero(ambient_dim: int, tol: float = DEFAULT_TOL) -> "Subspace":
        return Subspace(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex), tol)

    @staticmethod
    def full(ambient_dim: int, tol: float = DEFAULT_TOL) -> "Subspace":
        return Subspace(ambient_dim, np.eye(ambient_dim, dtype=complex), tol)

    @staticmethod
    def from_spanning(vectors, ambient_dim: int | None = None,
                      tol: float = DEFAULT_TOL) -> "Subspace":
        """Orthonormalize spanning vectors (given as columns or a list).

        Modified Gram-Schmidt with one re-orthogonalization pass; vectors
        whose residual after projection is below ``tol * max(1, |v|)``
        are dropped as dependent.
        """
        if isinstance(vectors, (list, tuple)):
            if len(vectors) == 0:
                if ambient_dim is None:
                    raise ShapeError("empty span needs an explicit ambient_dim")
                return Subspace.zero(ambient_dim, tol)
            mat = np.column_stack([as_cvector(v) for v in vectors])
        else:
            mat = as_cmatrix(vectors)
        n = mat.shape[0]
        if ambient_dim is not None and n != ambient_dim:
            raise ShapeError(f"vectors live in C^{n}, expected C^{ambient_dim}")
        cols: list[np.ndarray] = []
        for j in range(mat.shape[1]):
            v = mat[:, j]
            w = v.copy()
            for _ in range(2):  # MGS, re-orthogonalized
                for q in cols:
                    w = w - q * (q.conj() @ w)
            norm = np.linalg.norm(w)
            if norm > tol * max(1.0, np.linalg.norm(v)):
                cols.append(w / norm)
        basis = np.column_stack(cols) if cols else np.zeros((n, 0), dtype=complex)
        return Subspace(n, basis, tol)

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def project(self, v: np.ndarray) -> np.ndarray:
        return self.basis @ (self.basis.conj().T @ as_cvector(v, self.ambient_dim))

    def contains_vector(self, v: np.ndarray, tol: float | None = None) -> bool:
        v = as_cvector(v, self.ambient_dim)
        resid = np.linalg.norm(v - self.project(v))
        return resid <= (self.tol if tol is None else tol) * max(1.0, np.linalg.norm(v))

    def residual(self, vectors) -> float:
        """Largest distance from the given vectors to this subspace."""
        if isinstance(vectors, (list, tuple)):
            if not vectors:
                return 0.0
            vectors = np.column_stack([as_cvector(v) for v in vectors])
        m = as_cmatrix(vectors, rows=self.ambient_dim)
        if m.shape[1] == 0:
            return 0.0
        defect = m - self.basis @ (self.basis.conj().T @ m)
        return float(np.max(np.linalg.norm(defect, axis=0)))


def rank_nullspace(m, tol: float = DEFAULT_TOL,
                   atol: float = 0.0) -> tuple[int, Subspace]:
    """Rank and orthonormal nullspace basis of ``m``.

    Rank counts singular values above ``max(tol * sigma_max, atol)``; the
    relative threshold keeps the decision stable under rescaling, while
    the optional absolute floor lets callers declare a scale below which
    the matrix counts as zero (otherwise a matrix of pure round-off noise
    would be assigned full rank).
    """
    m = as_cmatrix(m)
    if m.size == 0:
        return 0, Subspace.full(m.shape[1], tol) if m.shape[1] else Subspace.zero(0, tol)
    _, s, vh = np.linalg.svd(m)
    smax = s[0] if s.size else 0.0
    cut = max(tol * smax, atol)
    rank = int(np.sum(s > cut)) if smax > 0 else 0
    null_basis = vh[rank:].conj().T
    return rank, Subspace(m.shape[1], null_basis, tol)


def solve_affine(a, b, tol: float = DEFAULT_TOL) -> np.ndarray | None:
    """Least-norm solution of ``a @ x = b``, or None when inconsistent.

    A returned vector is certified: its residual satisfies
    ``|a x - b| <= tol * (1 + |b|)``.
    """
    a = as_cmatrix(a)
    b = as_cvector(b)
    if a.shape[0] != b.size:
        raise ShapeError(f"matrix has {a.shape[0]} rows but rhs has length {b.size}")
    if a.shape[1] == 0:
        x = np.zeros(0, dtype=complex)
    else:
        x = np.linalg.lstsq(a, b, rcond=None)[0]
    resid = np.linalg.norm(a @ x - b)
    if resid > tol * (1.0 + np.linalg.norm(b)):
        return None
    return x


def subspace_sum(s1: Subspace, s2: Subspace, tol: float | None = None) -> Subspace:
    _check_ambient(s1, s2)
    t = s1.tol if tol is None else tol
    return Subspace.from_spanning(np.hstack([s1.basis, s2.basis]), s1.ambient_dim, t)


def subspace_intersect(s1: Subspace, s2: Subspace, tol: float | None = None) -> Subspace:
    """Intersection via the joint kernel of the two complement projectors."""
    _check_ambient(s1, s2)
    t = s1.tol if tol is None else tol
    eye = np.eye(s1.ambient_dim)
    stacked = np.vstack([eye - s1.projector(), eye - s2.projector()])
    _, null = rank_nullspace(stacked, t)
    return Subspace(s1.ambient_dim, null.basis, t)


def subspace_contains(s1: Subspace, s2: Subspace, tol: float | None = None) -> bool:
    """True when ``s2`` is contained in ``s1`` (residual test at tol)."""
    _check_ambient(s1, s2)
    t = s1.tol if tol is None else tol
    return s1.residual(s2.basis) <= t


def subspace_equal(s1: Subspace, s2: Subspace, tol: float | None = None) -> bool:
    return subspace_contains(s1, s2, tol) and subspace_contains(s2, s1, tol)


def _check_ambient(s1: Subspace, s2: Subspace) -> None:
    if s1.ambient_dim != s2.ambient_dim:
        raise ShapeError(
            f"ambient dimensions differ: {s1.ambient_dim} vs {s2.ambient_dim}")
