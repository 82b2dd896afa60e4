"""Pointwise Lorentzian forms built from a Riemannian form and a line field.

Given a positive definite ``g_r`` and a nonzero ``v``::

    g(X, Y) = g_r(X, Y) - 2 g_r(X, v) g_r(Y, v) / g_r(v, v)

flips the sign of ``g_r`` along ``v`` and leaves its ``g_r``-orthogonal
complement alone. The converse direction diagonalizes ``g`` against ``g_r``
and returns the eigenline of the single negative eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBasis, NotPositiveDefinite, WrongSignature, ZeroVector

TOL_SYM = 1e-10
TOL_EIG = 1e-9
TOL_VEC = 1e-12
TOL_ROUND = 1e-9
MAX_DIM = 64


@dataclass(frozen=True, eq=False)
class SymmetricForm:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError(f"expected a nonempty square matrix, got shape {m.shape}")
        if m.shape[0] > MAX_DIM:
            raise ValueError(f"dimension {m.shape[0]} exceeds {MAX_DIM}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix has non-finite entries")
        if np.max(np.abs(m - m.T)) > TOL_SYM * max(1.0, np.max(np.abs(m))):
            raise ValueError("matrix is not symmetric")
        m = (m + m.T) / 2
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x, y) -> float:
        return float(np.asarray(x) @ self.matrix @ np.asarray(y))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def inertia(self) -> tuple[int, int, int]:
        """(negative, zero, positive) eigenvalue counts, zero judged relative to the spectral radius."""
        ev = self.eigenvalues()
        tol = TOL_EIG * max(1.0, float(np.max(np.abs(ev))))
        return int(np.sum(ev < -tol)), int(np.sum(np.abs(ev) <= tol)), int(np.sum(ev > tol))

    def is_positive_definite(self) -> bool:
        neg, zero, _ = self.inertia()
        return neg == 0 and zero == 0

    def is_lorentzian(self) -> bool:
        return self.inertia() == (1, 0, self.dim - 1)


@dataclass(frozen=True, eq=False)
class LineField:
    vector: np.ndarray

    def __post_init__(self):
        v = np.array(self.vector, dtype=float).reshape(-1)
        if v.size == 0 or not np.all(np.isfinite(v)) or np.linalg.norm(v) <= TOL_VEC:
            raise ZeroVector("line field vector must be finite and nonzero")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)

    def same_line(self, other: LineField, tol: float = TOL_ROUND) -> bool:
        a = self.vector / np.linalg.norm(self.vector)
        b = other.vector / np.linalg.norm(other.vector)
        return min(np.max(np.abs(a - b)), np.max(np.abs(a + b))) <= tol


def _form(x) -> SymmetricForm:
    return x if isinstance(x, SymmetricForm) else SymmetricForm(np.asarray(x))


def _line(x) -> LineField:
    return x if isinstance(x, LineField) else LineField(np.asarray(x))


def lorentz_from_riemannian(g_r, v) -> SymmetricForm:
    g_r, v = _form(g_r), _line(v)
    if not g_r.is_positive_definite():
        raise NotPositiveDefinite("Riemannian form must be positive definite")
    if v.vector.shape[0] != g_r.dim:
        raise ValueError(f"vector has length {v.vector.shape[0]}, form has dimension {g_r.dim}")
    gv = g_r.matrix @ v.vector
    return SymmetricForm(g_r.matrix - 2.0 * np.outer(gv, gv) / float(v.vector @ gv))


def pullback_is_riemannian(g, subspace_basis) -> bool:
    """Whether ``g`` restricted to the span of ``subspace_basis`` is positive definite."""
    g = _form(g)
    b = np.array(subspace_basis, dtype=float)
    if b.ndim != 2 or b.shape[1] != g.dim:
        raise DegenerateBasis(f"basis vectors must have length {g.dim}")
    if b.shape[0] != g.dim - 1:
        raise DegenerateBasis(f"a hypersurface basis needs {g.dim - 1} vectors, got {b.shape[0]}")
    sv = np.linalg.svd(b, compute_uv=False)
    if sv.size and sv[-1] <= TOL_EIG * max(1.0, sv[0]):
        raise DegenerateBasis("basis vectors are linearly dependent")
    gram = b @ g.matrix @ b.T
    return SymmetricForm(gram).is_positive_definite()


def orthogonal_complement(g_r, v) -> np.ndarray:
    """Rows spanning the ``g_r``-orthogonal complement of ``v``."""
    g_r, v = _form(g_r), _line(v)
    w = g_r.matrix @ v.vector
    # null space of the covector w
    _, _, vt = np.linalg.svd(w.reshape(1, -1))
    return vt[1:]


def generalized_eigen(g, g_r) -> tuple[np.ndarray, np.ndarray]:
    """Solve ``g x = lam g_r x`` by whitening with the Cholesky factor of ``g_r``.

    Eigenvectors are returned as columns, ``g_r``-orthonormal.
    """
    g, g_r = _form(g), _form(g_r)
    try:
        chol = np.linalg.cholesky(g_r.matrix)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("Riemannian form must be positive definite") from None
    linv = np.linalg.inv(chol)
    whitened = linv @ g.matrix @ linv.T
    lam, y = np.linalg.eigh((whitened + whitened.T) / 2)
    return lam, linv.T @ y


def extract_timelike_line(g, g_r) -> LineField:
    """Eigenline of the unique negative generalized eigenvalue, of unit ``g_r``-length."""
    g, g_r = _form(g), _form(g_r)
    if not g_r.is_positive_definite():
        raise NotPositiveDefinite("Riemannian form must be positive definite")
    lam, vecs = generalized_eigen(g, g_r)
    tol = TOL_EIG * max(1.0, float(np.max(np.abs(lam))))
    neg = np.flatnonzero(lam < -tol)
    if neg.size != 1 or np.any(np.abs(lam) <= tol):
        raise WrongSignature(
            f"expected exactly one negative and no zero generalized eigenvalue, got {np.round(lam, 12).tolist()}"
        )
    x = vecs[:, neg[0]]
    # fix the sign so that the largest component is positive
    x = x if x[np.argmax(np.abs(x))] > 0 else -x
    return LineField(x / np.sqrt(g_r(x, x)))


def signature_counts(g) -> dict:
    neg, zero, pos = _form(g).inertia()
    return {"negative": neg, "zero": zero, "positive": pos}
