"""Small dense helpers for matrix Lie algebras given by bases of matrices."""
from __future__ import annotations

import numpy as np

RANK_TOL = 1e-8


def flat(mats) -> np.ndarray:
    """Stack matrices as rows of a 2D array (Frobenius coordinates)."""
    mats = [np.asarray(m, dtype=float) for m in mats]
    if not mats:
        return np.zeros((0, 0))
    return np.stack([m.ravel() for m in mats])


def orthonormal_rows(rows: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (rows) of the row span, with a relative rank cut."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.size == 0:
        return np.zeros((0, rows.shape[1] if rows.ndim == 2 else 0))
    # normalize rows first so vastly different scales do not hide directions
    norms = np.linalg.norm(rows, axis=1)
    keep = norms > 0
    rows = rows[keep] / norms[keep, None]
    if not len(rows):
        return np.zeros((0, rows.shape[1]))
    _, s, vt = np.linalg.svd(rows, full_matrices=False)
    r = int(np.sum(s > tol * s[0]))
    return vt[:r]


def span_rank(mats, tol: float = RANK_TOL) -> int:
    return len(orthonormal_rows(flat(mats), tol))


def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def coordinates(basis, mats) -> tuple[np.ndarray, float]:
    """Least-squares coordinates of ``mats`` in ``basis`` and the max residual."""
    b = flat(basis).T
    m = flat(mats).T
    coef, *_ = np.linalg.lstsq(b, m, rcond=None)
    resid = np.linalg.norm(b @ coef - m, axis=0)
    scale = np.maximum(np.linalg.norm(m, axis=0), 1.0)
    return coef.T, float(np.max(resid / scale)) if resid.size else 0.0


def is_closed(basis, tol: float = 1e-10) -> bool:
    """Whether the span of ``basis`` is closed under the commutator."""
    basis = list(basis)
    if not basis:
        return True
    brs = [bracket(x, y) for i, x in enumerate(basis) for y in basis[i + 1:]]
    if not brs:
        return True
    _, res = coordinates(basis, brs)
    return res < tol


def ad_matrix(x: np.ndarray, basis) -> np.ndarray:
    """Matrix of ``ad x`` on span(basis) (assumed invariant)."""
    coef, _ = coordinates(basis, [bracket(x, y) for y in basis])
    return coef.T


def intersect(basis1, basis2, tol: float = RANK_TOL) -> list[np.ndarray]:
    """Basis of span(basis1) ∩ span(basis2)."""
    if not len(basis1) or not len(basis2):
        return []
    shape = np.asarray(basis1[0]).shape
    q1 = orthonormal_rows(flat(basis1), tol)
    q2 = orthonormal_rows(flat(basis2), tol)
    # principal vectors with cos(angle) = 1
    u, s, vt = np.linalg.svd(q1 @ q2.T)
    k = int(np.sum(s > 1 - 1e-9))
    vecs = u[:, :k].T @ q1
    return [v.reshape(shape) for v in vecs]


def joint_eigenspace(ops, values, basis, tol: float = 1e-9) -> list[np.ndarray]:
    """Common eigenvectors in span(basis) of commuting ``ad`` operators."""
    dim = len(basis)
    stacked = np.vstack([ad_matrix(x, basis) - v * np.eye(dim) for x, v in zip(ops, values)])
    _, s, vt = np.linalg.svd(stacked)
    scale = max(1.0, s[0]) if s.size else 1.0
    null = vt[np.sum(s > tol * scale):] if s.size else np.eye(dim)
    return [np.tensordot(c, np.asarray(basis), axes=1) for c in null]


def sl_basis(n: int) -> list[np.ndarray]:
    """Standard basis of sl(n): E_ij (i != j) and E_ii - E_nn."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                e = np.zeros((n, n))
                e[i, j] = 1.0
                out.append(e)
    for i in range(n - 1):
        e = np.zeros((n, n))
        e[i, i], e[n - 1, n - 1] = 1.0, -1.0
        out.append(e)
    return out


def block_embed(mats, index: int, nblocks: int, size: int) -> list[np.ndarray]:
    out = []
    for m in mats:
        e = np.zeros((nblocks * size, nblocks * size))
        e[index * size:(index + 1) * size, index * size:(index + 1) * size] = m
        out.append(e)
    return out


def block_diag(*mats) -> np.ndarray:
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n))
    off = 0
    for m in mats:
        k = m.shape[0]
        out[off:off + k, off:off + k] = m
        off += k
    return out
