"""Iwasawa and polar decompositions for real matrix groups."""
from __future__ import annotations

import numpy as np

from .realizations import MatrixRealization

__all__ = ["iwasawa", "polar_decomposition", "polar_coordinate", "iwasawa_coordinates"]


def iwasawa(g, real: MatrixRealization | None = None):
    """``g = k a n`` with ``k`` orthogonal, ``a`` positive diagonal, ``n`` unipotent upper.

    Parameters
    ----------
    g : (n, n) array_like
        Invertible matrix.
    real : MatrixRealization, optional
        Unused for the standard upper-triangular Iwasawa data; accepted so
        callers can pass the realization uniformly.

    Returns
    -------
    k, a, n_part : ndarray

    Raises
    ------
    ValueError
        If ``g`` is singular to working precision.
    """
    g = np.asarray(g, dtype=float)
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    scale = np.max(np.abs(g)) if g.size else 1.0
    if scale == 0 or np.min(np.abs(d)) <= 1e-14 * scale:
        raise ValueError("iwasawa: singular input")
    sign = np.sign(d)
    q = q * sign
    r = sign[:, None] * r
    a = np.diag(np.diag(r))
    n_part = r / np.diag(r)[:, None]
    return q, a, n_part


def iwasawa_coordinates(g, real: MatrixRealization):
    """``(n, y)`` with ``g . z0 = n exp(y) . z0`` for ``G/K`` realizations.

    ``y`` is in descriptor coordinates; ``n`` is the unipotent factor.
    """
    k, a, n_part = iwasawa(np.linalg.inv(np.asarray(g, dtype=float)))
    # g = n^-1 a^-1 k^-1
    n_out = np.linalg.inv(n_part)
    logs = -np.log(np.diag(a))
    basis = np.array([np.diag(m) for m in real.a]).T
    y, *_ = np.linalg.lstsq(basis, logs, rcond=None)
    return n_out, y


def polar_decomposition(g, real: MatrixRealization):
    """``g = k1 exp(X) k2`` with ``k1, k2`` in SO(n) and ``X`` in the negative chamber."""
    if not real.polar:
        raise ValueError(f"polar coordinates are not supported for {real.name}")
    g = np.asarray(g, dtype=float)
    u, s, vt = np.linalg.svd(g)
    order = np.argsort(s)  # ascending singular values put log a in a^-
    u, s, vt = u[:, order], s[order], vt[order, :]
    if np.linalg.det(u) < 0:
        u[:, 0] = -u[:, 0]
        vt[0, :] = -vt[0, :]
    basis = np.array([np.diag(m) for m in real.a]).T
    x, *_ = np.linalg.lstsq(basis, np.log(s), rcond=None)
    return u, x, vt


def polar_coordinate(g, real: MatrixRealization) -> np.ndarray:
    """The ``a_Z^-`` coordinate of ``g . z0`` for Riemannian realizations."""
    return polar_decomposition(g, real)[1]
