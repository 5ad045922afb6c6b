"""Subalgebra-level checks: open orbits, unimodularity, limiting subalgebras."""
from __future__ import annotations

import numpy as np

from . import _lie
from .realizations import MatrixRealization

__all__ = [
    "sphericality_check",
    "unimodularity_check",
    "limit_subalgebra",
    "grassmann_distance",
    "principal_angles",
    "subalgebra_limit_scan",
]


def sphericality_check(
    real: MatrixRealization, x=None, h=None, tol: float = 1e-8
) -> bool:
    """Whether ``p + Ad(x) h = g``, i.e. ``P x H`` is open in ``G``.

    ``h`` defaults to the realization's subalgebra; passing another basis
    allows testing candidate subalgebras.
    """
    x = np.eye(real.size) if x is None else np.asarray(x, dtype=float)
    xinv = np.linalg.inv(x)
    h = real.h if h is None else h
    mats = list(real.p) + [x @ y @ xinv for y in h]
    return _lie.span_rank(mats, tol) == real.dim_g


def unimodularity_check(basis, real: MatrixRealization | None = None, tol: float = 1e-10) -> bool:
    """``tr(ad_h X) = 0`` for every ``X`` in the subalgebra spanned by ``basis``.

    Raises
    ------
    ValueError
        If the span is not closed under brackets.
    """
    basis = [np.asarray(b, dtype=float) for b in basis]
    if not _lie.is_closed(basis, tol):
        raise ValueError("basis does not span a subalgebra (bracket closure fails)")
    rows = _lie.orthonormal_rows(_lie.flat(basis))
    shape = basis[0].shape
    ortho = [r.reshape(shape) for r in rows]
    scale = max(1.0, max(np.linalg.norm(b) for b in ortho))
    return all(abs(np.trace(_lie.ad_matrix(x, ortho))) <= tol * scale for x in ortho)


def limit_subalgebra(real: MatrixRealization, desc) -> list[np.ndarray]:
    """``h_lim = u-bar + (h ∩ l)`` for the descriptor's ``Sigma_u``.

    ``u-bar`` sums the root spaces of ``-alpha`` for ``alpha`` in ``Sigma_u``;
    ``l`` is the centralizer of ``a`` plus the root spaces of roots outside
    ``Sigma_u`` and their negatives.
    """
    roots = desc.datum.roots
    su = set(desc.sigma_u)
    ubar, l = [], list(real.root_space([0.0] * len(real.a)))
    for i, r in enumerate(roots):
        vals = [float(v) for v in r]
        if i in su:
            ubar += real.root_space([-v for v in vals])
        else:
            l += real.root_space(vals) + real.root_space([-v for v in vals])
    cap = _lie.intersect(list(real.h), l) if l else []
    rows = _lie.orthonormal_rows(_lie.flat(ubar + cap))
    return [r.reshape(real.size, real.size) for r in rows]


def principal_angles(basis1, basis2) -> np.ndarray:
    """Principal angles between two equal-dimensional spans (ascending).

    Small angles come from the sines, large ones from the cosines, which
    keeps both ends accurate.
    """
    q1 = _lie.orthonormal_rows(_lie.flat(basis1))
    q2 = _lie.orthonormal_rows(_lie.flat(basis2))
    if len(q1) != len(q2):
        raise ValueError(f"dimension mismatch: {len(q1)} vs {len(q2)}")
    resid = q1 - (q1 @ q2.T) @ q2
    sines = np.sort(np.linalg.svd(resid, compute_uv=False))
    cosines = np.sort(np.clip(np.linalg.svd(q1 @ q2.T, compute_uv=False), 0.0, 1.0))[::-1]
    ang = np.where(sines < np.sqrt(0.5), np.arcsin(np.clip(sines, 0, 1)), np.arccos(cosines))
    return np.sort(ang)


def grassmann_distance(basis1, basis2) -> float:
    """Geodesic distance on the Grassmannian: the 2-norm of the principal angles."""
    return float(np.linalg.norm(principal_angles(basis1, basis2)))


def subalgebra_limit_scan(real: MatrixRealization, desc, x, ts) -> list[float]:
    """Distances from ``Ad(exp(tX)) h`` to ``h_lim`` for each ``t`` in ``ts``.

    ``x`` is in descriptor coordinates of ``a``. ``Ad(exp(tX))`` acts on the
    diagonal-conjugation level, so large ``t`` never forms ``exp`` explicitly
    beyond the diagonal entries.
    """
    hlim = limit_subalgebra(real, desc)
    if len(hlim) != len(real.h):
        raise ValueError(
            f"dim h = {len(real.h)} but dim h_lim = {len(hlim)}; they must agree"
        )
    diag = np.diag(real.a_matrix(x))
    out = []
    for t in ts:
        d = np.exp(t * diag)
        moved = [(y * d[:, None]) / d[None, :] for y in real.h]
        out.append(grassmann_distance(moved, hlim))
    return out
