"""Matrix realizations of catalog spaces.

Every realization fixes ``g`` as a space of real matrices, a subalgebra ``h``
and the Iwasawa data ``a``, ``n_plus`` (upper triangular) and ``k``
(skew-symmetric). The ``a`` basis is aligned with the root-datum coordinates
of the matching descriptor, so a descriptor vector ``x`` corresponds to
``sum x_i a[i]``. Base points are chosen so that ``P . z0`` is open, which
for the product spaces means conjugating the diagonal by a Weyl element or a
rotation in some factors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _lie

__all__ = ["MatrixRealization", "realization", "realization_names", "enlarged_subalgebra"]

H2 = np.array([[1.0, 0.0], [0.0, -1.0]])
E2 = np.array([[0.0, 1.0], [0.0, 0.0]])
F2 = np.array([[0.0, 0.0], [1.0, 0.0]])
W2 = np.array([[0.0, 1.0], [-1.0, 0.0]])  # Weyl element, swaps E and -F


def rot(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True, eq=False)
class MatrixRealization:
    """Explicit matrix data for one catalog space.

    Attributes
    ----------
    name, descriptor : str
        Realization name and the catalog descriptor it realizes.
    size : int
        Matrix size.
    g, h, a, n_plus, k : tuple of ndarray
        Bases; ``a[i]`` is the matrix of the i-th descriptor coordinate.
    h_kind : str or None
        ``"circle"`` (H = SO(2), compact), ``"line"`` (H = SO(1,1)) or None.
    ideal_blocks : dict
        Ideal label -> basis of that simple ideal.
    measure : dict
        Normalization notes; only ratios and slopes are ever compared.
    """

    name: str
    descriptor: str
    size: int
    g: tuple
    h: tuple
    a: tuple
    n_plus: tuple
    k: tuple
    h_kind: str | None = None
    ideal_blocks: dict = field(default_factory=dict)
    measure: dict = field(default_factory=dict)
    polar: bool = False

    @property
    def dim_g(self) -> int:
        return len(self.g)

    def a_matrix(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float).ravel()
        return np.tensordot(x, np.asarray(self.a), axes=1)

    def exp_a(self, x) -> np.ndarray:
        """``exp`` of a diagonal element of ``a`` (exact for diagonal matrices)."""
        return np.diag(np.exp(np.diag(self.a_matrix(x))))

    def root_space(self, covector) -> list[np.ndarray]:
        vals = [float(v) for v in covector]
        return _lie.joint_eigenspace(self.a, vals, self.g)

    @property
    def m(self) -> list[np.ndarray]:
        """Centralizer of ``a`` in ``k``."""
        zero = self.root_space([0.0] * len(self.a))
        return _lie.intersect(zero, list(self.k)) if zero else []

    @property
    def p(self) -> list[np.ndarray]:
        """Minimal parabolic ``m + a + n_plus``."""
        return list(self.m) + list(self.a) + list(self.n_plus)

    def check(self, tol: float = 1e-10) -> list[str]:
        """Bracket closure of each subalgebra basis; returns problems found."""
        out = []
        for label, basis in (("g", self.g), ("h", self.h), ("a", self.a),
                             ("n_plus", self.n_plus), ("k", self.k)):
            if not _lie.is_closed(basis, tol):
                out.append(f"{self.name}: {label} is not closed under brackets")
        for label, basis in (("h", self.h), ("a", self.a), ("n_plus", self.n_plus), ("k", self.k)):
            _, res = _lie.coordinates(self.g, basis)
            if res > tol:
                out.append(f"{self.name}: {label} is not inside g")
        return out


def _sl2_family(name: str, h, h_kind: str, polar: bool, measure: dict) -> MatrixRealization:
    return MatrixRealization(
        name=name,
        descriptor=name,
        size=2,
        g=(H2, E2, F2),
        h=tuple(h),
        a=(H2,),
        n_plus=(E2,),
        k=(E2 - F2,),
        h_kind=h_kind,
        ideal_blocks={"sl2": [H2, E2, F2]},
        measure=measure,
        polar=polar,
    )


def _product(name: str, twists: list[np.ndarray]) -> MatrixRealization:
    """SL(2)^n with ``h = {(Ad(c_1) X, ..., Ad(c_n) X)}``."""
    n = len(twists)
    sl2 = [H2, E2, F2]
    g, a, npl, k, blocks = [], [], [], [], {}
    for j in range(n):
        emb = _lie.block_embed(sl2, j, n, 2)
        g += emb
        blocks[str(j + 1)] = emb
        a += _lie.block_embed([H2], j, n, 2)
        npl += _lie.block_embed([E2], j, n, 2)
        k += _lie.block_embed([E2 - F2], j, n, 2)
    h = []
    for x in sl2:
        h.append(_lie.block_diag(*[c @ x @ np.linalg.inv(c) for c in twists]))
    return MatrixRealization(
        name=name,
        descriptor=name,
        size=2 * n,
        g=tuple(g),
        h=tuple(h),
        a=tuple(a),
        n_plus=tuple(npl),
        k=tuple(k),
        h_kind=None,
        ideal_blocks=blocks,
        measure={"haar": "product of SL(2,R) Iwasawa measures"},
    )


def _sl3_gk() -> MatrixRealization:
    g = _lie.sl_basis(3)
    k = []
    for i in range(3):
        for j in range(i + 1, 3):
            e = np.zeros((3, 3))
            e[i, j], e[j, i] = 1.0, -1.0
            k.append(e)
    npl = []
    for i in range(3):
        for j in range(i + 1, 3):
            e = np.zeros((3, 3))
            e[i, j] = 1.0
            npl.append(e)
    return MatrixRealization(
        name="sl3_gk",
        descriptor="sl3_gk",
        size=3,
        g=tuple(g),
        h=tuple(k),
        a=(np.diag([1.0, 0.0, -1.0]), np.diag([0.0, 1.0, -1.0])),
        n_plus=tuple(npl),
        k=tuple(k),
        ideal_blocks={"sl3": g},
        measure={"iwasawa_density": "exp(-2 rho(y)) dn dy"},
        polar=True,
    )


_BUILDERS = {
    "sl2_gk": lambda: _sl2_family(
        "sl2_gk", [E2 - F2], "circle", True,
        {"iwasawa_density": "exp(-2y) ds dy", "polar_density": "2 pi sinh(2u) du"},
    ),
    "dS2": lambda: _sl2_family(
        "dS2", [E2 + F2], "line", False,
        {"chart_density": "dp dr / (2|r|) for Z = [[p, q], [r, -p]]"},
    ),
    "sl3_gk": _sl3_gk,
    "group_sl2": lambda: _product("group_sl2", [np.eye(2), W2]),
    "triple_sl2": lambda: _product("triple_sl2", [np.eye(2), W2, rot(np.pi / 4).T]),
}


def realization_names() -> list[str]:
    return list(_BUILDERS)


@lru_cache(maxsize=None)
def realization(name: str) -> MatrixRealization:
    """Matrix realization by catalog name (aliases resolved)."""
    from ..catalog import _canonical

    try:
        key = _canonical(name)
    except KeyError:
        key = name
    if key not in _BUILDERS:
        raise KeyError(
            f"no matrix realization for {name!r}; available: {', '.join(_BUILDERS)}"
        )
    return _BUILDERS[key]()


def enlarged_subalgebra(real: MatrixRealization, desc, added) -> list[np.ndarray]:
    """Basis of ``h + sum_{j in added} g_j`` (redundant vectors removed)."""
    mats = list(real.h)
    for label in added:
        mats += list(real.ideal_blocks[label])
    rows = _lie.orthonormal_rows(_lie.flat(mats))
    shape = (real.size, real.size)
    return [r.reshape(shape) for r in rows]
