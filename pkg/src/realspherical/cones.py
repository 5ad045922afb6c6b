"""Rational polyhedral cones, lattices and weighted lattice sums over cones.

Cones use the inward convention: an inequality row ``c`` means ``c . x >= 0``.
Conversion between the generator and inequality descriptions is a direct
double-description enumeration, which is plenty for ambient dimension <= 4
or so.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import _linalg as la

__all__ = [
    "Subspace",
    "Cone",
    "Lattice",
    "SumReport",
    "dual_cone",
    "edge_and_rays",
    "complement_basis",
    "quotient_coordinates",
    "project_quotient",
    "lattice_points",
    "weighted_cone_sum",
    "doubling_radii",
]


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of ``Q^n`` stored by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple = ()

    def __post_init__(self):
        rows = [la.vec(r) for r in self.basis]
        if any(len(r) != self.ambient_dim for r in rows):
            raise ValueError("basis vectors must have ambient_dim coordinates")
        object.__setattr__(self, "basis", la.row_space(rows) if rows else ())

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(vectors))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, la.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        v = la.vec(v)
        return la.rank(list(self.basis) + [v]) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def annihilator(self) -> tuple:
        """Covectors vanishing on the subspace (plain coordinate pairing)."""
        return la.nullspace(self.basis, self.ambient_dim)


class Cone:
    """Closed rational polyhedral cone in ``Q^n``.

    Build with :meth:`from_generators` or :meth:`from_inequalities`; the other
    description is computed on demand. Instances are immutable and compare
    equal when they describe the same set.
    """

    __slots__ = ("ambient_dim", "_gens", "_ineqs", "_lin", "_rays", "_facets")

    def __init__(self, ambient_dim: int, generators=None, inequalities=None):
        if generators is None and inequalities is None:
            raise ValueError("a cone needs generators or inequalities")
        self.ambient_dim = int(ambient_dim)
        self._gens = None if generators is None else la.mat(generators)
        self._ineqs = None if inequalities is None else la.mat(inequalities)
        for rows in (self._gens, self._ineqs):
            if rows is not None and any(len(r) != self.ambient_dim for r in rows):
                raise ValueError("row length does not match ambient_dim")
        self._lin = self._rays = self._facets = None

    @classmethod
    def from_generators(cls, generators, ambient_dim: int) -> "Cone":
        return cls(ambient_dim, generators=generators)

    @classmethod
    def from_inequalities(cls, inequalities, ambient_dim: int) -> "Cone":
        return cls(ambient_dim, inequalities=inequalities)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Cone":
        return cls(ambient_dim, generators=())

    @classmethod
    def whole(cls, ambient_dim: int) -> "Cone":
        return cls(ambient_dim, inequalities=())

    # -- representations -------------------------------------------------------
    @property
    def inequalities(self) -> tuple:
        """Inequality rows; the given ones, or a minimal set if derived."""
        if self._ineqs is not None:
            return self._ineqs
        return self.facets

    @property
    def generators(self) -> tuple:
        """Generators; the given ones, or rays plus +-lineality if derived."""
        if self._gens is not None:
            return self._gens
        return self.minimal_generators

    @property
    def minimal_generators(self) -> tuple:
        lin = self.lineality
        return tuple(self.rays) + tuple(lin) + tuple(la.neg(v) for v in lin)

    @property
    def facets(self) -> tuple:
        """Irredundant inequality rows (facet normals and +-equalities)."""
        if self._facets is None:
            lin, rays = _h_to_v(self._dual_rows(), self.ambient_dim)
            self._facets = tuple(rays) + tuple(lin) + tuple(la.neg(v) for v in lin)
        return self._facets

    def _dual_rows(self) -> tuple:
        """Inequalities of the dual cone, i.e. generators of this cone."""
        return self._gens if self._gens is not None else self.minimal_generators

    def _ensure_v(self):
        if self._lin is None:
            ineqs = self._ineqs if self._ineqs is not None else self.facets
            self._lin, self._rays = _h_to_v(ineqs, self.ambient_dim)

    @property
    def lineality(self) -> tuple:
        """Basis of the lineality space (canonical RREF rows)."""
        self._ensure_v()
        return self._lin

    @property
    def rays(self) -> tuple:
        """Extreme rays modulo the lineality space, primitive and sorted."""
        self.lineality
        return self._rays

    # -- predicates -------------------------------------------------------------
    @property
    def dim(self) -> int:
        gens = self.generators
        return la.rank(gens) if gens else 0

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    def contains(self, x: Sequence) -> bool:
        x = la.vec(x)
        return all(la.dot(c, x) >= 0 for c in self.inequalities)

    def in_interior(self, x: Sequence) -> bool:
        """Strictly inside relative to the ambient space."""
        x = la.vec(x)
        return self.dim == self.ambient_dim and all(
            la.dot(c, x) > 0 for c in self.facets
        )

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.contains_cone(other)
            and other.contains_cone(self)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"Cone(ambient_dim={self.ambient_dim}, rays={[la.fmt_vec(r) for r in self.rays]}, "
            f"lineality={[la.fmt_vec(v) for v in self.lineality]})"
        )

    def direct_sum_line(self) -> "Cone":
        """``C + R`` in one more coordinate."""
        gens = [tuple(g) + (Fraction(0),) for g in self.generators]
        e = (Fraction(0),) * self.ambient_dim + (Fraction(1),)
        return Cone.from_generators(gens + [e, la.neg(e)], self.ambient_dim + 1)


def _h_to_v(ineqs: Sequence[Sequence], n: int) -> tuple[tuple, tuple]:
    """Lineality basis and extreme rays of ``{x : A x >= 0}``."""
    a = [la.vec(r) for r in ineqs if not la.is_zero(r)]
    lin = la.nullspace(a, n) if a else la.identity(n)
    lin = la.row_space(lin) if lin else ()
    r_e = len(lin)
    if r_e == n:
        return lin, ()
    need = n - 1 - r_e
    rays = set()
    for rows in combinations(range(len(a)), need):
        m = list(lin) + [a[i] for i in rows]
        if la.rank(m) != n - 1:
            continue
        (r,) = la.nullspace(m, n)
        for cand in (r, la.neg(r)):
            if all(la.dot(c, cand) >= 0 for c in a):
                rays.add(la.primitive(cand))
    return lin, tuple(sorted(rays))


def dual_cone(c: Cone) -> Cone:
    """``{l : l(x) >= 0 for all x in C}``; swaps the two descriptions."""
    if c._ineqs is not None:
        return Cone.from_generators(c._ineqs, c.ambient_dim)
    return Cone.from_inequalities(c._gens, c.ambient_dim)


def edge_and_rays(c: Cone) -> tuple[Subspace, tuple]:
    """Lineality space and primitive extreme rays modulo it."""
    return Subspace(c.ambient_dim, c.lineality), c.rays


# -- quotients ---------------------------------------------------------------------

def complement_basis(s: Subspace, gram: Sequence[Sequence] | None = None) -> tuple:
    """Basis (rows) of the gram-orthogonal complement of ``s``."""
    n = s.ambient_dim
    g = la.identity(n) if gram is None else la.mat(gram)
    if not s.basis:
        return la.identity(n)
    return la.nullspace([la.vecmat(b, g) for b in s.basis], n)


def quotient_coordinates(
    x: Sequence, w: Sequence[Sequence], gram: Sequence[Sequence] | None = None
) -> tuple:
    """Coordinates in the basis ``w`` of the orthogonal projection of ``x``."""
    n = len(x)
    g = la.identity(n) if gram is None else la.mat(gram)
    wg = [la.vecmat(r, g) for r in w]
    m = [[la.dot(a, b) for b in w] for a in wg]
    rhs = [la.dot(a, x) for a in wg]
    return la.matvec(la.inverse(m), rhs) if w else ()


def project_quotient(
    c: Cone, s: Subspace, gram: Sequence[Sequence] | None = None
) -> Cone:
    """Image of ``c`` in ``Q^n / s``, in gram-orthogonal complement coordinates.

    Coordinates are with respect to :func:`complement_basis`, so two cones
    projected with the same ``s`` and ``gram`` are directly comparable.
    """
    w = complement_basis(s, gram)
    imgs = [quotient_coordinates(g, w, gram) for g in c.generators]
    return Cone.from_generators(imgs, len(w))


# -- lattices ---------------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice; the *columns* of ``basis`` generate it."""

    basis: tuple

    def __post_init__(self):
        b = la.mat(self.basis)
        if not b or len(b) != len(b[0]) or la.det(b) == 0:
            raise ValueError("lattice basis must be a square invertible matrix")
        object.__setattr__(self, "basis", b)

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(la.identity(n))

    @classmethod
    def scaled(cls, n: int, h) -> "Lattice":
        return cls(tuple(la.scale(la.frac(h), r) for r in la.identity(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)


def _norm_setup(norm, n: int):
    """Return ('sup', None) or ('gram', rational gram)."""
    if norm is None or (isinstance(norm, str) and norm == "euclidean"):
        return "gram", la.identity(n)
    if isinstance(norm, str):
        if norm == "sup":
            return "sup", None
        raise ValueError(f"unknown norm {norm!r}")
    g = la.mat(norm)
    if len(g) != n or not la.is_positive_definite(g):
        raise ValueError("norm gram must be symmetric positive definite")
    return "gram", g


def _box_bounds(lat: Lattice, kind: str, g, r: float) -> list[int]:
    """Integer bounds K_i with |k_i| <= K_i for every lattice point of norm <= r."""
    binv = np.array(la.inverse(lat.basis), dtype=float)
    if kind == "sup":
        dual = np.abs(binv).sum(axis=1)
    else:
        ginv = np.linalg.inv(np.array(g, dtype=float))
        dual = np.sqrt(np.einsum("ij,jk,ik->i", binv, ginv, binv))
    return [int(math.floor(d * r * (1 + 1e-12))) + 1 for d in dual]


_CHUNK = 1 << 18  # lattice points per enumeration block


def _enumerate(lat: Lattice, c: Cone, r, norm=None, ordered: bool = True):
    """Points of ``lat`` in ``c`` with norm <= r.

    Returns ``(points, norms)`` as float arrays, sorted lexicographically by
    coordinates unless ``ordered`` is False. Cone membership is decided exactly
    in integer arithmetic, and so is the norm comparison when ``r`` is rational.
    """
    n = lat.dim
    if c.ambient_dim != n:
        raise ValueError("lattice and cone dimensions differ")
    kind, g = _norm_setup(norm, n)
    rf = float(r)
    bounds = _box_bounds(lat, kind, g, rf)
    db = la.common_denominator(lat.basis)
    bint = np.array([[int(x * db) for x in row] for row in lat.basis], dtype=np.int64)
    ineqs = [la.primitive(row) for row in c.inequalities]
    aint = np.array([[int(x) for x in row] for row in ineqs], dtype=np.int64).reshape(-1, n)

    if kind == "gram":
        dg = la.common_denominator(g)
        gint = np.array([[int(x * dg) for x in row] for row in g], dtype=np.int64)
    try:
        rq = la.frac(r)
    except TypeError:
        rq = None

    def block(first: np.ndarray):
        axes = [first] + [np.arange(-k, k + 1, dtype=np.int64) for k in bounds[1:]]
        grids = np.meshgrid(*axes, indexing="ij")
        xint = np.stack([gr.ravel() for gr in grids], axis=1) @ bint.T  # points scaled by db
        if len(aint):
            xint = xint[np.all(xint @ aint.T >= 0, axis=1)]
        if kind == "sup":
            s = np.abs(xint).max(axis=1) if n else np.zeros(len(xint), dtype=np.int64)
            if rq is not None:
                keep = s * rq.denominator <= rq.numerator * db
            else:
                keep = s / db <= rf
            return xint[keep], s[keep] / db
        q = np.einsum("ij,jk,ik->i", xint, gint, xint)
        if rq is not None:
            lim = rq * rq * db * db * dg
            keep = q * lim.denominator <= lim.numerator
        else:
            keep = q / (db * db * dg) <= rf * rf * (1 + 1e-15)
        return xint[keep], np.sqrt(q[keep] / (db * db * dg))

    if n == 0:
        xint, norms = np.zeros((1, 0), dtype=np.int64), np.zeros(1)
    else:
        first = np.arange(-bounds[0], bounds[0] + 1, dtype=np.int64)
        per_row = int(np.prod([2 * k + 1 for k in bounds[1:]], dtype=np.int64))
        step = max(1, _CHUNK // max(per_row, 1))
        parts = [block(first[i:i + step]) for i in range(0, len(first), step)]
        xint = np.concatenate([x for x, _ in parts])
        norms = np.concatenate([v for _, v in parts])
    pts = xint / db
    if ordered and len(pts):
        order = np.lexsort(pts.T[::-1])
        pts, norms = pts[order], norms[order]
    return pts.reshape(-1, n), norms


def lattice_points(lat: Lattice, c: Cone, r, norm=None) -> list[tuple]:
    """Lattice points of ``c`` with ``||x|| <= r``, in lexicographic order.

    ``norm`` is None (Euclidean), ``"sup"``, or a rational gram matrix.
    Points come back as tuples of Fractions.
    """
    if float(r) < 0:
        return []
    pts, _ = _enumerate(lat, c, r, norm)
    db = la.common_denominator(lat.basis)
    return [tuple(Fraction(int(round(v * db)), db) for v in p) for p in pts]


# -- weighted sums ----------------------------------------------------------------

@dataclass(frozen=True)
class SumReport:
    """Partial sums of ``sum_x e^{lambda(x)} (1 + ||x||)^m`` over a cone."""

    partial_sums: tuple  # ((radius, value), ...), radius ascending
    verdict: str  # converges | diverges | empirical-converges | empirical-diverges
    verdict_basis: str  # analytic | empirical
    reason: str = ""
    empirical_verdict: str = ""
    increments: tuple = field(default=())


def doubling_radii(r_max: float, r_min: float = 1.0) -> list[float]:
    """``r_max / 2^k`` for k = 0, 1, ... while >= r_min, ascending."""
    if r_max <= 0:
        raise ValueError("R_max must be positive")
    radii = [float(r_max)]
    while radii[-1] / 2 >= r_min:
        radii.append(radii[-1] / 2)
    return radii[::-1]


def _as_family(lam, n: int) -> list[tuple]:
    if lam is None:
        return [la.zeros(n)]
    lam = list(lam)
    if lam and not isinstance(lam[0], (list, tuple)):
        lam = [lam]
    fam = [la.vec(l) for l in lam]
    if not fam or any(len(l) != n for l in fam):
        raise ValueError("lambda must be one or more covectors of length ambient_dim")
    return fam


def _analytic_verdict(c: Cone, fam: list[tuple], m: float) -> tuple[str | None, str]:
    """Decide convergence from the cone geometry when possible."""
    gens = c.generators
    dimc = c.dim
    if dimc == 0:
        return "converges", "zero cone: a single term"
    if all(la.dot(l, g) == 0 for l in fam for g in gens):
        if m < -dimc:
            return "converges", f"exponent vanishes on span(C) and m < -dim C = {-dimc}"
        return "diverges", f"exponent vanishes on span(C) and m >= -dim C = {-dimc}"
    lin = c.lineality
    directions = list(c.rays) + list(lin) + [la.neg(v) for v in lin]
    for d in directions:
        if max(la.dot(l, d) for l in fam) > 0:
            return "diverges", f"exponent positive along {la.fmt_vec(d)}"
    if lin:
        k = len(lin)
        if m >= -k:
            return "diverges", f"exponent vanishes on the edge (dim {k}) and m >= {-k}"
        return None, "exponent vanishes on the edge with m < -dim(edge): mixed case"
    vals = [max(la.dot(l, r) for l in fam) for r in c.rays]
    if all(v < 0 for v in vals):
        return "converges", "exponent negative on every extreme ray of a pointed cone"
    return None, "exponent vanishes on some extreme ray: mixed case"


def _empirical_verdict(values: list[float], rel_tol: float = 1e-9) -> tuple[str, tuple]:
    incs = tuple(math.inf if math.isinf(b) else b - a for a, b in zip(values, values[1:]))
    total = values[-1]
    if len(incs) >= 3 and all(d < rel_tol * total for d in incs[-3:]):
        return "empirical-converges", incs
    return "empirical-diverges", incs


def weighted_cone_sum(
    lat: Lattice,
    c: Cone,
    lam,
    m: float,
    r_max: float,
    *,
    norm=None,
    r_min: float = 1.0,
    analytic: bool = True,
    rel_tol: float = 1e-9,
) -> SumReport:
    """Partial sums of ``e^{lambda(x)} (1 + ||x||)^m`` over ``lat`` in ``c``.

    Parameters
    ----------
    lat, c : Lattice, Cone
        Summation domain.
    lam : covector or sequence of covectors
        The exponent. A family is combined by pointwise maximum, which is
        how piecewise-linear exponents such as ``p L - 2 rho_u`` enter.
    m : float
        Polynomial degree (negative for decay).
    r_max : float
        Largest radius; partial sums are reported at ``r_max / 2^k``.
    analytic : bool
        If False, skip the geometric verdict and always use the doubling test.

    Returns
    -------
    SumReport
    """
    if not r_max > 0:
        raise ValueError("R_max must be positive")
    fam = _as_family(lam, c.ambient_dim)
    radii = doubling_radii(r_max, min(r_min, r_max))
    # fsum is exactly rounded, so shell sums do not depend on point order
    pts, norms = _enumerate(lat, c, radii[-1], norm, ordered=False)
    if len(pts):
        expo = np.max(pts @ np.array(fam, dtype=float).T, axis=1)
        with np.errstate(over="ignore"):
            terms = np.exp(expo) * (1.0 + norms) ** float(m)
    else:
        terms = np.zeros(0)
    # shell j holds radii[j-1] < ||x|| <= radii[j]; each shell is summed with fsum
    edges = np.array(radii)
    shell = np.searchsorted(edges, norms * (1 - 1e-15), side="left")
    shell_sums = [_fsum(terms[shell == j].tolist()) for j in range(len(radii))]
    values = _running(shell_sums)
    partial = tuple(zip(radii, values))
    emp, incs = _empirical_verdict(values, rel_tol)
    if analytic:
        verdict, reason = _analytic_verdict(c, fam, m)
        if verdict is not None:
            return SumReport(partial, verdict, "analytic", reason, emp, incs)
    else:
        reason = "analytic verdict disabled"
    return SumReport(partial, emp, "empirical", reason, emp, incs)


def _fsum(xs: list[float]) -> float:
    """``math.fsum`` that returns ``inf`` instead of raising on overflow."""
    try:
        return math.fsum(xs)
    except OverflowError:
        return math.inf


def _running(xs: list[float]) -> list[float]:
    out, acc = [], []
    for x in xs:
        acc.append(x)
        out.append(_fsum(acc))
    return out
