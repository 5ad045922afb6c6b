"""Restricted root systems with multiplicities, in exact rational coordinates.

A root is stored as a covector on ``a`` (a row of rationals) and evaluated on a
vector of ``a`` by the plain coordinate pairing. The ``gram`` matrix is the
inner product on ``a`` itself and is only used for norms and orthogonal
complements.

Standard coordinates
--------------------
* ``A_n`` lives in ``n`` coordinates: the trace-zero diagonal
  ``diag(x_1, ..., x_n, -(x_1 + ... + x_n))``. The gram matrix is the
  restriction of the trace form, ``I + J``. For ``A_1`` this gives
  ``alpha(x) = 2x`` as for ``diag(x, -x)`` in ``sl(2)``.
* ``B_n``, ``C_n``, ``D_n`` use the usual orthonormal ``e_i`` coordinates.
* ``G_2`` sits inside the ``A_2`` coordinates (and gram) as the long/short
  root system of the trace-zero plane.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import _linalg as la

__all__ = [
    "RootDatum",
    "standard_datum",
    "direct_sum",
    "dual_basis",
    "negative_chamber",
    "evaluate",
]


def evaluate(covector: Sequence, vector: Sequence) -> Fraction:
    """Pair a covector on ``a`` with a vector of ``a``."""
    return la.dot(covector, vector)


@dataclass(frozen=True)
class RootDatum:
    """Positive restricted roots with multiplicities on a rational space ``a``.

    ``factors`` lists the simple summands as ``(coordinate indices, simple-root
    indices)`` pairs; it is filled in by :func:`direct_sum` and defaults to a
    single summand.
    """

    rank: int
    ambient_dim: int
    simple_roots: tuple
    positive_roots: tuple  # ((covector, multiplicity), ...)
    gram: tuple
    name: str = ""
    factors: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "simple_roots", la.mat(self.simple_roots))
        object.__setattr__(
            self,
            "positive_roots",
            tuple((la.vec(r), int(m)) for r, m in self.positive_roots),
        )
        object.__setattr__(self, "gram", la.mat(self.gram))
        if not self.factors:
            object.__setattr__(
                self,
                "factors",
                ((tuple(range(self.ambient_dim)), tuple(range(self.rank))),),
            )
        self._check()

    def _check(self):
        n = self.ambient_dim
        if self.rank != len(self.simple_roots):
            raise ValueError("rank must equal the number of simple roots")
        if self.rank > n:
            raise ValueError("rank exceeds ambient dimension")
        if any(len(r) != n for r in self.simple_roots):
            raise ValueError("simple roots must have ambient_dim coordinates")
        if self.rank and la.rank(self.simple_roots) != self.rank:
            raise ValueError("simple roots are linearly dependent")
        if len(self.gram) != n or not la.is_positive_definite(self.gram):
            raise ValueError("gram must be a symmetric positive-definite matrix")
        for root, mult in self.positive_roots:
            if mult < 1:
                raise ValueError(f"multiplicity {mult} is not a positive integer")
            coeffs = self.simple_coefficients(root)
            if coeffs is None or any(c < 0 or c.denominator != 1 for c in coeffs):
                raise ValueError(
                    f"positive root {la.fmt_vec(root)} is not a nonnegative "
                    "integer combination of the simple roots"
                )
        roots = [r for r, _ in self.positive_roots]
        for s in self.simple_roots:
            if s not in roots:
                raise ValueError("every simple root must be listed among positive roots")

    # -- queries ---------------------------------------------------------------
    def simple_coefficients(self, covector: Sequence) -> tuple | None:
        """Coordinates of ``covector`` in the simple-root basis, or None."""
        if not self.rank:
            return () if la.is_zero(covector) else None
        return la.solve(la.transpose(self.simple_roots), la.vec(covector))

    @property
    def roots(self) -> tuple:
        return tuple(r for r, _ in self.positive_roots)

    @property
    def multiplicities(self) -> tuple:
        return tuple(m for _, m in self.positive_roots)

    def root_index(self, covector: Sequence) -> int:
        return self.roots.index(la.vec(covector))

    def rho(self) -> tuple:
        """Half the sum of the positive roots counted with multiplicity."""
        total = la.zeros(self.ambient_dim)
        for r, m in self.positive_roots:
            total = la.add(total, la.scale(m, r))
        return la.scale(Fraction(1, 2), total)

    def norm2(self, vector: Sequence) -> Fraction:
        return la.dot(vector, la.matvec(self.gram, vector))

    def covector_to_vector(self, covector: Sequence) -> tuple:
        """The vector representing ``covector`` through the gram inner product."""
        return la.matvec(la.inverse(self.gram), covector)

    def cartan_matrix(self) -> tuple:
        """Cartan integers ``2 (a_i, a_j) / (a_j, a_j)`` in the dual gram."""
        ginv = la.inverse(self.gram)
        ip = lambda u, v: la.dot(u, la.matvec(ginv, v))
        s = self.simple_roots
        return tuple(
            tuple(2 * ip(s[i], s[j]) / ip(s[j], s[j]) for j in range(self.rank))
            for i in range(self.rank)
        )


# -- construction ---------------------------------------------------------------

def _e(n: int, i: int, c=1) -> list:
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _a_root(n: int, i: int, j: int) -> tuple:
    """e_i - e_j for 0 <= i < j <= n in the n-coordinate trace-zero chart."""
    v = _e(n, i)
    if j < n:
        v[j] -= 1
    else:
        v = [x + 1 for x in v]
    return tuple(v)


def _a_gram(n: int) -> tuple:
    return tuple(tuple(Fraction(1 + (i == j)) for j in range(n)) for i in range(n))


def _classical_positive(series: str, n: int) -> list:
    if series == "A":
        return [_a_root(n, i, j) for i, j in combinations(range(n + 1), 2)]
    roots = []
    for i, j in combinations(range(n), 2):
        roots.append(tuple(la.sub(_e(n, i), _e(n, j))))
        roots.append(tuple(la.add(_e(n, i), _e(n, j))))
    if series == "B":
        roots += [tuple(_e(n, i)) for i in range(n)]
    elif series == "C":
        roots += [tuple(_e(n, i, 2)) for i in range(n)]
    return roots


def _classical_simple(series: str, n: int) -> list:
    if series == "A":
        return [_a_root(n, i, i + 1) for i in range(n)]
    simple = [tuple(la.sub(_e(n, i), _e(n, i + 1))) for i in range(n - 1)]
    if series == "B":
        simple.append(tuple(_e(n, n - 1)))
    elif series == "C":
        simple.append(tuple(_e(n, n - 1, 2)))
    else:  # D
        simple.append(tuple(la.add(_e(n, n - 2), _e(n, n - 1))))
    return simple


_G2_COEFFS = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def standard_datum(
    series: str,
    n: int,
    multiplicities: int | Mapping | None = None,
) -> RootDatum:
    """Standard positive system of type ``series`` and rank ``n``.

    ``multiplicities`` is either one integer for every root, or a mapping from
    root index (position in ``positive_roots``) or from the root's
    simple-root coefficient tuple to a positive integer. Missing roots get 1.
    """
    series = series.upper()
    if series in ("G", "G2"):
        if n != 2:
            raise ValueError(f"invalid series/rank pair ({series}, {n}); G2 forces rank 2")
        simple = [_a_root(2, 0, 1), la.vec((-3, 0))]
        positive = [
            tuple(la.add(la.scale(a, simple[0]), la.scale(b, simple[1])))
            for a, b in _G2_COEFFS
        ]
        gram = _a_gram(2)
        n, label = 2, "G2"
    elif series in _MIN_RANK:
        if not isinstance(n, int) or n < _MIN_RANK[series]:
            raise ValueError(
                f"invalid series/rank pair ({series}, {n}); "
                f"{series} needs rank >= {_MIN_RANK[series]}"
            )
        simple = _classical_simple(series, n)
        positive = _classical_positive(series, n)
        gram = _a_gram(n) if series == "A" else la.identity(n)
        label = f"{series}{n}"
    else:
        raise ValueError(f"invalid series/rank pair ({series}, {n})")

    datum0 = RootDatum(len(simple), n, simple, [(r, 1) for r in positive], gram, label)
    mults = _resolve_multiplicities(datum0, multiplicities)
    return RootDatum(len(simple), n, simple, list(zip(positive, mults)), gram, label)


def _resolve_multiplicities(datum: RootDatum, spec) -> list:
    k = len(datum.positive_roots)
    if spec is None:
        return [1] * k
    if isinstance(spec, int):
        return [spec] * k
    out = [1] * k
    coeff_index = {
        tuple(int(c) for c in datum.simple_coefficients(r)): i
        for i, r in enumerate(datum.roots)
    }
    for key, m in spec.items():
        if isinstance(key, int):
            idx = key
        else:
            idx = coeff_index.get(tuple(int(c) for c in key))
            if idx is None:
                raise ValueError(f"{key!r} is not a positive root of {datum.name}")
        if not 0 <= idx < k:
            raise ValueError(f"root index {idx} out of range")
        out[idx] = int(m)
    return out


def direct_sum(*data: RootDatum, name: str | None = None) -> RootDatum:
    """Orthogonal direct sum; coordinates and simple roots are concatenated."""
    n = sum(d.ambient_dim for d in data)
    simple, positive, factors = [], [], []
    gram = [[Fraction(0)] * n for _ in range(n)]
    off = soff = 0
    for d in data:
        pad = lambda v: (Fraction(0),) * off + tuple(v) + (Fraction(0),) * (n - off - d.ambient_dim)
        simple += [pad(s) for s in d.simple_roots]
        positive += [(pad(r), m) for r, m in d.positive_roots]
        for i in range(d.ambient_dim):
            for j in range(d.ambient_dim):
                gram[off + i][off + j] = d.gram[i][j]
        for coords, sroots in d.factors:
            factors.append(
                (tuple(off + c for c in coords), tuple(soff + s for s in sroots))
            )
        off += d.ambient_dim
        soff += d.rank
    return RootDatum(
        len(simple),
        n,
        simple,
        positive,
        gram,
        name or "x".join(d.name for d in data),
        tuple(factors),
    )


def dual_basis(datum: RootDatum) -> tuple:
    """Vectors ``H_i`` of ``a`` with ``alpha_j(H_i) = delta_ij``.

    Only defined when ``a`` is spanned by the simple coroots' duals, i.e. when
    ``ambient_dim == rank``.
    """
    if datum.ambient_dim != datum.rank:
        raise ValueError(
            f"dual basis is not unique: ambient_dim={datum.ambient_dim} > "
            f"rank={datum.rank}; pass the datum in semisimple-span coordinates "
            "(drop the central directions first)"
        )
    inv = la.inverse(datum.simple_roots)
    return la.transpose(inv)


def negative_chamber(datum: RootDatum):
    """Closed negative Weyl chamber ``{X : alpha_i(X) <= 0}`` as a cone.

    Cones use inward inequalities ``c . x >= 0``, so the rows are ``-alpha_i``.
    """
    from .cones import Cone

    return Cone.from_inequalities([la.neg(s) for s in datum.simple_roots], datum.ambient_dim)
