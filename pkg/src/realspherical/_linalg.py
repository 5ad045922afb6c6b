"""Exact rational linear algebra on tuples of :class:`fractions.Fraction`.

Vectors are tuples, matrices are tuples of row tuples. Everything here is
small-dimensional (ambient dimension <= 8 in practice), so plain Gaussian
elimination is fine.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vec = tuple  # tuple[Fraction, ...]
Mat = tuple  # tuple[Vec, ...]


def frac(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction.

    Floats are rejected unless they are integral, to keep exactness honest.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if x.is_integer():
            return Fraction(int(x))
        raise TypeError(f"non-integral float {x!r}; pass a Fraction or a string")
    # numpy integers and the like
    try:
        return Fraction(int(x)) if int(x) == x else Fraction(x)
    except (TypeError, ValueError) as exc:
        raise TypeError(f"cannot convert {x!r} to a rational") from exc


def vec(xs: Iterable) -> Vec:
    return tuple(frac(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vec:
    return (Fraction(0),) * n


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vec:
    return tuple(c * a for a in u)


def neg(u: Sequence) -> Vec:
    return tuple(-a for a in u)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def transpose(m: Sequence[Sequence]) -> Mat:
    return tuple(zip(*m)) if m else ()


def matvec(m: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def vecmat(v: Sequence, m: Sequence[Sequence]) -> Vec:
    """Row vector times matrix."""
    if not m:
        return ()
    return tuple(dot(v, col) for col in zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def identity(n: int) -> Mat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def rref(rows: Sequence[Sequence]) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns. Zero rows are dropped."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Mat:
    """Basis of {x : rows @ x = 0}, one basis vector per free column."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty system")
        ncols = len(rows[0])
    if not rows:
        return identity(ncols)
    r, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -r[i][f]
        basis.append(tuple(x))
    return tuple(basis)


def row_space(rows: Sequence[Sequence]) -> Mat:
    """Canonical (RREF) basis of the row space."""
    return rref(rows)[0]


def solve(a: Sequence[Sequence], b: Sequence) -> Vec | None:
    """One solution of a @ x = b, or None when inconsistent."""
    n = len(a[0]) if a else 0
    aug = [tuple(row) + (bi,) for row, bi in zip(a, b)]
    r, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(piv):
        x[p] = r[i][n]
    return tuple(x)


def inverse(a: Sequence[Sequence]) -> Mat:
    n = len(a)
    aug = [tuple(row) + e for row, e in zip(a, identity(n))]
    r, piv = rref(aug)
    if piv[:n] != tuple(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in r)


def det(a: Sequence[Sequence]) -> Fraction:
    m = [list(r) for r in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def is_positive_definite(a: Sequence[Sequence]) -> bool:
    """Sylvester's criterion on leading principal minors (exact)."""
    n = len(a)
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
        return False
    return all(det([row[:k] for row in a[:k]]) > 0 for k in range(1, n + 1))


def primitive(v: Sequence) -> Vec:
    """Positive multiple of v with coprime integer entries (zero stays zero)."""
    v = vec(v)
    if is_zero(v):
        return v
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(Fraction(x // g) for x in ints)


def common_denominator(rows: Iterable[Iterable[Fraction]]) -> int:
    d = 1
    for r in rows:
        for x in r:
            d = lcm(d, x.denominator)
    return d


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v: Sequence[Fraction]) -> list[str]:
    return [fmt(x) for x in v]
