"""Tiny exact linear programs by vertex enumeration.

Dimensions are at most a handful, so enumerating every basis of tight
constraints is cheaper to trust than a pivoting simplex.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import _linalg as la


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    argmin: tuple | None = None


def vertices(
    a_ub: Sequence[Sequence],
    b_ub: Sequence,
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    nvars: int | None = None,
) -> list[tuple]:
    """Vertices of ``{y : a_ub y <= b_ub, a_eq y = b_eq}``.

    Returns an empty list when the polyhedron is empty or has a nontrivial
    lineality space (no vertices).
    """
    a_ub, a_eq = la.mat(a_ub), la.mat(a_eq)
    b_ub, b_eq = la.vec(b_ub), la.vec(b_eq)
    k = nvars if nvars is not None else len((a_ub or a_eq)[0])
    if k == 0:
        ok = all(b >= 0 for b in b_ub) and all(b == 0 for b in b_eq)
        return [()] if ok else []
    r_eq = la.rank(a_eq) if a_eq else 0
    need = k - r_eq
    out = []
    for rows in combinations(range(len(a_ub)), need):
        m = list(a_eq) + [a_ub[i] for i in rows]
        if la.rank(m) != k:
            continue
        y = la.solve(m, list(b_eq) + [b_ub[i] for i in rows])
        if y is None:
            continue
        if all(la.dot(r, y) <= b for r, b in zip(a_ub, b_ub)) and y not in out:
            out.append(y)
    return sorted(out)


def minimize(
    c: Sequence,
    a_ub: Sequence[Sequence],
    b_ub: Sequence,
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Minimize ``c . y`` subject to ``a_ub y <= b_ub`` and ``a_eq y = b_eq``."""
    from .cones import Cone

    c = la.vec(c)
    k = len(c)
    a_ub, a_eq = la.mat(a_ub), la.mat(a_eq)
    b_ub, b_eq = la.vec(b_ub), la.vec(b_eq)
    if k == 0:
        feas = all(b >= 0 for b in b_ub) and all(b == 0 for b in b_eq)
        return LPResult("optimal", Fraction(0), ()) if feas else LPResult("infeasible")

    # recession cone {d : a_ub d <= 0, a_eq d = 0}, written with c.x >= 0 rows
    rec_rows = [la.neg(r) for r in a_ub] + list(a_eq) + [la.neg(r) for r in a_eq]
    rec = Cone.from_inequalities(rec_rows, k)
    lin = rec.lineality
    improving = any(la.dot(c, d) != 0 for d in lin) or any(
        la.dot(c, d) < 0 for d in rec.rays
    )
    # pin the lineality directions so vertices exist; c is constant along them
    # unless improving, in which case feasibility alone decides
    a_eq2 = list(a_eq) + list(lin)
    b_eq2 = list(b_eq) + [Fraction(0)] * len(lin)
    verts = vertices(a_ub, b_ub, a_eq2, b_eq2, nvars=k)
    if not verts:
        return LPResult("infeasible")
    if improving:
        return LPResult("unbounded")
    best = min(verts, key=lambda y: (la.dot(c, y), y))
    return LPResult("optimal", la.dot(c, best), best)
