"""Matrix-coefficient exponents, L^p thresholds, factorizations, property (I).

Conventions
-----------
* ``Lambda_V`` and ``rho_u`` are covectors on ``a``.
* The exponent along ``X`` in the compression cone uses the best lift:
  ``L(X) = min { Lambda(Y) : Y in a^-, Y = X mod a_H }``.
  ``L`` is the value function of a parametric LP with the parameter in the
  right-hand side, hence *convex* and positively homogeneous; it equals the
  maximum of finitely many linear forms (the vertices of the dual polyhedron).
* ``e_p = p L - 2 rho_u`` is then convex and piecewise linear, so it is
  negative on the pointed cone minus the origin iff it is negative on every
  extreme ray. That makes the threshold exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import _linalg as la
from . import _lp
from .cones import Lattice, weighted_cone_sum
from .rootsys import RootDatum, dual_basis
from .spherical import (
    SphericalDescriptor,
    compression_cone,
    is_wavefront,
    lift_from_quotient,
    quotient_basis,
    rho_u,
)

__all__ = [
    "WeightList",
    "ExponentProfile",
    "FactorizationRecord",
    "ThresholdResult",
    "TraceStep",
    "PropertyITrace",
    "NotWavefrontError",
    "LiftError",
    "lambda_V",
    "is_interior_dual",
    "coefficient_bound",
    "lifted_exponent",
    "lifted_pieces",
    "exponent_pieces",
    "lp_threshold",
    "enumerate_factorizations",
    "property_I_check",
    "ideal_partition",
]


class NotWavefrontError(ValueError):
    pass


class LiftError(ValueError):
    pass


@dataclass(frozen=True)
class WeightList:
    """Real parts of the ``a``-weights of ``V / n-bar V``."""

    weights: tuple

    def __post_init__(self):
        w = la.mat(self.weights)
        if not w:
            raise ValueError("a weight list must be nonempty")
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class ExponentProfile:
    lambda_V: tuple
    d_V: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lambda_V", la.vec(self.lambda_V))
        if int(self.d_V) < 0:
            raise ValueError("d_V must be a nonnegative integer")


def lambda_V(wl: WeightList, datum: RootDatum) -> tuple:
    """``Lambda_V(H_i) = max_j mu_j(H_i)``, reassembled as ``sum Lambda_V(H_i) alpha_i``."""
    hs = dual_basis(datum)
    vals = [max(la.dot(mu, h) for mu in wl.weights) for h in hs]
    out = la.zeros(datum.ambient_dim)
    for v, alpha in zip(vals, datum.simple_roots):
        out = la.add(out, la.scale(v, alpha))
    return out


def ideal_partition(desc: SphericalDescriptor) -> list[tuple[str, tuple]]:
    """``(label, simple-root indices)`` for each ideal with a datum factor."""
    out = []
    for ideal in desc.ideals:
        if ideal.factor is not None:
            out.append((ideal.label, desc.datum.factors[ideal.factor][1]))
    return out


def is_interior_dual(
    lam: Sequence,
    datum: RootDatum,
    partition: Sequence[Sequence[int]] | None = None,
    nontrivial: Sequence[bool] | None = None,
) -> bool:
    """Strict positivity ``Lambda(H_i) > 0`` on every flagged factor.

    ``partition`` groups simple-root indices by simple ideal (default: one
    group per datum factor). Factors flagged trivial are skipped.
    """
    hs = dual_basis(datum)
    if partition is None:
        partition = [s for _, s in datum.factors]
    if nontrivial is None:
        nontrivial = [True] * len(partition)
    lam = la.vec(lam)
    checked = False
    for part, flag in zip(partition, nontrivial):
        if not flag:
            continue
        checked = True
        if any(la.dot(lam, hs[i]) <= 0 for i in part):
            return False
    return checked or not partition


def coefficient_bound(profile: ExponentProfile, x: Sequence, datum: RootDatum) -> float:
    """``e^{Lambda_V(X)} (1 + ||X||)^{d_V}`` for ``X`` in the negative chamber."""
    xv = la.vec(x)
    if any(la.dot(a, xv) > 0 for a in datum.simple_roots):
        raise ValueError(f"X = {la.fmt_vec(xv)} is outside the negative chamber")
    norm = math.sqrt(float(datum.norm2(xv)))
    return math.exp(float(la.dot(profile.lambda_V, xv))) * (1.0 + norm) ** profile.d_V


# -- lifted exponent -------------------------------------------------------------------

def _lift_lp(desc: SphericalDescriptor, lam: Sequence, c: Sequence) -> _lp.LPResult:
    """``min Lambda(X0 + Y)`` over ``Y in a_H`` with ``X0 + Y`` in ``a^-``."""
    x0 = lift_from_quotient(desc, c)
    s = desc.a_H.basis
    alphas = desc.datum.simple_roots
    a_ub = [tuple(la.dot(a, sj) for sj in s) for a in alphas]
    b_ub = [-la.dot(a, x0) for a in alphas]
    obj = tuple(la.dot(lam, sj) for sj in s)
    res = _lp.minimize(obj, a_ub, b_ub)
    if res.status == "optimal":
        return _lp.LPResult("optimal", res.value + la.dot(lam, x0), res.argmin)
    return res


def lifted_exponent(desc: SphericalDescriptor, lam: Sequence, x: Sequence):
    """Minimal value of ``Lambda`` over lifts of ``X`` (in ``a_Z`` coordinates) to ``a^-``.

    Returns a Fraction, or ``-inf`` when ``Lambda`` is unbounded below on the
    lifts.

    Raises
    ------
    LiftError
        When ``X`` has no lift in ``a^-``. For wavefront data this means ``X``
        lies outside the compression cone.
    """
    res = _lift_lp(desc, la.vec(lam), la.vec(x))
    if res.status == "infeasible":
        raise LiftError(
            f"{desc.name}: X = {la.fmt_vec(la.vec(x))} has no lift into the negative chamber"
        )
    if res.status == "unbounded":
        return -math.inf
    return res.value


def lifted_pieces(desc: SphericalDescriptor, lam: Sequence) -> list[tuple]:
    """Linear forms on ``a_Z`` whose pointwise maximum is the lifted exponent.

    They are ``(Lambda + sum mu_i alpha_i)`` restricted to ``a_Z`` over the
    vertices ``mu`` of ``{mu >= 0 : Lambda + sum mu_i alpha_i = 0 on a_H}``.
    An empty list means the lifted exponent is ``-inf``.
    """
    lam = la.vec(lam)
    alphas = desc.datum.simple_roots
    k = len(alphas)
    s = desc.a_H.basis
    a_eq = [tuple(la.dot(a, sj) for a in alphas) for sj in s]
    b_eq = [-la.dot(lam, sj) for sj in s]
    a_ub = [la.neg(e) for e in la.identity(k)]
    verts = _lp.vertices(a_ub, la.zeros(k), a_eq, b_eq, nvars=k)
    w = quotient_basis(desc)
    pieces = []
    for mu in verts:
        form = lam
        for m, a in zip(mu, alphas):
            form = la.add(form, la.scale(m, a))
        piece = tuple(la.dot(form, wk) for wk in w)
        if piece not in pieces:
            pieces.append(piece)
    return pieces


def exponent_pieces(desc: SphericalDescriptor, lam: Sequence, p) -> list[tuple]:
    """Linear pieces of ``e_p = p L - 2 rho_u`` on ``a_Z`` (max-combined)."""
    p = la.frac(p) if not isinstance(p, float) else Fraction(p).limit_denominator(10**9)
    two_rho = tuple(2 * la.dot(rho_u(desc), wk) for wk in quotient_basis(desc))
    return [la.sub(la.scale(p, piece), two_rho) for piece in lifted_pieces(desc, lam)]


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of :func:`lp_threshold`.

    ``p_star`` is a Fraction, ``"all"`` (``p = 1`` already works) or
    ``"none"`` (no finite ``p`` works). ``upper`` is a strict upper bound on
    admissible ``p`` when some ray has positive lifted exponent.
    """

    p_star: object
    rays: tuple  # ({ray, L, two_rho_u, constraint}, ...)
    critical: tuple
    upper: Fraction | None = None
    reason: str = ""
    verification: tuple = field(default=())


def lp_threshold(
    desc: SphericalDescriptor,
    profile: ExponentProfile,
    *,
    verify: bool = True,
    r_max: float = 32.0,
) -> ThresholdResult:
    """Smallest ``p >= 1`` with ``p L - 2 rho_u < 0`` on the compression cone minus 0.

    The infimum is over an open condition, so ``p_star`` itself is the
    boundary value; every ``p > p_star`` (below ``upper`` if present) works.

    With ``verify`` the verdict is cross-checked with :func:`weighted_cone_sum`
    at ``p_star + 1/10`` and, when ``p_star > 1``, at ``max(1, p_star - 1/10)``.
    """
    if not is_wavefront(desc):
        raise NotWavefrontError(f"{desc.name} is not wavefront; the lifted bound does not apply")
    lam = profile.lambda_V
    cone = compression_cone(desc)
    w = quotient_basis(desc)
    rho = rho_u(desc)
    table = []

    def two_rho(c):
        return 2 * la.dot(rho, lift_from_quotient(desc, c))

    if cone.lineality:
        res = ThresholdResult("none", (), (), None, "compression cone has a nontrivial edge")
        return res

    lo, hi = Fraction(1), None
    lo_strict = False  # whether p = lo itself is excluded
    reason = ""
    none = False
    for r in cone.rays:
        lval = lifted_exponent(desc, lam, r)
        tr = two_rho(r)
        row = {"ray": r, "L": lval, "two_rho_u": tr}
        if lval == -math.inf:
            row["constraint"] = "none"
        elif lval < 0:
            t = tr / lval
            row["constraint"] = ("p >", t)
            if t > lo or (t == lo and not lo_strict):
                lo, lo_strict = t, True
        elif lval == 0:
            if tr > 0:
                row["constraint"] = "always"
            else:
                row["constraint"] = "never"
                none = True
                reason = f"lifted exponent 0 and rho_u <= 0 along {la.fmt_vec(r)}"
        else:
            t = tr / lval
            row["constraint"] = ("p <", t)
            hi = t if hi is None else min(hi, t)
        table.append(row)
    if not none and hi is not None and (hi < lo or (hi == lo)):
        none, reason = True, "upper and lower constraints leave no admissible p"
    if none:
        return ThresholdResult("none", tuple(table), (), hi, reason)
    crit = tuple(
        row["ray"] for row in table
        if isinstance(row["constraint"], tuple) and row["constraint"] == ("p >", lo)
    )
    if not lo_strict:
        p_star, reason = "all", "e_1 < 0 on every extreme ray"
    else:
        p_star = lo
        reason = "binding extreme ray(s)" if crit else "p >= 1 boundary"
    result = ThresholdResult(p_star, tuple(table), crit, hi, reason)
    if verify:
        result = _verify_threshold(desc, profile, result, r_max)
    return result


def _verify_threshold(desc, profile, result: ThresholdResult, r_max: float) -> ThresholdResult:
    cone = compression_cone(desc)
    lat = Lattice.standard(cone.ambient_dim)
    base = Fraction(1) if result.p_star == "all" else result.p_star
    checks = []
    probes = [("converges", base + Fraction(1, 10))]
    if result.p_star != "all" and base > 1:
        probes.append(("diverges", max(Fraction(1), base - Fraction(1, 10))))
    for expected, p in probes:
        if result.upper is not None and p >= result.upper:
            continue
        rep = weighted_cone_sum(
            lat, cone, exponent_pieces(desc, profile.lambda_V, p),
            float(p) * profile.d_V, r_max, norm=desc_gram_on_quotient(desc),
        )
        ok = rep.verdict in (expected, f"empirical-{expected}")
        checks.append({"p": p, "expected": expected, "verdict": rep.verdict,
                       "verdict_basis": rep.verdict_basis, "ok": ok})
    return ThresholdResult(
        result.p_star, result.rays, result.critical, result.upper, result.reason, tuple(checks)
    )


def desc_gram_on_quotient(desc: SphericalDescriptor) -> tuple:
    """Gram matrix of ``a_Z`` in its complement coordinates."""
    g = desc.datum.gram
    w = quotient_basis(desc)
    return tuple(tuple(la.dot(a, la.matvec(g, b)) for b in w) for a in w)


# -- factorizations ------------------------------------------------------------------

@dataclass(frozen=True)
class FactorizationRecord:
    subset: tuple
    dim_h_star: int
    classification: str  # improper | proper-basic | co-compact | full
    trace: tuple = ()


def _dim_h_cap(desc: SphericalDescriptor, subset) -> int:
    s = set(subset)
    return sum(b.dim for b in desc.h_blocks if set(b.support) <= s)


def _dim_h_plus(desc: SphericalDescriptor, subset) -> int:
    return (
        desc.dim_h
        + sum(desc.ideal(l).dim for l in subset)
        - _dim_h_cap(desc, subset)
    )


def _classify(desc: SphericalDescriptor, subset, dim_star: int) -> str:
    if dim_star == desc.dim_h:
        return "improper"
    if dim_star == desc.dim_g:
        return "full"
    if all(desc.ideal(l).compact for l in subset):
        return "co-compact"
    return "proper-basic"


def enumerate_factorizations(desc: SphericalDescriptor) -> list[FactorizationRecord]:
    """All ``h_I = h + sum_{j in I} g_j`` over subsets ``I`` of ideal labels.

    Subsets are listed by size, then in label order.
    """
    if not desc.ideals:
        raise ValueError(f"{desc.name} has no ideal decomposition")
    labels = desc.labels
    out = []
    for k in range(len(labels) + 1):
        for subset in combinations(labels, k):
            dim_star = _dim_h_plus(desc, subset)
            cls = _classify(desc, subset, dim_star)
            out.append(
                FactorizationRecord(subset, dim_star, cls, (("basic", subset),) if subset else ())
            )
    return out


# -- property (I) ---------------------------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    kind: str  # co-compact | basic | point
    space: str
    added: tuple
    dim_h_star: int
    detail: str = ""
    p_star: object = None
    unimodular: str = "not verified"


@dataclass(frozen=True)
class PropertyITrace:
    verdict: str  # holds | hypotheses not met | undecided
    steps: tuple
    p: object = None
    notes: tuple = ()

    @property
    def chain(self) -> tuple:
        return tuple(s.kind for s in self.steps)


def _restrict_profile(desc, keep_labels, profile: ExponentProfile) -> ExponentProfile:
    coords = []
    for label in keep_labels:
        f = desc.ideal(label).factor
        coords.extend(desc.datum.factors[f][0])
    return ExponentProfile(tuple(profile.lambda_V[i] for i in coords), profile.d_V)


def _unimodular_status(desc: SphericalDescriptor, added: tuple) -> str:
    if desc.realization is None:
        return "not verified"
    from .numerics.realizations import enlarged_subalgebra, realization
    from .numerics.structure import unimodularity_check

    try:
        real = realization(desc.realization)
        ok = unimodularity_check(enlarged_subalgebra(real, desc, added), real)
    except (KeyError, ValueError) as exc:
        return f"not verified ({exc})"
    return "verified" if ok else "fails"


def property_I_check(
    desc: SphericalDescriptor,
    nontrivial: Mapping[str, bool] | Sequence[bool] | None,
    profile: ExponentProfile,
    *,
    _depth: int = 0,
) -> PropertyITrace:
    """Follow the induction over basic and co-compact enlargements of ``h``.

    Parameters
    ----------
    nontrivial : mapping label -> bool, or a sequence in ideal order
        Whether the representation is nontrivial on each simple ideal.
    profile : ExponentProfile
        ``Lambda_V`` on ``a`` of the current space.

    Returns
    -------
    PropertyITrace
        ``verdict == "holds"`` with a finite exponent ``p`` (or ``"any"`` at the
        point space), ``"hypotheses not met"`` when the space is not wavefront
        or ``h`` is not reductive, or ``"undecided"`` when the data does not
        determine the next step.
    """
    from .catalog import catalog

    labels = desc.labels
    if nontrivial is None:
        flags = {l: True for l in labels}
    elif isinstance(nontrivial, Mapping):
        flags = {l: bool(nontrivial.get(l, True)) for l in labels}
    else:
        flags = dict(zip(labels, (bool(x) for x in nontrivial)))
    if not desc.h_reductive:
        return PropertyITrace("hypotheses not met", (), None, ("h is not reductive",))
    if not is_wavefront(desc):
        return PropertyITrace("hypotheses not met", (), None, (f"{desc.name} is not wavefront",))

    trivial = tuple(l for l in labels if not flags[l])
    if len(trivial) == len(labels):
        step = TraceStep(
            "point", desc.name, trivial, desc.dim_g,
            "trivial on every ideal: H_eta = G, the point space", "any", "verified",
        )
        return PropertyITrace("holds", (step,), "any")

    if not trivial:
        partition = [s for _, s in ideal_partition(desc)]
        interior = is_interior_dual(profile.lambda_V, desc.datum, partition)
        thr = lp_threshold(desc, profile, verify=False)
        uni = "verified" if desc.unimodular else _unimodular_status(desc, ())
        if interior and thr.p_star != "none":
            p = Fraction(1) if thr.p_star == "all" else thr.p_star
            step = TraceStep(
                "co-compact", desc.name, (), desc.dim_h,
                "nontrivial on every ideal: H_eta/H compact, exponent from the lifted LP",
                thr.p_star, uni,
            )
            return PropertyITrace("holds", (step,), p)
        note = (
            "Lambda_V not in the interior of the dual cone"
            if not interior else f"no finite exponent: {thr.reason}"
        )
        return PropertyITrace("undecided", (), None, (note,))

    dim_star = _dim_h_plus(desc, trivial)
    step = TraceStep(
        "basic", desc.name, trivial, dim_star,
        f"trivial on {', '.join(trivial)}: pass to h + g_I",
        None, _unimodular_status(desc, trivial),
    )
    keep = tuple(l for l in labels if flags[l])
    if dim_star == desc.dim_g:
        end = TraceStep(
            "point", desc.name, (), desc.dim_g,
            "h + g_I = g: an invariant vector is G-invariant, the point space", "any", "verified",
        )
        return PropertyITrace("holds", (step, end), "any")
    qname = desc.quotient_for(trivial)
    if qname is None:
        return PropertyITrace(
            "undecided", (step,), None,
            (f"no quotient descriptor recorded for trivial ideals {trivial}",),
        )
    sub = catalog(qname)
    sub_profile = _restrict_profile(desc, keep, profile)
    sub_flags = dict(zip(sub.labels, (True for _ in keep)))
    rest = property_I_check(sub, sub_flags, sub_profile, _depth=_depth + 1)
    return PropertyITrace(rest.verdict, (step,) + rest.steps, rest.p, rest.notes)
