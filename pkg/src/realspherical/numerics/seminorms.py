"""Weighted L^2 and sup seminorms of radial functions on ``SL(2,R)/SO(2)``.

A radial profile is a function of the polar radius ``u >= 0`` (the point
``exp(-uH) . z0``). In the ``exp(-2y) ds dy`` normalization the invariant
measure in polar coordinates is ``2 pi sinh(2u) du``; the weights are
``w = ||X|| = sqrt(2) u`` and ``v = exp(-2 rho_u(X)) = exp(2u)``.

    p_n(f)^2 = int |f|^2 (1 + w)^{2n} dz,      q_m(f) = sup |f| sqrt(v) (1 + w)^m
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, optimize

from .realizations import MatrixRealization
from .volume import NonConvergenceError

__all__ = [
    "RadialProfile",
    "SeminormResult",
    "polar_density",
    "schwartz_seminorms",
    "seminorm_p",
    "seminorm_q",
    "comparison_constant",
    "standard_profiles",
]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class RadialProfile:
    name: str
    f: Callable[[np.ndarray], np.ndarray]
    description: str = ""

    def __call__(self, u):
        return self.f(np.asarray(u, dtype=float))


@dataclass(frozen=True)
class SeminormResult:
    p_n: float
    q_m: float
    q_argmax: float
    p_tail_ratio: float


def polar_density(u):
    """Invariant density in the polar radius for ``sl2_gk``."""
    return 2.0 * math.pi * np.sinh(2.0 * np.asarray(u, dtype=float))


def _w(u):
    return SQRT2 * u


def _check_real(real: MatrixRealization | None):
    if real is not None and real.name != "sl2_gk":
        raise ValueError("radial seminorms are implemented for sl2_gk")


def seminorm_p(profile, n: float, *, u_first: float = 4.0, u_max: float = 256.0,
               rel_tol: float = 1e-10) -> tuple[float, float]:
    """``p_n`` by dyadic-segment quadrature with a tail test.

    Segments ``[U/2, U]`` are integrated until their contributions shrink
    geometrically; the remaining tail is extrapolated from the last ratio.

    Returns
    -------
    value, tail_ratio

    Raises
    ------
    NonConvergenceError
        When the segment contributions stop shrinking (divergent integral).
    """
    def integrand(u):
        # (f e^u)^2 pi (1 - e^{-4u}) is |f|^2 2 pi sinh(2u) without overflow
        g = float(profile(np.array([u]))[0]) * math.exp(u)
        return g * g * (1.0 + _w(u)) ** (2 * n) * math.pi * -math.expm1(-4.0 * u)

    total, _ = integrate.quad(integrand, 0.0, u_first, limit=400, epsabs=0.0, epsrel=1e-12)
    segs = []
    hi = u_first
    while hi < u_max:
        lo, hi = hi, 2 * hi
        seg, _ = integrate.quad(integrand, lo, hi, limit=400, epsabs=0.0, epsrel=1e-12)
        segs.append(seg)
        total += seg
        if len(segs) >= 3 and total > 0:
            r1 = segs[-1] / segs[-2] if segs[-2] > 0 else 0.0
            r2 = segs[-2] / segs[-3] if segs[-3] > 0 else 0.0
            if segs[-1] <= rel_tol * total:
                return math.sqrt(total), r1
            if r1 < 0.9 and r2 < 0.9:
                # power-law tails have ratios r + O(2^-k); remove the first-order drift
                r = min(max(2 * r1 - r2, 0.0), r1) if r2 > r1 else r1
                tail = segs[-1] * r / (1 - r)
                if tail <= 1e-3 * total or hi >= u_max:
                    return math.sqrt(total + tail), r1
    ratio = segs[-1] / segs[-2] if len(segs) > 1 and segs[-2] > 0 else float("inf")
    raise NonConvergenceError(
        f"p_{n} integral of {getattr(profile, 'name', 'f')} does not converge "
        f"(segment ratio {ratio:.3g} at u = {u_max:g})"
    )


def seminorm_q(profile, m: float, *, u_max: float = 200.0) -> tuple[float, float]:
    """``q_m`` as a grid maximum refined by a bounded scalar search.

    Raises
    ------
    NonConvergenceError
        When the weighted profile is still growing at the end of the grid.
    """
    def h(u):
        u = np.asarray(u, dtype=float)
        return np.abs(profile(u)) * np.exp(u) * (1.0 + _w(u)) ** m

    grid = np.concatenate([np.linspace(0.0, 10.0, 4001), np.geomspace(10.0, u_max, 2000)[1:]])
    vals = h(grid)
    i = int(np.argmax(vals))
    if i >= len(grid) - 2:
        tail_growth = (vals[-1] - h(u_max / 2)) / max(vals[-1], 1e-300)
        if tail_growth > 1e-9:
            raise NonConvergenceError(
                f"q_{m} of {getattr(profile, 'name', 'f')} is unbounded (still growing at u = {u_max:g})"
            )
        return float(vals[-1]), float(grid[-1])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = optimize.minimize_scalar(lambda u: -float(h(u)), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-12})
    best_u, best = (res.x, -res.fun) if -res.fun >= vals[i] else (grid[i], vals[i])
    return float(best), float(best_u)


def schwartz_seminorms(profile, n: float, m: float, real: MatrixRealization | None = None) -> SeminormResult:
    """``(p_n, q_m)`` for a radial profile on ``sl2_gk``."""
    _check_real(real)
    p, ratio = seminorm_p(profile, n)
    q, arg = seminorm_q(profile, m)
    return SeminormResult(p, q, arg, ratio)


def comparison_constant(n: float, m: float) -> float:
    """``C`` with ``p_n(f) <= C q_m(f)`` for every radial ``f``.

    From ``|f| <= q_m v^{-1/2} (1+w)^{-m}``:
    ``C^2 = int v^{-1} (1+w)^{2n-2m} dz``, finite iff ``2m - 2n > 1``.
    """
    prof = RadialProfile("envelope", lambda u: np.exp(-u) * (1.0 + _w(u)) ** (-m))
    return seminorm_p(prof, n)[0]


def standard_profiles() -> list[RadialProfile]:
    """Ten smooth radial test functions with different decay mechanisms."""
    w = _w
    return [
        RadialProfile("gauss", lambda u: np.exp(-w(u) ** 2), "exp(-w^2)"),
        RadialProfile("exp_w", lambda u: np.exp(-w(u)), "exp(-w)"),
        RadialProfile("sech", lambda u: 1.0 / np.cosh(2 * u), "1/cosh(2u)"),
        RadialProfile("poly3", lambda u: np.exp(-u) * (1 + w(u)) ** -3, "v^-1/2 (1+w)^-3"),
        RadialProfile("poly4", lambda u: np.exp(-u) * (1 + w(u)) ** -4, "v^-1/2 (1+w)^-4"),
        RadialProfile("poly5", lambda u: np.exp(-u) * (1 + w(u)) ** -5, "v^-1/2 (1+w)^-5"),
        RadialProfile("slow_exp", lambda u: np.exp(-1.5 * u), "v^-1/2 exp(-u/2)"),
        RadialProfile(
            "wave4", lambda u: np.exp(-u) * (1 + w(u)) ** -4 * np.cos(3 * u),
            "v^-1/2 (1+w)^-4 cos(3u)",
        ),
        RadialProfile("gauss_shift", lambda u: np.exp(-(w(u) - 2.0) ** 2), "exp(-(w-2)^2)"),
        RadialProfile("v_inv", lambda u: np.exp(-2 * u) * (1 + w(u)) ** 2, "v^-1 (1+w)^2"),
    ]
