"""Monte-Carlo ball volumes, growth scans and the polar weights ``w`` and ``v``.

Two rank-one models are supported, both inside ``SL(2, R)``:

``sl2_gk``
    ``Z = G/K`` (upper half-plane). Points are written ``k_phi exp(-u H) . z0``
    with ``phi in [0, pi)``, ``u >= 0``; the invariant density in the
    Iwasawa chart ``z = n_s exp(yH) . z0`` is ``exp(-2y) ds dy``.
``dS2``
    ``Z = G/SO(1,1)`` realized as ``Ad(G) X0`` with ``X0 = E + F``. Points
    are ``Ad(k_phi exp(uH)) X0``; the chart ``Z = [[p, q], [r, -p]]`` carries
    ``dp dr / (2|r|)``, which equals ``exp(-2y) ds dy`` on the base orbit.

The sampling density in ``(phi, u)`` is obtained from the chart density by a
numerical Jacobian, so the estimator never relies on a closed-form polar
density. Random numbers come from Philox streams keyed by
``(seed, shell, block)`` with a fixed block size; estimates are therefore
bit-identical for any number of workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .realizations import MatrixRealization, rot

__all__ = [
    "BallSpec",
    "WeightSample",
    "VolumeEstimate",
    "GrowthScan",
    "NonConvergenceError",
    "ball_volume",
    "growth_scan",
    "weights_at",
    "sup_weight",
    "min_norm_over_h",
    "analytic_ball_volume",
    "volume_lemma_check",
    "BLOCK",
]

BLOCK = 8192
_GOLD = (math.sqrt(5) - 1) / 2


class NonConvergenceError(RuntimeError):
    """A numeric procedure did not reach its convergence criterion."""


@dataclass(frozen=True)
class BallSpec:
    """``B = {g : max(||g||_op, ||g^-1||_op) <= R}``."""

    R: float = 2.0

    def __post_init__(self):
        if not self.R > 1:
            raise ValueError("ball radius R must exceed 1")

    @property
    def log_r(self) -> float:
        return math.log(self.R)

    def contains(self, g) -> bool:
        g = np.asarray(g, dtype=float)
        return max(np.linalg.norm(g, 2), np.linalg.norm(np.linalg.inv(g), 2)) <= self.R


class WeightSample(NamedTuple):
    point: np.ndarray
    w_value: float
    v_value: float


class VolumeEstimate(NamedTuple):
    estimate: float
    stderr: float


@dataclass(frozen=True)
class GrowthScan:
    rows: tuple  # dicts with t, estimate, stderr, analytic_reference
    slope: float
    slope_stderr: float
    intercept: float
    expected_slope: float
    band_ratio: float
    meta: dict = field(default_factory=dict)


# -- 2x2 helpers ----------------------------------------------------------------------

def _op_norm_det1(m: np.ndarray) -> np.ndarray:
    """Operator norm of a batch of 2x2 matrices with determinant 1."""
    f = np.einsum("...ij,...ij->...", m, m)
    return np.sqrt((f + np.sqrt(np.maximum(f * f - 4.0, 0.0))) / 2.0)


def _frob2(m: np.ndarray) -> np.ndarray:
    return np.einsum("...ij,...ij->...", m, m)


def _kmat(phi: np.ndarray) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2)


def _amat(u: np.ndarray) -> np.ndarray:
    z = np.zeros_like(u)
    return np.stack([np.stack([np.exp(u), z], -1), np.stack([z, np.exp(-u)], -1)], -2)


def _hline(s: np.ndarray) -> np.ndarray:
    c, sh = np.cosh(s), np.sinh(s)
    return np.stack([np.stack([c, sh], -1), np.stack([sh, c], -1)], -2)


def _golden(f, lo: np.ndarray, hi: np.ndarray, iters: int = 60) -> np.ndarray:
    """Vectorized golden-section minimization; returns the minimal values."""
    a, b = lo.copy(), hi.copy()
    for _ in range(iters):
        c = b - _GOLD * (b - a)
        d = a + _GOLD * (b - a)
        left = f(c) < f(d)
        b = np.where(left, d, b)
        a = np.where(left, a, c)
    return f((a + b) / 2)


def min_norm_over_h(real: MatrixRealization, g: np.ndarray, right: np.ndarray) -> np.ndarray:
    """``min_h ||g h right||_op`` over ``H`` for a batch of 2x2 ``g``.

    For ``SL(2)`` the inverse has the same norm, so this is also the
    minimum of ``max(||g h right||, ||right^-1 h^-1 g^-1||)``. ``H = SO(2)``
    uses a 64-point grid refined by golden section; ``H = SO(1,1)`` uses a
    golden-section search inside an expanding bracket.
    """
    g = np.asarray(g, dtype=float).reshape(-1, 2, 2)
    right = np.asarray(right, dtype=float)
    if real.h_kind == "circle":
        grid = np.linspace(0.0, np.pi, 64, endpoint=False)
        vals = _frob2(g[:, None] @ _kmat(grid)[None] @ right)
        best = grid[np.argmin(vals, axis=1)]
        step = np.pi / 64

        def f(th):
            return _frob2(g @ _kmat(th) @ right)

        fmin = _golden(f, best - step, best + step)
    elif real.h_kind == "line":

        def f(s):
            return _frob2(g @ _hline(s) @ right)

        # Frobenius^2 is a cosh 2s + b sinh 2s + c with a > |b|: convex in s
        lo, hi = -np.ones(len(g)), np.ones(len(g))
        for _ in range(60):
            grow_lo = f(lo) < f(lo + 1e-3)
            grow_hi = f(hi) < f(hi - 1e-3)
            if not (grow_lo.any() or grow_hi.any()):
                break
            lo = np.where(grow_lo, 2 * lo - 1, lo)
            hi = np.where(grow_hi, 2 * hi + 1, hi)
        fmin = _golden(f, lo, hi, iters=90)
    else:
        raise ValueError(f"{real.name}: membership needs a one-parameter H")
    f2 = np.maximum(fmin, 2.0)
    return np.sqrt((f2 + np.sqrt(f2 * f2 - 4.0)) / 2.0)


# -- models ---------------------------------------------------------------------------

def _model(real: MatrixRealization):
    if real.name == "sl2_gk":
        return _GKModel()
    if real.name == "dS2":
        return _DSModel()
    raise ValueError(f"ball volumes are implemented for sl2_gk and dS2, not {real.name}")


class _GKModel:
    """Upper half-plane; sample ``g = k_phi exp(-uH)``, ``u >= 0``."""

    symmetric_u = False

    def group(self, phi, u):
        return _kmat(phi) @ _amat(-u)

    def chart(self, phi, u):
        g = self.group(phi, u)
        a, b, c, d = g[..., 0, 0], g[..., 0, 1], g[..., 1, 0], g[..., 1, 1]
        den = c * c + d * d
        s = (a * c + b * d) / den
        y = 0.5 * np.log(1.0 / den)  # Im(g.i) = 1/(c^2 + d^2) for det 1
        return s, y

    def density(self, s, y):
        return np.exp(-2.0 * y)

    def u_range(self, t: float, log_r: float, margin: float):
        return max(0.0, t - log_r - margin), t + log_r + margin


class _DSModel:
    """Adjoint orbit of ``X0 = E + F``; sample ``g = k_phi exp(uH)``, ``u`` real."""

    symmetric_u = True

    def group(self, phi, u):
        return _kmat(phi) @ _amat(u)

    def chart(self, phi, u):
        g = self.group(phi, u)
        x0 = np.array([[0.0, 1.0], [1.0, 0.0]])
        ginv = np.linalg.inv(g)
        z = g @ x0 @ ginv
        return z[..., 0, 0], z[..., 1, 0]

    def density(self, p, r):
        return 1.0 / (2.0 * np.abs(r))

    def u_range(self, t: float, log_r: float, margin: float):
        return 0.0, t + log_r + margin


def _chart_weight(model, phi, u, h: float = 1e-6):
    """Invariant density at ``(phi, u)`` times ``|d chart / d(phi, u)|``."""
    c0 = model.chart(phi, u)
    dp = [(a - b) / (2 * h) for a, b in zip(model.chart(phi + h, u), model.chart(phi - h, u))]
    du = [(a - b) / (2 * h) for a, b in zip(model.chart(phi, u + h), model.chart(phi, u - h))]
    jac = np.abs(dp[0] * du[1] - dp[1] * du[0])
    return model.density(*c0) * jac


def _stream(seed: int, shell: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(shell), int(block)))
    return np.random.Generator(np.random.Philox(ss))


def _sample_u(rng, n, lo, hi, symmetric):
    """Draw ``|u|`` in [lo, hi] with density proportional to exp(2|u|)."""
    v = rng.random(n)
    e_lo, e_hi = math.exp(2 * lo), math.exp(2 * hi)
    mag = 0.5 * np.log(e_lo + v * (e_hi - e_lo))
    norm = (e_hi - e_lo) / 2.0
    if symmetric:
        sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        return sign * mag, np.exp(2 * mag) / (2 * norm)
    return mag, np.exp(2 * mag) / norm


def _block_sums(real, model, x, ball, seed, shell, block, n, margin):
    rng = _stream(seed, shell, block)
    t = abs(float(np.asarray(x, dtype=float).ravel()[0]))
    lo, hi = model.u_range(t, ball.log_r, margin)
    phi = rng.random(n) * np.pi
    u, q_u = _sample_u(rng, n, lo, hi, model.symmetric_u)
    q = q_u / np.pi
    g = model.group(phi, u)
    right = np.linalg.inv(real.exp_a(x))
    inside = min_norm_over_h(real, g, right) <= ball.R
    w = np.where(inside, _chart_weight(model, phi, u) / q, 0.0)
    return math.fsum(w.tolist()), math.fsum((w * w).tolist())


def ball_volume(
    real: MatrixRealization,
    x,
    ball: BallSpec,
    n_samples: int,
    seed: int,
    *,
    shell: int = 0,
    workers: int = 1,
    margin: float = 0.05,
) -> VolumeEstimate:
    """Importance-sampled ``vol_Z(B exp(X) . z0)`` with its standard error.

    Membership of ``z = g . z0`` is decided by
    ``min_h ||g h exp(-X)||_op <= R``. Samples are drawn in blocks of
    :data:`BLOCK`; block ``b`` uses the stream ``(seed, shell, b)``.

    Raises
    ------
    ValueError
        If ``n_samples < 1000`` or the realization has no membership test.
    """
    if n_samples < 1000:
        raise ValueError("n_samples must be at least 1000")
    model = _model(real)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    sizes = [BLOCK] * (n_samples // BLOCK)
    if n_samples % BLOCK:
        sizes.append(n_samples % BLOCK)
    jobs = [(b, n) for b, n in enumerate(sizes)]

    def run(job):
        b, n = job
        return _block_sums(real, model, x, ball, seed, shell, b, n, margin)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    s1 = math.fsum(p[0] for p in parts)
    s2 = math.fsum(p[1] for p in parts)
    mean = s1 / n_samples
    var = max(s2 / n_samples - mean * mean, 0.0) * n_samples / (n_samples - 1)
    return VolumeEstimate(mean, math.sqrt(var / n_samples))


def analytic_ball_volume(real: MatrixRealization, x, ball: BallSpec) -> float:
    """Closed form for ``sl2_gk`` in the ``exp(-2y) ds dy`` normalization; NaN otherwise.

    ``B exp(X) . z0`` is the hyperbolic annulus (or disk) around ``z0`` with
    radii ``2|x| -+ 2 log R``.
    """
    if real.name != "sl2_gk":
        return float("nan")
    t = abs(float(np.asarray(x, dtype=float).ravel()[0]))
    lr = ball.log_r
    if t >= lr:
        return 2 * math.pi * math.sinh(2 * t) * math.sinh(2 * lr)
    return math.pi * (math.cosh(2 * t + 2 * lr) - 1.0)


def growth_scan(
    real: MatrixRealization,
    direction,
    ts: Sequence[float],
    ball: BallSpec,
    n_samples: int,
    seed: int,
    *,
    workers: int = 1,
) -> GrowthScan:
    """Ball volumes along ``t * direction`` and the least-squares log-slope.

    The expected slope is ``-2 rho_u(direction)``; ``band_ratio`` is
    ``max C(t) / min C(t)`` for ``C(t) = v(t) exp(-expected * t)``.
    """
    from ..catalog import catalog
    from ..spherical import rho_u

    desc = catalog(real.descriptor)
    rho = np.array([float(c) for c in rho_u(desc)])
    direction = np.atleast_1d(np.asarray(direction, dtype=float))
    expected = float(-2.0 * rho @ direction)
    rows, logs, rel = [], [], []
    for i, t in enumerate(ts):
        est = ball_volume(real, t * direction, ball, n_samples, seed, shell=i, workers=workers)
        rows.append({
            "t": float(t),
            "estimate": est.estimate,
            "stderr": est.stderr,
            "analytic_reference": analytic_ball_volume(real, t * direction, ball),
        })
        logs.append(math.log(est.estimate))
        rel.append(est.stderr / est.estimate)
    tt = np.asarray(ts, dtype=float)
    lg = np.asarray(logs)
    tc = tt - tt.mean()
    coef = tc / float(tc @ tc)
    slope = float(coef @ lg)
    intercept = float(lg.mean() - slope * tt.mean())
    slope_se = float(math.sqrt(float(np.sum((coef * np.asarray(rel)) ** 2))))
    c = np.exp(lg - expected * tt)
    return GrowthScan(
        tuple(rows), slope, slope_se, intercept, expected, float(c.max() / c.min()),
        {"R": ball.R, "n_samples": n_samples, "seed": seed, "direction": direction.tolist()},
    )


# -- weights --------------------------------------------------------------------------

def _gram_norm(real: MatrixRealization, x) -> float:
    from ..catalog import catalog

    gram = np.array(catalog(real.descriptor).datum.gram, dtype=float)
    x = np.asarray(x, dtype=float)
    return float(math.sqrt(x @ gram @ x))


def weights_at(g, real: MatrixRealization, ball: BallSpec | None = None) -> WeightSample:
    """Polar weights at ``g . z0``: ``w = ||X||`` and ``v = exp(-2 rho_u(X))``.

    ``X`` is the canonical polar coordinate, so ``w`` is the proxy for the
    sup-based weight; the two differ by a bounded amount (see
    :func:`sup_weight`). ``ball`` is accepted for interface symmetry.
    """
    from ..catalog import catalog
    from ..spherical import rho_u
    from .decompositions import polar_coordinate

    x = polar_coordinate(g, real)
    rho = np.array([float(c) for c in rho_u(catalog(real.descriptor))])
    return WeightSample(x, _gram_norm(real, x), float(math.exp(-2.0 * rho @ x)))


def sup_weight(g, real: MatrixRealization, ball: BallSpec, tol: float = 1e-10) -> float:
    """``sup ||X'||`` over presentations ``g . z0 = omega exp(X') . z0``, ``omega`` in B.

    A presentation with ``X' = -sH`` exists iff ``min_h ||g h exp(sH)|| <= R``;
    the feasible ``s`` form an interval around the canonical polar
    coordinate, whose right end is found by bracketing and bisection.
    """
    if real.h_kind != "circle":
        raise ValueError("sup_weight is implemented for G/K realizations")
    g = np.asarray(g, dtype=float)
    x = polar_coordinate_1d(g, real)
    h_mat = real.a[0]

    def feasible(s: float) -> bool:
        right = np.diag(np.exp(s * np.diag(h_mat)))
        return bool(min_norm_over_h(real, g[None], right)[0] <= ball.R)

    lo = abs(x)
    if not feasible(lo):
        raise NonConvergenceError("canonical presentation not found inside the ball")
    step = max(ball.log_r, 0.1)
    hi = lo + step
    while feasible(hi):
        lo, hi = hi, hi + step
    while hi - lo > tol:
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if feasible(mid) else (lo, mid)
    return _gram_norm(real, [lo])


def polar_coordinate_1d(g, real: MatrixRealization) -> float:
    from .decompositions import polar_coordinate

    return float(polar_coordinate(g, real)[0])


# -- volume inequality -----------------------------------------------------------------

def volume_lemma_check(
    real: MatrixRealization,
    box: Sequence[Sequence[float]],
    d_interval: Sequence[float],
    n_samples: int,
    seed: int,
) -> dict:
    """Compare ``vol_Z(U z0) vol_H(D)`` with ``vol_G(U D)`` for ``sl2_gk``.

    ``U = {n_s exp(yH) k_theta}`` over the box ``[(s0, s1), (y0, y1),
    (theta0, theta1)]`` and ``D = {k_delta : delta in d_interval}``. The left
    side is a closed-form integral; the right side is a Monte-Carlo estimate
    over ``G = NAK`` with Haar density ``exp(-2y) ds dy dtheta``, where
    membership in ``U D`` is decided numerically from the Iwasawa
    decomposition of ``g k_{-delta}`` over a grid of ``delta``.
    """
    if real.name != "sl2_gk":
        raise ValueError("volume_lemma_check is implemented for sl2_gk")
    (s0, s1), (y0, y1), (th0, th1) = box
    d0, d1 = d_interval
    vol_z = (s1 - s0) * (math.exp(-2 * y0) - math.exp(-2 * y1)) / 2.0
    lhs = vol_z * (d1 - d0)
    rng = _stream(seed, 0, 0)
    m = 0.05
    lo = np.array([s0 - m, y0 - m, th0 + d0 - m])
    hi = np.array([s1 + m, y1 + m, th1 + d1 + m])
    pts = lo + (hi - lo) * rng.random((n_samples, 3))
    s, y, th = pts.T
    nmat = np.zeros((n_samples, 2, 2))
    nmat[:, 0, 0] = nmat[:, 1, 1] = 1.0
    nmat[:, 0, 1] = s
    g = nmat @ _amat(y) @ _kmat(th)
    deltas = np.linspace(d0, d1, 201)
    inside = np.zeros(n_samples, dtype=bool)
    for dl in deltas:
        gk = g @ rot(-dl)
        # NAK coordinates of gk: rows of the K part via QR of the inverse transpose
        q, r = np.linalg.qr(np.linalg.inv(gk))
        sign = np.sign(np.einsum("...ii->...i", r))
        r = sign[..., :, None] * r
        q = q * sign[..., None, :]
        a_inv = np.einsum("...ii->...i", r)
        yy = -np.log(a_inv[:, 0])
        kmat = np.linalg.inv(q)
        tt = np.arctan2(kmat[:, 1, 0], kmat[:, 0, 0])
        nn = np.linalg.inv(r / a_inv[..., :, None])
        ss = nn[:, 0, 1]
        inside |= (
            (ss >= s0) & (ss <= s1) & (yy >= y0) & (yy <= y1) & (tt >= th0) & (tt <= th1)
        )
    w = np.where(inside, np.exp(-2 * y), 0.0) * float(np.prod(hi - lo))
    rhs = float(w.mean())
    rhs_se = float(w.std(ddof=1) / math.sqrt(n_samples))
    return {"lhs": lhs, "rhs": rhs, "rhs_stderr": rhs_se, "holds": lhs <= rhs + 3 * rhs_se}
