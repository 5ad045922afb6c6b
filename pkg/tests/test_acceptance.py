"""Acceptance criteria 1-10, each at its stated tolerance and runtime budget.

Every criterion records one pass/fail line that pytest prints in the
"acceptance criteria" summary section.
"""
import math
import random
import time
from fractions import Fraction as F

import numpy as np

from realspherical.catalog import catalog, catalog_names
from realspherical.cones import Cone, Lattice, dual_cone, weighted_cone_sum
from realspherical.integrability import (
    ExponentProfile,
    desc_gram_on_quotient,
    enumerate_factorizations,
    exponent_pieces,
    lp_threshold,
    property_I_check,
)
from realspherical.numerics import BallSpec, growth_scan, realization, subalgebra_limit_scan, sup_weight
from realspherical.numerics.realizations import rot
from realspherical.numerics.seminorms import comparison_constant, schwartz_seminorms, standard_profiles
from realspherical.numerics.volume import NonConvergenceError
from realspherical.spherical import compression_cone, is_wavefront, rho_u, validate

from conftest import random_cone_generators, record
from helpers import random_interior_lambda, random_wavefront_descriptor


def _finish(k: int, ok: bool, detail: str, start: float, budget: float):
    elapsed = time.perf_counter() - start
    within = elapsed < budget
    record(k, ok and within, f"{detail}; {elapsed:.1f}s (budget {budget:g}s)")
    assert ok, detail
    assert within, f"runtime {elapsed:.1f}s exceeds {budget:g}s"


def test_criterion_1_exact_invariants():
    start = time.perf_counter()
    bad = {n: validate(catalog(n)) for n in catalog_names() if validate(catalog(n))}
    rho_bad = [n for n in catalog_names()
               if any(sum(a * b for a, b in zip(rho_u(catalog(n)), v)) != 0 for v in catalog(n).a_H.basis)]
    r = random.Random(1)
    dual_bad = 0
    for _ in range(100):
        n = r.randint(1, 4)
        c = Cone.from_generators(random_cone_generators(r, n, r.randint(1, 6)), n)
        dual_bad += dual_cone(dual_cone(c)) != c
    ok = not bad and not rho_bad and dual_bad == 0
    _finish(1, ok, f"validate failures {sorted(bad)}, rho_u on a_H failures {rho_bad}, "
                   f"double-dual failures {dual_bad}/100", start, 10)


def test_criterion_2_wavefront_verdicts():
    start = time.perf_counter()
    sym = {n: is_wavefront(catalog(n)) for n in catalog_names() if catalog(n).symmetric}
    so8c = is_wavefront(catalog("so8c_g2"))
    ok = all(sym.values()) and so8c is False
    _finish(2, ok, f"symmetric entries {sym}, so8c_g2 {so8c}", start, 1)


def test_criterion_3_factorizations():
    start = time.perf_counter()
    triple = [(r.subset, r.dim_h_star) for r in enumerate_factorizations(catalog("triple_sl2"))
              if r.classification == "proper-basic"]
    pair = [r.subset for r in enumerate_factorizations(catalog("pair_sl2"))
            if r.classification in ("proper-basic", "co-compact")]
    ok = len(triple) == 3 and all(d == 6 for _, d in triple) and not pair
    _finish(3, ok, f"triple_sl2 proper basic {triple}, pair_sl2 proper {pair}", start, 1)


SUM_CONES = {
    1: Cone.from_inequalities([(-1,)], 1),
    2: Cone.from_inequalities([(-1, 0), (0, -1)], 2),
}


def _increments_beyond(d: int, s: int, r_max: float = 1024, beyond: float = 40):
    rep = weighted_cone_sum(Lattice.standard(d), SUM_CONES[d], [(0,) * d], -s, r_max, analytic=False)
    radii = [r for r, _ in rep.partial_sums]
    # increment i is the shell radii[i] < ||x|| <= radii[i+1]
    return [inc for r, inc in zip(radii, rep.increments) if r >= beyond]


def test_criterion_4_summability():
    start = time.perf_counter()
    lines, ok = [], True
    for d in (1, 2):
        conv = _increments_beyond(d, d + 1)
        div = _increments_beyond(d, d)
        c_ok = all(x < 1e-6 for x in conv)
        d_ok = all(x > 1e-3 for x in div)
        ok &= c_ok and d_ok
        lines.append(f"d={d}: s=d+1 max increment {max(conv):.2e} ({'ok' if c_ok else '>= 1e-6'}), "
                     f"s=d min increment {min(div):.2e} ({'ok' if d_ok else '<= 1e-3'})")
    _finish(4, ok, "; ".join(lines), start, 30)


def _empirically_converges(desc, lam, p, r_max) -> bool:
    cone = compression_cone(desc)
    rep = weighted_cone_sum(Lattice.standard(cone.ambient_dim), cone, exponent_pieces(desc, lam, p), 0,
                            r_max, norm=desc_gram_on_quotient(desc), analytic=False)
    return rep.verdict == "empirical-converges"


def _empirical_transition(desc, lam, lo=F(1), hi=F(8), tol=F(1, 64)):
    r_max = 2 ** 14 if compression_cone(desc).ambient_dim == 1 else 4096
    if _empirically_converges(desc, lam, lo, r_max) or not _empirically_converges(desc, lam, hi, r_max):
        return None
    while hi - lo > tol:
        mid = (lo + hi) / 2
        lo, hi = (lo, mid) if _empirically_converges(desc, lam, mid, r_max) else (mid, hi)
    return (lo + hi) / 2


def test_criterion_5_threshold_consistency():
    start = time.perf_counter()
    sl2 = catalog("sl2_gk")
    p_sl2 = lp_threshold(sl2, ExponentProfile(sl2.datum.rho(), 0), verify=False).p_star
    r = random.Random(2024)
    rows = []
    while len(rows) < 5:
        desc = random_wavefront_descriptor(r)
        lam = random_interior_lambda(r, desc)
        p_star = lp_threshold(desc, ExponentProfile(lam, 0), verify=False).p_star
        if p_star in ("all", "none") or p_star > 6:
            continue  # no interior transition to locate in [1, 8]
        rows.append((desc.name, p_star, _empirical_transition(desc, lam)))
    gaps = [None if t is None else abs(float(t - p)) for _, p, t in rows]
    ok = p_sl2 == 2 and all(g is not None and g <= 0.1 for g in gaps)
    detail = ", ".join(f"{n}: p*={p} empirical={'n/a' if t is None else f'{float(t):.3f}'}"
                       for n, p, t in rows)
    _finish(5, ok, f"sl2_gk p*={p_sl2}; {detail}", start, 120)


def test_criterion_6_volume_growth():
    start = time.perf_counter()
    ts = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
    scan = growth_scan(realization("sl2_gk"), [-1.0], ts, BallSpec(2.0), 100_000, seed=0)
    ok = abs(scan.slope - 2.0) <= 0.2 and scan.band_ratio <= 5
    _finish(6, ok, f"slope {scan.slope:.4f} +- {scan.slope_stderr:.4f} (target 2 +- 10%), "
                   f"band ratio {scan.band_ratio:.3f}", start, 300)


def test_criterion_7_limiting_subalgebra():
    start = time.perf_counter()
    real, desc = realization("dS2"), catalog("dS2")
    ts = list(range(0, 21))
    inward = subalgebra_limit_scan(real, desc, [-1.0], ts)
    outward = subalgebra_limit_scan(real, desc, [1.0], ts)
    tail = inward[5:]
    mono = all(b < a for a, b in zip(tail, tail[1:]))
    ok = inward[-1] < 1e-6 and mono and min(outward) > 1e-2
    _finish(7, ok, f"distance at t=20 {inward[-1]:.2e}, monotone for t>=5 {mono}, "
                   f"opposite direction min {min(outward):.3f}", start, 10)


# frozen before sampling: w_sup lies in [||X||, ||X|| + 2 sqrt(2) log R] for omega in B
FROZEN_C = 2 * math.sqrt(2) * math.log(2.0)


def test_criterion_8_weight_bracket():
    start = time.perf_counter()
    real, ball = realization("sl2_gk"), BallSpec(2.0)
    rng = np.random.default_rng(8)
    worst, violations = 0.0, 0
    for _ in range(1000):
        # omega = k1 a k2 with |log a| <= log R lies in B
        s = rng.uniform(-ball.log_r, ball.log_r)
        omega = rot(rng.uniform(0, 2 * np.pi)) @ np.diag([math.exp(s), math.exp(-s)]) @ rot(rng.uniform(0, 2 * np.pi))
        t = rng.uniform(0, 5)
        g = omega @ np.diag([math.exp(-t), math.exp(t)])
        norm_x = math.sqrt(2) * t
        gap = abs(sup_weight(g, real, ball) - norm_x)
        worst = max(worst, gap)
        violations += gap > FROZEN_C
    _finish(8, violations == 0, f"max |w - ||X||| = {worst:.4f}, C(B) = {FROZEN_C:.4f}, "
                                f"violations {violations}/1000", start, 120)


def test_criterion_9_schwartz_comparison():
    start = time.perf_counter()
    c = comparison_constant(0, 2)  # depends on m - n only and decreases in it
    finite, unbounded_q, violations = 0, 0, []
    for prof in standard_profiles():
        for n in (0, 1, 2):
            for m in (n + 2, n + 3):
                try:
                    res = schwartz_seminorms(prof, n, m)
                except NonConvergenceError:
                    unbounded_q += 1  # q_m = inf, the inequality holds trivially
                    continue
                finite += 1
                if res.p_n > c * res.q_m * (1 + 1e-9):
                    violations.append((prof.name, n, m))
    _finish(9, not violations, f"C = {c:.6f}, {finite} finite cases and {unbounded_q} with q_m = inf, "
                               f"violations {violations}",
            start, 60)


def test_criterion_10_property_i_traces():
    start = time.perf_counter()
    d = catalog("triple_sl2")
    prof = ExponentProfile(d.datum.rho(), 0)
    full = property_I_check(d, None, prof)
    one = property_I_check(d, {"1": False}, prof)
    want_full = (("co-compact", "triple_sl2", (), 3),)
    want_one = (("basic", "triple_sl2", ("1",), 6), ("co-compact", "group_sl2", (), 3))
    got_full = tuple((s.kind, s.space, s.added, s.dim_h_star) for s in full.steps)
    got_one = tuple((s.kind, s.space, s.added, s.dim_h_star) for s in one.steps)
    ok = (full.verdict == "holds" and isinstance(full.p, F) and got_full == want_full
          and one.verdict == "holds" and got_one == want_one)
    _finish(10, ok, f"all nontrivial {full.verdict} p={full.p} {got_full}; "
                    f"trivial on 1 {one.verdict} {got_one}", start, 10)
