import math

import mpmath as mp
import numpy as np
import pytest

from realspherical.numerics import NonConvergenceError, realization
from realspherical.numerics.seminorms import (
    RadialProfile,
    comparison_constant,
    polar_density,
    schwartz_seminorms,
    seminorm_p,
    seminorm_q,
    standard_profiles,
)

mp.mp.dps = 30


def mp_p(f_mp, n):
    """mpmath oracle for p_n with the polar density 2 pi sinh(2u)."""
    w = lambda u: mp.sqrt(2) * u
    val = mp.quad(lambda u: f_mp(u) ** 2 * (1 + w(u)) ** (2 * n) * 2 * mp.pi * mp.sinh(2 * u),
                  [0, 1, 4, 16, 64, mp.inf])
    return float(mp.sqrt(val))


ORACLES = {
    "gauss": lambda u: mp.exp(-2 * u * u),
    "sech": lambda u: 1 / mp.cosh(2 * u),
    "poly4": lambda u: mp.exp(-u) * (1 + mp.sqrt(2) * u) ** -4,
    "slow_exp": lambda u: mp.exp(-1.5 * u),
    "gauss_shift": lambda u: mp.exp(-(mp.sqrt(2) * u - 2) ** 2),
}


@pytest.mark.parametrize("name", sorted(ORACLES))
@pytest.mark.parametrize("n", [0, 1])
def test_p_matches_mpmath(name, n):
    prof = {p.name: p for p in standard_profiles()}[name]
    got, _ = seminorm_p(prof, n)
    assert got == pytest.approx(mp_p(ORACLES[name], n), rel=1e-6)


def test_gauss_profile_finite():
    prof = standard_profiles()[0]
    res = schwartz_seminorms(prof, 0, 0)
    assert res.p_n > 0 and math.isfinite(res.q_m)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_power_profile_finite_iff_dimension_condition(k):
    # f = v^{-1/2}(1+w)^{-k}: p_n finite iff 2k - 2n > dim a_Z = 1
    prof = RadialProfile(f"pow{k}", lambda u, k=k: np.exp(-u) * (1 + math.sqrt(2) * u) ** -k)
    for n in range(0, k + 1):
        if 2 * k - 2 * n > 1:
            val, _ = seminorm_p(prof, n)
            # closed-form 1D oracle: int pi (1 - e^{-4u}) (1 + sqrt2 u)^{2n-2k} du
            want = mp.quad(lambda u: mp.pi * (1 - mp.exp(-4 * u)) * (1 + mp.sqrt(2) * u) ** (2 * n - 2 * k),
                           [0, 1, 10, 100, mp.inf])
            assert val == pytest.approx(float(mp.sqrt(want)), rel=1e-5)
        else:
            with pytest.raises(NonConvergenceError):
                seminorm_p(prof, n)


def test_q_of_envelope_is_one():
    for m in (1, 2, 3):
        env = RadialProfile("env", lambda u, m=m: np.exp(-u) * (1 + math.sqrt(2) * u) ** -m)
        q, _ = seminorm_q(env, m)
        assert q == pytest.approx(1.0, rel=1e-12)


def test_q_unbounded_raises():
    with pytest.raises(NonConvergenceError):
        seminorm_q(RadialProfile("flat", lambda u: np.ones_like(u)), 0)


def test_comparison_constant_bounds_profiles():
    c = comparison_constant(0, 2)
    for prof in standard_profiles():
        res = schwartz_seminorms(prof, 0, 2)
        assert res.p_n <= c * res.q_m * (1 + 1e-9)


def test_polar_density_value():
    assert polar_density(1.0) == pytest.approx(2 * math.pi * math.sinh(2.0))


def test_other_realizations_rejected():
    with pytest.raises(ValueError):
        schwartz_seminorms(standard_profiles()[0], 0, 2, realization("dS2"))
