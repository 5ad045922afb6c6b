import numpy as np
import pytest
from hypothesis import given, strategies as st

from realspherical.catalog import catalog
from realspherical.spherical import compression_cone
from realspherical.numerics import (
    iwasawa,
    limit_subalgebra,
    polar_coordinate,
    realization,
    sphericality_check,
    subalgebra_limit_scan,
    unimodularity_check,
)
from realspherical.numerics._lie import bracket, is_closed, sl_basis
from realspherical.numerics.decompositions import polar_decomposition
from realspherical.numerics.realizations import E2, F2, H2, realization_names, rot
from realspherical.numerics.structure import grassmann_distance, principal_angles


@pytest.mark.parametrize("name", realization_names())
def test_realization_invariants(name):
    real = realization(name)
    assert real.check() == []
    desc = catalog(real.descriptor)
    dim_a_z = desc.datum.ambient_dim - desc.a_H.dim
    assert real.dim_g == desc.dim_h + desc.dim_u + dim_a_z + desc.dim_m_Z


def test_iwasawa_examples():
    k, a, n = iwasawa(np.eye(2))
    assert np.allclose(k, np.eye(2)) and np.allclose(a, np.eye(2)) and np.allclose(n, np.eye(2))
    k, a, n = iwasawa(np.diag([2.0, 0.5]))
    assert np.allclose(k, np.eye(2)) and np.allclose(a, np.diag([2.0, 0.5])) and np.allclose(n, np.eye(2))


def test_iwasawa_reconstruction_on_random_inputs():
    rng = np.random.default_rng(7)
    worst = 0.0
    for size in (2, 3):
        for _ in range(5000):
            g = rng.uniform(-10, 10, (size, size))
            if abs(np.linalg.det(g)) < 1e-6:
                continue
            k, a, n = iwasawa(g)
            worst = max(worst, np.linalg.norm(k @ a @ n - g) / np.linalg.norm(g))
            assert np.allclose(k.T @ k, np.eye(size), atol=1e-12)
            assert np.all(np.diag(a) > 0)
            assert np.allclose(np.tril(n, -1), 0) and np.allclose(np.diag(n), 1)
    assert worst < 1e-12


def test_iwasawa_rejects_singular():
    with pytest.raises(ValueError, match="singular"):
        iwasawa(np.array([[1.0, 2.0], [2.0, 4.0]]))


@pytest.mark.parametrize("name", ["sl2_gk", "sl3_gk"])
def test_polar_identity_and_exp(name):
    real = realization(name)
    assert np.allclose(polar_coordinate(np.eye(real.size), real), 0, atol=1e-12)
    rng = np.random.default_rng(3)
    for _ in range(200):
        x = _into_chamber(real, rng)
        assert np.allclose(polar_coordinate(real.exp_a(x), real), x, atol=1e-10)


def _into_chamber(real, rng):
    rays = np.array([[float(v) for v in r] for r in compression_cone(catalog(real.descriptor)).rays])
    return rng.uniform(0, 3, len(rays)) @ rays


@pytest.mark.parametrize("name", ["sl2_gk", "sl3_gk"])
def test_polar_recovers_from_compact_conjugates(name):
    real = realization(name)
    rng = np.random.default_rng(11)
    for _ in range(100):
        x = _into_chamber(real, rng)
        k1 = np.linalg.qr(rng.normal(size=(real.size, real.size)))[0]
        k2 = np.linalg.qr(rng.normal(size=(real.size, real.size)))[0]
        g = k1 @ real.exp_a(x) @ k2
        u, xx, vt = polar_decomposition(g, real)
        assert np.allclose(xx, x, atol=1e-9)
        assert np.allclose(u @ real.exp_a(xx) @ vt, g, atol=1e-9)


def test_polar_unsupported():
    with pytest.raises(ValueError):
        polar_coordinate(np.eye(2), realization("dS2"))


def test_sphericality_examples():
    assert sphericality_check(realization("dS2"))
    assert sphericality_check(realization("sl2_gk"))
    real = realization("sl2_gk")
    assert not sphericality_check(real, h=list(real.p))


@pytest.mark.parametrize("name", realization_names())
def test_reductive_h_unimodular(name):
    real = realization(name)
    assert unimodularity_check(real.h, real)


def test_borel_not_unimodular():
    assert not unimodularity_check([H2, E2])


def test_a_chi_plus_n_not_unimodular():
    # a line chi in the diagonal of sl3 plus the strictly upper triangular part
    basis = sl_basis(3)
    upper = [b for b in basis if np.allclose(np.tril(b), 0)]
    chi = np.diag([1.0, 0.3, -1.3])
    assert not unimodularity_check([chi] + upper)


def test_unimodularity_requires_subalgebra():
    with pytest.raises(ValueError):
        unimodularity_check([E2, F2])


def test_principal_angles_oracle():
    # lines at angle theta in R^2 (as 1x2 "matrices")
    for theta in (1e-9, 1e-4, 0.3, np.pi / 2):
        a = [np.array([[1.0, 0.0]])]
        b = [np.array([[np.cos(theta), np.sin(theta)]])]
        assert principal_angles(a, b)[0] == pytest.approx(theta, rel=1e-9)
    with pytest.raises(ValueError):
        principal_angles([np.eye(2)], [np.eye(2), E2])


@given(st.floats(min_value=-3, max_value=3), st.integers(min_value=0, max_value=1000))
def test_grassmann_distance_orthogonal_invariance(theta, seed):
    rng = np.random.default_rng(seed)
    a = [rng.normal(size=(3, 3)) for _ in range(2)]
    b = [rng.normal(size=(3, 3)) for _ in range(2)]
    qq = np.eye(3)
    qq[:2, :2] = rot(theta)
    move = lambda xs: [qq @ x @ qq.T for x in xs]
    assert grassmann_distance(move(a), move(b)) == pytest.approx(grassmann_distance(a, b), abs=1e-9)


def test_ds2_limit_scan():
    real = realization("dS2")
    desc = catalog("dS2")
    ts = [0, 5, 10, 15, 20]
    inward = subalgebra_limit_scan(real, desc, [-1.0], ts)
    assert inward[-1] < 1e-6
    assert all(b < a for a, b in zip(inward[1:], inward[2:]))
    outward = subalgebra_limit_scan(real, desc, [1.0], list(range(0, 21)))
    assert min(outward) > 1e-2
    still = subalgebra_limit_scan(real, desc, [0.0], ts)
    assert max(still) - min(still) < 1e-12


@pytest.mark.parametrize("name", ["sl2_gk", "dS2", "group_sl2", "triple_sl2", "sl3_gk"])
def test_limit_subalgebra_is_a_subalgebra_of_dim_h(name):
    real = realization(name)
    hlim = limit_subalgebra(real, catalog(real.descriptor))
    assert len(hlim) == len(real.h)
    assert is_closed(hlim)


def test_bracket_sl2_relations():
    assert np.allclose(bracket(H2, E2), 2 * E2)
    assert np.allclose(bracket(E2, F2), H2)
