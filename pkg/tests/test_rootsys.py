from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from realspherical.rootsys import (
    RootDatum,
    direct_sum,
    dual_basis,
    evaluate,
    negative_chamber,
    standard_datum,
)

SERIES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3), ("D", 4), ("G2", 2)]
# |Sigma^+| from the closed-form counts n(n+1)/2, n^2, n^2, n(n-1), 6
EXPECTED_POSITIVE = {("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("B", 2): 4, ("B", 3): 9, ("C", 2): 4,
                     ("C", 3): 9, ("D", 3): 6, ("D", 4): 12, ("G2", 2): 6}


@pytest.mark.parametrize("series,n", SERIES)
def test_positive_root_counts(series, n):
    d = standard_datum(series, n)
    assert d.rank == n
    assert len(d.positive_roots) == EXPECTED_POSITIVE[(series, n)]


@pytest.mark.parametrize("series,n", SERIES)
def test_roots_are_nonnegative_integer_combinations(series, n):
    d = standard_datum(series, n)
    for root, _ in d.positive_roots:
        coeffs = d.simple_coefficients(root)
        assert coeffs is not None
        assert all(c >= 0 and c.denominator == 1 for c in coeffs)


@pytest.mark.parametrize("series,n", [s for s in SERIES if s[0] != "G2"])
def test_closed_under_root_strings(series, n):
    # positive roots of a simply/doubly laced system: a + b is a root iff it is in the list
    d = standard_datum(series, n)
    roots = {r for r, _ in d.positive_roots}
    simple = set(d.simple_roots)
    for r in roots - simple:
        assert any(tuple(x - y for x, y in zip(r, s)) in roots for s in simple)


@pytest.mark.parametrize("series,n", SERIES)
def test_dual_basis_is_dual(series, n):
    d = standard_datum(series, n)
    h = dual_basis(d)
    for i, hi in enumerate(h):
        for j, a in enumerate(d.simple_roots):
            assert evaluate(a, hi) == (1 if i == j else 0)


def test_a1_dual_basis_is_half():
    assert dual_basis(standard_datum("A", 1)) == ((F(1, 2),),)


def test_a2_chamber_rays_are_negated_coweights():
    d = standard_datum("A", 2)
    c = negative_chamber(d)
    h = dual_basis(d)
    from realspherical._linalg import neg, primitive

    assert sorted(c.rays) == sorted(primitive(neg(v)) for v in h)
    assert c.contains(tuple(-a - b for a, b in zip(*h)))


@pytest.mark.parametrize("series,n", SERIES)
def test_positive_roots_nonpositive_on_negative_chamber(series, n):
    d = standard_datum(series, n)
    for ray in negative_chamber(d).rays:
        for root, _ in d.positive_roots:
            assert evaluate(root, ray) <= 0


def test_invalid_series_rank():
    with pytest.raises(ValueError):
        standard_datum("G2", 3)
    with pytest.raises(ValueError):
        standard_datum("B", 1)
    with pytest.raises(ValueError):
        standard_datum("E", 6)


def test_dual_basis_rejects_central_directions():
    torus = RootDatum(1, 2, ((F(2), F(0)),), (((F(2), F(0)), 1),), ((F(1), F(0)), (F(0), F(1))))
    with pytest.raises(ValueError, match="semisimple"):
        dual_basis(torus)


def test_rho_a2():
    assert standard_datum("A", 2).rho() == (F(2), F(1))


def test_direct_sum_rank_and_roots():
    d = direct_sum(standard_datum("A", 1), standard_datum("A", 1))
    assert d.rank == 2 and len(d.positive_roots) == 2


def test_invalid_datum_rejected():
    with pytest.raises(ValueError):
        RootDatum(2, 2, ((F(1), F(0)), (F(2), F(0))), (), ((F(1), F(0)), (F(0), F(1))))


@given(st.integers(min_value=1, max_value=4))
def test_multiplicities_scale_rho(k):
    d1 = standard_datum("A", 2)
    dk = standard_datum("A", 2, multiplicities=k)
    assert dk.rho() == tuple(k * x for x in d1.rho())
