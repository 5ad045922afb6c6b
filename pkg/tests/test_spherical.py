from dataclasses import replace
from fractions import Fraction as F

import pytest

from realspherical import _linalg as la
from realspherical._lp import minimize
from realspherical.catalog import catalog, catalog_names
from realspherical.cones import Cone, Subspace, dual_cone
from realspherical.rootsys import negative_chamber, standard_datum
from realspherical.spherical import (
    SphericalDescriptor,
    compression_cone,
    image_of_chamber,
    is_wavefront,
    lift_from_quotient,
    quasiaffine_extension,
    rank_and_edge,
    rho_u,
    validate,
)

NAMES = catalog_names()


def group_case(series="A", n=2) -> SphericalDescriptor:
    d = standard_datum(series, n)
    return SphericalDescriptor(
        name="G/K", datum=d, a_H=Subspace.zero(d.ambient_dim),
        sigma_u=tuple(range(len(d.positive_roots))), monoid_generators=d.simple_roots,
    )


@pytest.mark.parametrize("name", NAMES)
def test_catalog_entries_validate(name):
    assert validate(catalog(name)) == []


@pytest.mark.parametrize("name", NAMES)
def test_rho_u_vanishes_on_a_h(name):
    d = catalog(name)
    r = rho_u(d)
    assert all(la.dot(r, b) == 0 for b in d.a_H.basis)


def test_rho_u_examples():
    assert rho_u(catalog("dS2")) == (F(1),)
    sl3 = catalog("sl3_gk")
    a1, a2 = sl3.datum.simple_roots
    assert rho_u(sl3) == la.add(a1, a2)
    empty = replace(catalog("sl2_gk"), sigma_u=(), monoid_generators=())
    assert rho_u(empty) == (0,)


def test_compression_cone_examples():
    assert compression_cone(catalog("sl2_gk")) == Cone.from_inequalities([(-1,)], 1)
    g = group_case()
    assert compression_cone(g) == negative_chamber(g.datum)
    assert is_wavefront(g)
    free = replace(catalog("sl2_gk"), monoid_generators=())
    assert compression_cone(free) == Cone.whole(1)
    assert rank_and_edge(free).edge.dim == 1


@pytest.mark.parametrize("name", [n for n in NAMES if catalog(n).symmetric])
def test_symmetric_entries_are_wavefront(name):
    assert is_wavefront(catalog(name))


def test_non_wavefront_entry():
    assert not is_wavefront(catalog("so8c_g2"))


def test_real_ranks():
    expected = {"sl2_gk": 1, "dS2": 1, "sl3_gk": 2, "group_sl2": 1, "triple_sl2": 3, "so8c_g2": 3}
    for name, rank in expected.items():
        rep = rank_and_edge(catalog(name))
        assert rep.real_rank == rank
        assert rep.real_rank == catalog(name).datum.ambient_dim - catalog(name).a_H.dim


def test_ds2_pointed():
    rep = rank_and_edge(catalog("dS2"))
    assert rep.real_rank == 1 and rep.edge.dim == 0


@pytest.mark.parametrize("name", NAMES)
def test_quasiaffine_extension_adds_a_line(name):
    d = catalog(name)
    e = quasiaffine_extension(d)
    assert compression_cone(e) == compression_cone(d).direct_sum_line()
    assert rank_and_edge(e).edge.dim == rank_and_edge(d).edge.dim + 1
    assert not compression_cone(e).is_pointed


def test_quasiaffine_twice_on_ds2():
    e = quasiaffine_extension(quasiaffine_extension(catalog("dS2")))
    rep = rank_and_edge(e)
    assert rep.real_rank == 3 and rep.edge.dim == 2


@pytest.mark.parametrize("name", [n for n in NAMES if is_wavefront(catalog(n))])
def test_wavefront_rays_have_preimages_in_chamber(name):
    d = catalog(name)
    chamber = negative_chamber(d.datum)
    n = d.datum.ambient_dim
    for ray in compression_cone(d).rays:
        target = lift_from_quotient(d, ray)
        # X in a^- with X - target in a_H, as an exact feasibility LP
        eqs = [tuple(w) for w in d.a_H.annihilator()]
        b_eq = [la.dot(w, target) for w in eqs]
        res = minimize(la.zeros(n), [la.neg(a) for a in chamber.inequalities],
                       la.zeros(len(chamber.inequalities)), eqs, b_eq)
        assert res.status == "optimal"


@pytest.mark.parametrize("name", NAMES)
def test_rho_u_nonpositive_on_chamber_and_in_span(name):
    d = catalog(name)
    r = rho_u(d)
    for ray in negative_chamber(d.datum).rays:
        assert la.dot(r, ray) <= 0
    span = Cone.from_generators([d.datum.positive_roots[i][0] for i in d.sigma_u] or [la.zeros(len(r))],
                                d.datum.ambient_dim)
    assert span.contains(r)


def test_validate_flags_generator_not_vanishing_on_a_h():
    d = catalog("group_sl2")
    bad = replace(d, monoid_generators=((F(2), F(0)),))
    assert any("does not vanish on a_H" in v for v in validate(bad))


def test_validate_flags_rho_u_not_vanishing():
    d = catalog("group_sl2")
    bad = replace(d, sigma_u=(0,), monoid_generators=())
    assert any("rho_u" in v for v in validate(bad))
    with pytest.raises(ValueError, match="non-unimodular"):
        rho_u(bad)


def test_validate_flags_generator_outside_monoid():
    d = catalog("sl2_gk")
    bad = replace(d, monoid_generators=((F(1),),))
    assert validate(bad)


def test_image_of_chamber_a2():
    g = group_case()
    assert dual_cone(image_of_chamber(g)) == dual_cone(negative_chamber(g.datum))
