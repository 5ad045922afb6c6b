"""Shipped example spaces.

Coordinates follow :mod:`realspherical.rootsys`: each ``SL(2, R)`` factor has
``a = diag(x, -x)`` with ``alpha(x) = 2x`` and gram ``2``.

=============  ==========================================  ======  =========
name           space                                       rank    wavefront
=============  ==========================================  ======  =========
sl2_gk         SL(2,R)/SO(2)                               1       yes
dS2            SL(2,R)/SO(1,1)                             1       yes
sl3_gk         SL(3,R)/SO(3)                               2       yes
group_sl2      SL(2,R) x SL(2,R) / diagonal                1       yes
triple_sl2     SL(2,R)^3 / diagonal                        3       yes
so8c_g2        SO(8,C)/G2(C), restricted roots D4 (m=2)    3       no
=============  ==========================================  ======  =========

``pair_sl2`` is an alias of ``group_sl2``. The same data ships as JSON under
``realspherical/data`` and can be read back with
:func:`realspherical.descriptor_io.parse_descriptor`.
"""
from __future__ import annotations

from importlib import resources

from .cones import Subspace
from .rootsys import direct_sum, standard_datum
from .spherical import HBlock, Ideal, SphericalDescriptor

__all__ = ["catalog", "catalog_names", "catalog_path", "ALIASES"]

ALIASES = {"pair_sl2": "group_sl2"}


def _sl2_rank_one(name: str, realization: str, description: str) -> SphericalDescriptor:
    datum = standard_datum("A", 1)
    return SphericalDescriptor(
        name=name,
        datum=datum,
        a_H=Subspace.zero(1),
        sigma_u=(0,),
        monoid_generators=((2,),),
        ideals=(Ideal("sl2", 3, factor=0),),
        h_blocks=(HBlock(1, ("sl2",)),),
        dim_m_Z=0,
        symmetric=True,
        realization=realization,
        description=description,
    )


def _sl2_gk():
    return _sl2_rank_one("sl2_gk", "sl2_gk", "SL(2,R)/SO(2), the hyperbolic plane")


def _ds2():
    return _sl2_rank_one("dS2", "dS2", "SL(2,R)/SO(1,1), two-dimensional de Sitter space")


def _sl3_gk():
    datum = standard_datum("A", 2)
    return SphericalDescriptor(
        name="sl3_gk",
        datum=datum,
        a_H=Subspace.zero(2),
        sigma_u=(0, 1, 2),
        monoid_generators=datum.simple_roots,
        ideals=(Ideal("sl3", 8, factor=0),),
        h_blocks=(HBlock(3, ("sl3",)),),
        dim_m_Z=0,
        symmetric=True,
        realization="sl3_gk",
        description="SL(3,R)/SO(3)",
    )


def _group_sl2():
    a1 = standard_datum("A", 1)
    datum = direct_sum(a1, a1)
    return SphericalDescriptor(
        name="group_sl2",
        datum=datum,
        a_H=Subspace.span([(1, -1)], 2),
        sigma_u=(0, 1),
        monoid_generators=((2, 2),),
        ideals=(Ideal("1", 3, factor=0), Ideal("2", 3, factor=1)),
        h_blocks=(HBlock(3, ("1", "2")),),
        dim_m_Z=0,
        symmetric=True,
        realization="group_sl2",
        description="SL(2,R) x SL(2,R) / diagonal SL(2,R), the group case",
    )


def _triple_sl2():
    a1 = standard_datum("A", 1)
    datum = direct_sum(a1, a1, a1)
    return SphericalDescriptor(
        name="triple_sl2",
        datum=datum,
        a_H=Subspace.zero(3),
        sigma_u=(0, 1, 2),
        monoid_generators=datum.simple_roots,
        ideals=tuple(Ideal(str(j + 1), 3, factor=j) for j in range(3)),
        h_blocks=(HBlock(3, ("1", "2", "3")),),
        dim_m_Z=0,
        symmetric=False,
        realization="triple_sl2",
        quotients=tuple(((str(j),), "group_sl2") for j in (1, 2, 3)),
        description="SL(2,R)^3 / diagonal SL(2,R), the triple space",
    )


def _so8c_g2():
    datum = standard_datum("D", 4, multiplicities=2)
    a2 = datum.simple_roots[1]
    skip = datum.root_index(a2)
    s = datum.simple_roots
    add = lambda *v: tuple(sum(c) for c in zip(*v))
    return SphericalDescriptor(
        name="so8c_g2",
        datum=datum,
        a_H=Subspace.span([a2], 4),  # the coroot of the middle node (gram = I)
        sigma_u=tuple(i for i in range(len(datum.positive_roots)) if i != skip),
        monoid_generators=(
            add(s[0], s[1], s[2]),
            add(s[0], s[1], s[3]),
            add(s[1], s[2], s[3]),
        ),
        ideals=(Ideal("so8c", 56, factor=0),),
        h_blocks=(HBlock(28, ("so8c",)),),
        dim_m_Z=3,
        symmetric=False,
        realization=None,
        description="SO(8,C)/G2(C): spherical, not wavefront (structure data only)",
    )


_BUILDERS = {
    "sl2_gk": _sl2_gk,
    "dS2": _ds2,
    "sl3_gk": _sl3_gk,
    "group_sl2": _group_sl2,
    "triple_sl2": _triple_sl2,
    "so8c_g2": _so8c_g2,
}
_CACHE: dict = {}


def catalog_names() -> list[str]:
    return list(_BUILDERS)


def _canonical(name: str) -> str:
    key = ALIASES.get(name, name)
    for k in _BUILDERS:
        if k.lower() == key.lower():
            return k
    raise KeyError(
        f"unknown space {name!r}; available: {', '.join(catalog_names())} "
        f"(aliases: {', '.join(f'{a} -> {b}' for a, b in ALIASES.items())})"
    )


def catalog(name: str) -> SphericalDescriptor:
    """Return a shipped descriptor by name (case-insensitive, aliases allowed)."""
    key = _canonical(name)
    if key not in _CACHE:
        _CACHE[key] = _BUILDERS[key]()
    return _CACHE[key]


def catalog_path(name: str):
    """Path of the shipped JSON file for ``name``."""
    return resources.files("realspherical") / "data" / f"{_canonical(name)}.json"
