"""Spherical-space descriptors and their exact structure invariants.

A descriptor records the output of the local structure theory for ``Z = G/H``
as plain data: the restricted root datum on ``a``, the subspace ``a_H``, the
roots ``Sigma_u`` whose root spaces lie in ``u``, and generators ``Lambda`` of
the spherical monoid. Everything else (compression cone, edge, ``rho_u``,
wavefront status) is derived exactly.

``a_Z = a / a_H`` is coordinatized once and for all by the gram-orthogonal
complement of ``a_H`` with the basis from :func:`~realspherical.cones.complement_basis`.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .cones import (
    Cone,
    Subspace,
    complement_basis,
    edge_and_rays,
    project_quotient,
)
from .rootsys import RootDatum, negative_chamber

__all__ = [
    "Ideal",
    "HBlock",
    "SphericalDescriptor",
    "StructureReport",
    "quotient_basis",
    "restrict_to_quotient",
    "compression_cone",
    "rho_u",
    "is_wavefront",
    "rank_and_edge",
    "quasiaffine_extension",
    "validate",
    "in_monoid",
]


@dataclass(frozen=True)
class Ideal:
    """A simple ideal ``g_j`` of ``g``.

    ``factor`` is the index of the matching summand in ``datum.factors``.
    """

    label: str
    dim: int
    simple: bool = True
    compact: bool = False
    factor: int | None = None


@dataclass(frozen=True)
class HBlock:
    """A block of ``h`` sitting diagonally inside the ideals in ``support``.

    ``dim(h ∩ g_I)`` is the total dimension of the blocks whose support lies
    inside ``I``.
    """

    dim: int
    support: tuple


@dataclass(frozen=True)
class SphericalDescriptor:
    name: str
    datum: RootDatum
    a_H: Subspace
    sigma_u: tuple  # indices into datum.positive_roots
    monoid_generators: tuple
    ideals: tuple = ()
    h_blocks: tuple = ()
    dim_m_Z: int | None = None
    h_reductive: bool = True
    unimodular: bool | None = True
    symmetric: bool = False
    realization: str | None = None
    quotients: tuple = ()  # ((labels, catalog name), ...)
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "sigma_u", tuple(int(i) for i in self.sigma_u))
        object.__setattr__(self, "monoid_generators", la.mat(self.monoid_generators))
        object.__setattr__(self, "ideals", tuple(self.ideals))
        object.__setattr__(
            self,
            "h_blocks",
            tuple(HBlock(b.dim, tuple(b.support)) for b in self.h_blocks),
        )
        object.__setattr__(
            self,
            "quotients",
            tuple((tuple(sorted(s)), str(n)) for s, n in self.quotients),
        )

    @property
    def dim_g(self) -> int:
        return sum(i.dim for i in self.ideals)

    @property
    def dim_h(self) -> int:
        return sum(b.dim for b in self.h_blocks)

    @property
    def dim_u(self) -> int:
        return sum(self.datum.positive_roots[i][1] for i in self.sigma_u)

    @property
    def labels(self) -> tuple:
        return tuple(i.label for i in self.ideals)

    def ideal(self, label: str) -> Ideal:
        for i in self.ideals:
            if i.label == label:
                return i
        raise KeyError(f"no ideal labelled {label!r} in {self.name}")

    def quotient_for(self, labels) -> str | None:
        key = tuple(sorted(labels))
        return dict(self.quotients).get(key)


@dataclass(frozen=True)
class StructureReport:
    real_rank: int
    compression_cone: Cone
    edge: Subspace
    wavefront: bool
    rho_u: tuple
    rays: tuple = field(default=())


def quotient_basis(desc: SphericalDescriptor) -> tuple:
    """Basis of ``a_Z`` inside ``a`` (rows), orthogonal to ``a_H``."""
    return complement_basis(desc.a_H, desc.datum.gram)


def restrict_to_quotient(desc: SphericalDescriptor, covector: Sequence) -> tuple:
    """A covector vanishing on ``a_H`` written in ``a_Z`` coordinates."""
    return tuple(la.dot(covector, w) for w in quotient_basis(desc))


def lift_from_quotient(desc: SphericalDescriptor, c: Sequence) -> tuple:
    """The vector of ``a`` (orthogonal to ``a_H``) with ``a_Z`` coordinates ``c``."""
    w = quotient_basis(desc)
    out = la.zeros(desc.datum.ambient_dim)
    for ck, wk in zip(la.vec(c), w):
        out = la.add(out, la.scale(ck, wk))
    return out


def compression_cone(desc: SphericalDescriptor) -> Cone:
    """``{X in a_Z : nu(X) <= 0 for nu in Lambda}`` in ``a_Z`` coordinates."""
    rows = [la.neg(restrict_to_quotient(desc, nu)) for nu in desc.monoid_generators]
    return Cone.from_inequalities(rows, len(quotient_basis(desc)))


def _rho_u_raw(desc: SphericalDescriptor) -> tuple:
    total = la.zeros(desc.datum.ambient_dim)
    for i in desc.sigma_u:
        r, m = desc.datum.positive_roots[i]
        total = la.add(total, la.scale(m, r))
    return la.scale(Fraction(1, 2), total)


def rho_u(desc: SphericalDescriptor) -> tuple:
    """``1/2 sum m_alpha alpha`` over ``Sigma_u``, a covector on ``a``.

    Raises
    ------
    ValueError
        If the result does not vanish on ``a_H``; such data cannot come from a
        unimodular space and is rejected.
    """
    rho = _rho_u_raw(desc)
    bad = [b for b in desc.a_H.basis if la.dot(rho, b) != 0]
    if bad:
        raise ValueError(
            f"{desc.name}: rho_u = {la.fmt_vec(rho)} does not vanish on a_H "
            f"(value {la.fmt(la.dot(rho, bad[0]))} on {la.fmt_vec(bad[0])}); "
            "rejected as non-unimodular data"
        )
    return rho


def image_of_chamber(desc: SphericalDescriptor) -> Cone:
    """Image of the negative Weyl chamber in ``a_Z`` coordinates."""
    return project_quotient(negative_chamber(desc.datum), desc.a_H, desc.datum.gram)


def is_wavefront(desc: SphericalDescriptor) -> bool:
    """True iff the compression cone is the image of the negative chamber."""
    return image_of_chamber(desc) == compression_cone(desc)


def rank_and_edge(desc: SphericalDescriptor) -> StructureReport:
    cone = compression_cone(desc)
    edge, rays = edge_and_rays(cone)
    return StructureReport(
        real_rank=desc.datum.ambient_dim - desc.a_H.dim,
        compression_cone=cone,
        edge=edge,
        wavefront=is_wavefront(desc),
        rho_u=rho_u(desc),
        rays=rays,
    )


def quasiaffine_extension(desc: SphericalDescriptor) -> SphericalDescriptor:
    """Add one central coordinate to ``a`` on which nothing in ``Lambda`` depends.

    The compression cone becomes ``old cone + R`` and the edge grows by one.
    """
    from .rootsys import direct_sum

    torus = RootDatum(0, 1, (), (), ((1,),), "T1")
    datum = direct_sum(desc.datum, torus, name=f"{desc.datum.name}+T1")
    pad = lambda v: tuple(v) + (Fraction(0),)
    return replace(
        desc,
        name=f"{desc.name}+T1",
        datum=datum,
        a_H=Subspace(datum.ambient_dim, tuple(pad(b) for b in desc.a_H.basis)),
        monoid_generators=tuple(pad(nu) for nu in desc.monoid_generators),
        dim_m_Z=None,
        realization=None,
        quotients=(),
        symmetric=False,
    )


def in_monoid(target: Sequence, roots: Sequence[Sequence], datum: RootDatum) -> bool:
    """Whether ``target`` is a nonnegative integer combination of ``roots``.

    All roots are positive, so a depth-first search on simple-root
    coefficients terminates quickly.
    """
    tc = datum.simple_coefficients(target)
    if tc is None or any(c.denominator != 1 or c < 0 for c in tc):
        return False
    rcs = []
    for r in roots:
        rc = datum.simple_coefficients(r)
        if rc is not None and not la.is_zero(rc):
            rcs.append(tuple(int(c) for c in rc))
    rcs = sorted(set(rcs), reverse=True)
    seen = set()

    def go(rem: tuple, start: int) -> bool:
        if not any(rem):
            return True
        if (rem, start) in seen:
            return False
        seen.add((rem, start))
        for j in range(start, len(rcs)):
            nxt = tuple(a - b for a, b in zip(rem, rcs[j]))
            if min(nxt) >= 0 and go(nxt, j):
                return True
        return False

    return go(tuple(int(c) for c in tc), 0)


def validate(desc: SphericalDescriptor) -> list[str]:
    """Violated invariants of ``desc`` as readable strings (empty when valid)."""
    out: list[str] = []
    d = desc.datum
    n = d.ambient_dim
    if desc.a_H.ambient_dim != n:
        out.append(f"a_H lives in dimension {desc.a_H.ambient_dim}, not {n}")
        return out
    k = len(d.positive_roots)
    if len(set(desc.sigma_u)) != len(desc.sigma_u):
        out.append("sigma_u lists a root twice")
    bad_idx = [i for i in desc.sigma_u if not 0 <= i < k]
    if bad_idx:
        out.append(f"sigma_u indices {bad_idx} out of range 0..{k - 1}")
        return out
    roots = [d.positive_roots[i][0] for i in desc.sigma_u]
    for j, nu in enumerate(desc.monoid_generators):
        if len(nu) != n:
            out.append(f"monoid generator {j} has {len(nu)} coordinates, expected {n}")
            continue
        for b in desc.a_H.basis:
            if la.dot(nu, b) != 0:
                out.append(
                    f"monoid generator {j} = {la.fmt_vec(nu)} does not vanish on a_H "
                    f"(value {la.fmt(la.dot(nu, b))} on {la.fmt_vec(b)})"
                )
                break
        if la.is_zero(nu):
            out.append(f"monoid generator {j} is zero")
        elif not in_monoid(nu, roots, d):
            out.append(
                f"monoid generator {j} = {la.fmt_vec(nu)} is not a nonnegative "
                "integer combination of sigma_u roots"
            )
    rho = _rho_u_raw(desc)
    for b in desc.a_H.basis:
        if la.dot(rho, b) != 0:
            out.append(
                f"rho_u = {la.fmt_vec(rho)} does not vanish on a_H "
                f"(value {la.fmt(la.dot(rho, b))} on {la.fmt_vec(b)})"
            )
            break
    labels = [i.label for i in desc.ideals]
    if len(set(labels)) != len(labels):
        out.append("ideal labels are not unique")
    for i in desc.ideals:
        if i.dim < 1:
            out.append(f"ideal {i.label} has nonpositive dimension")
        if i.factor is not None and not 0 <= i.factor < len(d.factors):
            out.append(f"ideal {i.label} points at a missing datum factor {i.factor}")
    for b in desc.h_blocks:
        if b.dim < 0 or not set(b.support) <= set(labels):
            out.append(f"h block {b} has an invalid support or dimension")
        elif b.dim > min(desc.ideal(s).dim for s in b.support):
            out.append(f"h block {b} is larger than an ideal it embeds into")
    if desc.ideals and desc.dim_h > desc.dim_g:
        out.append(f"dim h = {desc.dim_h} exceeds dim g = {desc.dim_g}")
    if desc.ideals and desc.dim_m_Z is not None:
        lhs = desc.dim_g
        rhs = desc.dim_h + desc.dim_u + (n - desc.a_H.dim) + desc.dim_m_Z
        if lhs != rhs:
            out.append(
                f"dim g = {lhs} but dim h + dim u + dim a_Z + dim m_Z = {rhs}"
            )
    for s, name in desc.quotients:
        if not set(s) <= set(labels):
            out.append(f"quotient {name} refers to unknown ideals {s}")
    return out
