"""Random wavefront descriptors for property and acceptance tests."""
import random
from fractions import Fraction as F

from realspherical import _linalg as la
from realspherical.cones import Subspace, quotient_coordinates
from realspherical.rootsys import direct_sum, standard_datum
from realspherical.spherical import SphericalDescriptor, image_of_chamber, quotient_basis, validate

DATA = ["A2", "B2", "G2", "A1xA1", "A1xA1xA1", "A3"]


def _datum(kind: str, mult: int):
    if "x" in kind:
        parts = [standard_datum("A", 1, mult) for _ in kind.split("x")]
        return direct_sum(*parts, name=kind)
    if kind == "G2":
        return standard_datum("G2", 2, mult)
    return standard_datum(kind[0], int(kind[1:]), mult)


def random_wavefront_descriptor(r: random.Random, max_real_rank: int = 2) -> SphericalDescriptor:
    """``a_H`` inside ``ker rho`` and ``Lambda`` the integral facet normals of the chamber image.

    All positive roots are in ``Sigma_u``, so ``rho_u = rho`` vanishes on ``a_H``.
    The compression cone equals the image of the negative chamber by construction.
    """
    while True:
        kind = r.choice(DATA)
        d = _datum(kind, r.randint(1, 2))
        n = d.ambient_dim
        real_rank = r.randint(1, min(max_real_rank, n))
        h_dim = n - real_rank
        ker = la.nullspace([d.rho()], n)
        if h_dim > len(ker):
            continue
        basis = []
        while len(basis) < h_dim:
            v = la.zeros(n)
            for k in ker:
                v = la.add(v, la.scale(F(r.randint(-3, 3)), k))
            if la.rank(basis + [v]) == len(basis) + 1:
                basis.append(v)
        probe = SphericalDescriptor(
            "probe", d, Subspace.span(basis, n), tuple(range(len(d.positive_roots))), ()
        )
        w = quotient_basis(probe)
        image = image_of_chamber(probe)
        if not image.is_pointed:
            continue
        gens = []
        for f in image.facets:
            # nu(X) = -f(q(X)) as a covector on a, scaled into N0[simple roots]
            nu = tuple(-la.dot(f, quotient_coordinates(e, w, d.gram)) for e in la.identity(n))
            coeffs = d.simple_coefficients(nu)
            scale = la.common_denominator([coeffs])
            gens.append(la.scale(scale, nu))
        desc = SphericalDescriptor(
            f"random_{kind}_{real_rank}", d, Subspace.span(basis, n),
            tuple(range(len(d.positive_roots))), tuple(gens),
        )
        if validate(desc):
            continue
        return desc


def random_interior_lambda(r: random.Random, desc, lo=F(1, 2), hi=F(3)) -> tuple:
    """``sum c_i alpha_i`` with ``c_i`` uniform on a grid in ``[lo, hi]``, so ``Lambda(H_i) = c_i``."""
    out = la.zeros(desc.datum.ambient_dim)
    steps = int((hi - lo) * 4)
    for a in desc.datum.simple_roots:
        out = la.add(out, la.scale(lo + F(r.randint(0, steps), 4), a))
    return out
