"""Mirror potentials for split nef bundles over smooth complete bases.

The dual fan is the single cone spanned by the section-polytope
vertices placed at their summand's fiber direction; the mirror
potential assigns inverse parameters to a chosen unimodular splitting
of the ray lattice.  Two sign conventions for the fiber directions are
exposed as separate entry points.
"""

from fractions import Fraction

from ..fans import Fan, is_complete, is_dual_pair, is_smooth
from ..lattice import LatticeMap
from ..polyhedra import Cone
from ..symbols import ParamPoly
from ..toric_lg import (
    AuxiliaryLG,
    Specialization,
    apply_specialization,
    auxiliary_lg_from_ci,
    base_change_check,
    is_cartier,
    section_polytope,
    split_bundle_fan,
)
from .report import MirrorReport


def _as_int_vec(v, what="point"):
    out = []
    for x in v:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"{what} is not a lattice vector: {tuple(v)}")
        out.append(int(f))
    return tuple(out)


def splitting_basis(fan, basis_rays=None):
    """Ray indices whose unit vectors complete the ray map to a basis.

    The ray map sends a character m to its pairings with all rays; a
    splitting basis is a set of rays whose coordinate vectors fill the
    cokernel unimodularly.  When no choice is given, complements of the
    maximal cones are tried in fan order and the first that works wins,
    which makes the default deterministic.
    """
    rays = fan.rays
    n = fan.lattice_rank
    count = len(rays)
    k = count - n
    if k < 0:
        raise ValueError("fewer rays than the lattice rank")
    ray_map = LatticeMap.from_rows(list(rays), ncols=n)

    def works(indices):
        cols = [ray_map.col(i) for i in range(n)]
        for j in indices:
            cols.append(tuple(int(i == j) for i in range(count)))
        return abs(LatticeMap.from_cols(cols, nrows=count).det()) == 1

    if basis_rays is not None:
        chosen = []
        for b in basis_rays:
            if isinstance(b, int) and not isinstance(b, bool):
                idx = b
                if not 0 <= idx < count:
                    raise ValueError(f"ray index {idx} out of range")
            else:
                v = _as_int_vec(b, "basis ray")
                if v not in rays:
                    raise ValueError(f"{v} is not a ray of the fan")
                idx = rays.index(v)
            chosen.append(idx)
        if len(set(chosen)) != len(chosen):
            raise ValueError("basis rays must be distinct")
        if len(chosen) != k:
            raise ValueError(f"a splitting basis here has {k} rays")
        indices = tuple(sorted(chosen))
        if not works(indices):
            raise ValueError("chosen rays do not give a splitting basis")
        return indices

    for cone in fan.max_cones:
        indices = tuple(sorted(set(range(count)) - set(cone)))
        if len(indices) == k and works(indices):
            return indices
    raise ValueError("no splitting basis among the maximal cone complements")


def _bundle_mirror(fan, divisors, basis_rays, fiber_sign, note):
    if not is_smooth(fan):
        raise ValueError("base fan must be smooth")
    if not is_complete(fan):
        raise ValueError("base fan must be complete")
    divisors = tuple(divisors)
    if not divisors:
        raise ValueError("need at least one summand")
    n = fan.lattice_rank
    count = len(fan.rays)
    sections = []
    for i, d in enumerate(divisors):
        if d.fan != fan:
            raise ValueError(f"summand {i} does not live on the base fan")
        cart = is_cartier(d)
        if cart is None:
            raise ValueError(f"summand {i} is not Cartier")
        poly = section_polytope(d)
        for m in cart.cone_characters:
            if not poly.contains(tuple(-x for x in m)):
                raise ValueError(f"summand {i} is not nef")
        sections.append(poly)
    c = len(divisors)

    basis = splitting_basis(fan, basis_rays)
    sigma_x = split_bundle_fan(divisors)
    gamma, _ = auxiliary_lg_from_ci(divisors)

    lifted = []
    for a, poly in enumerate(sections):
        tail = tuple(int(b == a) for b in range(c))
        for v in poly.vertices:
            lifted.append(_as_int_vec(v, f"vertex of summand {a} sections")
                          + tail)
    cone = Cone(lifted, n + c)
    sigma_x_prime = Fan.from_maximal_cones([cone], n + c)

    shape_ok = True
    for r in sigma_x_prime.rays:
        mu, tail = r[:n], r[n:]
        hits = [a for a in range(c) if tail == tuple(int(b == a) for b in range(c))]
        if len(hits) != 1 or not sections[hits[0]].contains(mu):
            shape_ok = False
            break

    duality = is_dual_pair(sigma_x, sigma_x_prime)
    gamma_prime = AuxiliaryLG(sigma_x_prime, sigma_x.marked_generators)
    to_gamma = base_change_check(gamma, sigma_x_prime)
    to_gamma_prime = base_change_check(gamma_prime, sigma_x)

    assignments = {}
    for idx, e in enumerate(gamma_prime.exponents):
        if idx >= count:
            value = ParamPoly.constant(fiber_sign)
        elif idx in basis:
            slot = basis.index(idx) + 1
            value = ParamPoly.parameter(f"q{slot}", power=-1, coeff=-1)
        else:
            value = ParamPoly.constant(-1)
        assignments[e] = value
    w_prime = apply_specialization(gamma_prime,
                                   Specialization(assignments))

    checks = [
        ("rays_are_marked_sections", shape_ok),
        ("coefficient_ring_isomorphic", to_gamma_prime.is_isomorphism),
        ("dual_fan_is_single_cone", len(sigma_x_prime.max_cones) == 1),
    ]
    counts = [
        ("base_rank", n),
        ("rank", n + c),
        ("summands", c),
        ("picard_number", count - n),
        ("xi_count", len(gamma.exponents)),
        ("xi_prime_count", len(sigma_x_prime.rays)),
        ("ray_count", len(sigma_x.rays)),
        ("dual_ray_count", len(sigma_x_prime.rays)),
    ]
    notes = [f"inverse parameters sit on rays {tuple(basis)}"]
    if note:
        notes.append(note)

    return MirrorReport(sigma_x, sigma_x_prime, duality,
                        to_gamma=to_gamma, to_gamma_prime=to_gamma_prime,
                        checks=checks, counts=counts,
                        potentials=[("w_prime", w_prime)], notes=notes)


def givental_mirror(fan, divisors, basis_rays=None) -> MirrorReport:
    """Mirror data with fiber directions entering positively."""
    return _bundle_mirror(fan, divisors, basis_rays, 1, None)


def hori_vafa_mirror(fan, divisors, basis_rays=None) -> MirrorReport:
    """Mirror data with fiber directions entering negatively."""
    return _bundle_mirror(fan, divisors, basis_rays, -1,
                          "fiber-direction coefficients carry sign -1")
