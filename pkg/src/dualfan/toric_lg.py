"""Toric Landau-Ginzburg models: divisors, bundle fans, potential families.

A model couples a toric variety, given by a fan, with a family of
potentials whose monomials are characters of the dense torus.  The
family is stored by its exponent set together with one formal
coefficient per exponent; concrete potentials arise by specializing
those coefficients.  Everything here is exact: divisor data is integer,
characters are lattice vectors, and all certificates (Cartier
characters, base-change witnesses) are returned rather than asserted.
"""

from __future__ import annotations

from itertools import combinations

from .fans import Fan, is_complete, is_dual_pair, relabel_fan
from .lattice import LatticeMap, int_inverse, snf, solve_integer
from .polyhedra import Polytope, primitive_vector
from .symbols import ParamPoly, Potential


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class ToricDivisor:
    """Torus-invariant divisor: one integer coefficient per ray."""

    __slots__ = ("fan", "coeffs")

    def __init__(self, fan, coeffs):
        coeffs = tuple(int(x) for x in coeffs)
        if len(coeffs) != len(fan.rays):
            raise ValueError("one coefficient per ray")
        object.__setattr__(self, "fan", fan)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("ToricDivisor is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, ToricDivisor)
            and self.fan == other.fan
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.fan, self.coeffs))

    def __repr__(self):
        return f"ToricDivisor(coeffs={list(self.coeffs)!r})"


class CartierData:
    """Local principality certificate: one character per maximal cone.

    `cone_characters[i]` pairs with `fan.max_cones[i]` and evaluates to
    the divisor coefficient on every ray of that cone, which is checked
    at construction.
    """

    __slots__ = ("divisor", "cone_characters")

    def __init__(self, divisor, cone_characters):
        chars = tuple(tuple(int(x) for x in m) for m in cone_characters)
        fan = divisor.fan
        if len(chars) != len(fan.max_cones):
            raise ValueError("one character per maximal cone")
        for m, ixs in zip(chars, fan.max_cones):
            for i in ixs:
                if _dot(m, fan.rays[i]) != divisor.coeffs[i]:
                    raise ValueError(
                        f"character {m} does not cut the divisor on ray {fan.rays[i]}"
                    )
        object.__setattr__(self, "divisor", divisor)
        object.__setattr__(self, "cone_characters", chars)

    def __setattr__(self, name, value):
        raise AttributeError("CartierData is immutable")

    def __repr__(self):
        return f"CartierData(cone_characters={[list(m) for m in self.cone_characters]!r})"


def is_cartier(divisor: ToricDivisor):
    """CartierData for the divisor, or None when it is not Cartier.

    On each maximal cone the defining character must pair integrally to
    the prescribed coefficients; a rational-only solution means the
    divisor is merely Q-Cartier there and the whole test fails.
    """
    fan = divisor.fan
    chars = []
    for ixs in fan.max_cones:
        rows = LatticeMap.from_rows(
            [fan.rays[i] for i in ixs], ncols=fan.lattice_rank
        )
        m = solve_integer(rows, [divisor.coeffs[i] for i in ixs])
        if m is None:
            return None
        chars.append(m)
    return CartierData(divisor, chars)


def section_polytope(divisor: ToricDivisor) -> Polytope:
    """Characters m with ⟨m, u_ρ⟩ + a_ρ ≥ 0 on every ray.

    Only complete fans give a bounded section space, so anything else is
    rejected instead of returning an unbounded set.
    """
    if not is_complete(divisor.fan):
        raise ValueError("sections undefined: fan is not complete")
    return Polytope.from_hrep(
        list(zip(divisor.fan.rays, divisor.coeffs)), divisor.fan.lattice_rank
    )


def split_bundle_fan(divisors) -> Fan:
    """Total-space fan of a direct sum of line bundles.

    Each summand is the bundle whose sections form `section_polytope`
    of the given divisor, so the ray over u_ρ is lifted to
    (u_ρ, a⁽¹⁾_ρ, …, a⁽ᶜ⁾_ρ) and one vertical ray is appended per
    summand.  Every summand must be Cartier; maximal cones are the
    lifted base cones joined with all verticals.
    """
    divisors = tuple(divisors)
    if not divisors:
        raise ValueError("need at least one summand")
    base = divisors[0].fan
    for d in divisors[1:]:
        if d.fan != base:
            raise ValueError("summands live on different fans")
    for i, d in enumerate(divisors):
        if is_cartier(d) is None:
            raise ValueError(f"summand {i} is not Cartier")
    c = len(divisors)
    n = base.lattice_rank
    lifted = [
        tuple(ray) + tuple(d.coeffs[i] for d in divisors)
        for i, ray in enumerate(base.rays)
    ]
    verticals = [
        tuple(0 for _ in range(n)) + tuple(int(j == a) for j in range(c))
        for a in range(c)
    ]
    nrays = len(base.rays)
    vertical_ix = tuple(range(nrays, nrays + c))
    cones = [tuple(ixs) + vertical_ix for ixs in base.max_cones]
    return Fan(lifted + verticals, cones, n + c)


def line_bundle_fan(divisor: ToricDivisor) -> Fan:
    """Total-space fan of a single line bundle; see `split_bundle_fan`."""
    return split_bundle_fan((divisor,))


def is_regular_character(fan: Fan, m) -> bool:
    """Whether the character extends over the whole toric variety.

    Regularity means nonnegative pairing on the support of the fan, and
    the support is the union of the cones, so checking the ray
    generators suffices.
    """
    m = tuple(int(x) for x in m)
    if len(m) != fan.lattice_rank:
        raise ValueError("character has wrong length")
    return all(_dot(m, r) >= 0 for r in fan.rays)


class AuxiliaryLG:
    """Potential family on a toric variety with formal coefficients.

    `exponents` lists the characters that may appear in a potential;
    they must be pairwise distinct and regular on the fan.  `labels`
    names the formal coefficient of each exponent canonically, and
    `tags` optionally records which summand of a split construction an
    exponent came from.
    """

    __slots__ = ("fan", "exponents", "labels", "tags")

    def __init__(self, fan, exponents, tags=None):
        exps = tuple(tuple(int(x) for x in m) for m in exponents)
        for m in exps:
            if len(m) != fan.lattice_rank:
                raise ValueError("exponent has wrong length")
        if len(set(exps)) != len(exps):
            raise ValueError("exponents must be pairwise distinct")
        for m in exps:
            for r in fan.rays:
                if _dot(m, r) < 0:
                    raise ValueError(
                        f"character {m} is not regular: negative pairing on ray {r}"
                    )
        labels = tuple("g(" + ",".join(str(x) for x in m) + ")" for m in exps)
        if tags is not None:
            tags = tuple(int(t) for t in tags)
            if len(tags) != len(exps):
                raise ValueError("one tag per exponent")
        object.__setattr__(self, "fan", fan)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "tags", tags)

    def __setattr__(self, name, value):
        raise AttributeError("AuxiliaryLG is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, AuxiliaryLG)
            and self.fan == other.fan
            and self.exponents == other.exponents
            and self.tags == other.tags
        )

    def __hash__(self):
        return hash((self.fan, self.exponents, self.tags))

    def __repr__(self):
        return f"AuxiliaryLG(exponents={len(self.exponents)}, rank={self.fan.lattice_rank})"


def auxiliary_lg_from_potential(fan: Fan, exponents) -> AuxiliaryLG:
    """Family carrying exactly the given exponents on the given fan."""
    return AuxiliaryLG(fan, exponents)


def auxiliary_lg_from_ci(divisors):
    """Family of complete-intersection potentials on a split bundle.

    Sections of the i-th summand contribute the characters
    (m, indicator_i) with m in the i-th section polytope.  Returns the
    family on the total-space fan together with the indices of that
    fan's vertical rays; `tags` records the summand of each exponent.
    """
    divisors = tuple(divisors)
    total = split_bundle_fan(divisors)
    c = len(divisors)
    exponents = []
    tags = []
    for i, d in enumerate(divisors):
        indicator = tuple(int(j == i) for j in range(c))
        for m in section_polytope(d).lattice_points():
            exponents.append(tuple(m) + indicator)
            tags.append(i)
    base_rays = len(divisors[0].fan.rays)
    verticals = tuple(range(base_rays, base_rays + c))
    return AuxiliaryLG(total, exponents, tags=tags), verticals


class BaseChangeReport:
    """Outcome of matching a candidate dual fan against a family.

    The coefficient space of the fan's family maps into the coefficient
    space of `base_change_check`'s family by matching marked generators
    with exponents; `witness` is a marked generator with no matching
    exponent when the verdict is negative.  `surviving` lists matched
    exponent indices and `is_isomorphism` says none were left out.
    """

    __slots__ = ("verdict", "witness", "coordinate_map", "surviving", "is_isomorphism")

    def __init__(self, verdict, witness, coordinate_map, surviving, is_isomorphism):
        if is_isomorphism and not verdict:
            raise ValueError("an isomorphism verdict requires a positive verdict")
        object.__setattr__(self, "verdict", bool(verdict))
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "coordinate_map", coordinate_map)
        object.__setattr__(self, "surviving", surviving)
        object.__setattr__(self, "is_isomorphism", bool(is_isomorphism))

    def __setattr__(self, name, value):
        raise AttributeError("BaseChangeReport is immutable")

    def __bool__(self):
        return self.verdict

    def __repr__(self):
        return (
            f"BaseChangeReport(verdict={self.verdict}, witness={self.witness!r}, "
            f"is_isomorphism={self.is_isomorphism})"
        )


def base_change_check(aux: AuxiliaryLG, s_prime: Fan) -> BaseChangeReport:
    """Whether the family of s_prime's markers base-changes into `aux`.

    Every marked generator of `s_prime` must occur among the exponents
    of `aux`; the induced map keeps exactly those coefficients and sets
    the rest to zero.  The report records the exponent index hit by each
    marker and whether the matching is onto.
    """
    if s_prime.lattice_rank != aux.fan.lattice_rank:
        raise ValueError("rank mismatch")
    index = {m: i for i, m in enumerate(aux.exponents)}
    coordinate_map = []
    for marker in s_prime.marked_generators:
        i = index.get(tuple(marker))
        if i is None:
            return BaseChangeReport(False, tuple(marker), None, (), False)
        coordinate_map.append(i)
    surviving = tuple(sorted(coordinate_map))
    return BaseChangeReport(
        True,
        None,
        tuple(coordinate_map),
        surviving,
        len(surviving) == len(aux.exponents),
    )


class Specialization:
    """Assignment of one coefficient value to every exponent of a family."""

    __slots__ = ("assignments",)

    def __init__(self, assignments):
        if hasattr(assignments, "items"):
            assignments = assignments.items()
        pairs = {}
        for exponent, value in assignments:
            exponent = tuple(int(x) for x in exponent)
            if not isinstance(value, ParamPoly):
                value = ParamPoly.constant(value)
            if exponent in pairs:
                raise ValueError(f"exponent {exponent} assigned twice")
            pairs[exponent] = value
        object.__setattr__(self, "assignments", tuple(sorted(pairs.items())))

    def __setattr__(self, name, value):
        raise AttributeError("Specialization is immutable")

    @property
    def domain(self):
        return tuple(e for e, _ in self.assignments)

    def value(self, exponent) -> ParamPoly:
        exponent = tuple(int(x) for x in exponent)
        for e, v in self.assignments:
            if e == exponent:
                return v
        raise ValueError(f"exponent {exponent} outside the specialization domain")

    def __eq__(self, other):
        return (
            isinstance(other, Specialization)
            and self.assignments == other.assignments
        )

    def __hash__(self):
        return hash(self.assignments)

    def __repr__(self):
        return f"Specialization(domain={len(self.assignments)})"


def apply_specialization(aux: AuxiliaryLG, spec: Specialization) -> Potential:
    """Concrete potential from a family and a full coefficient choice.

    The specialization must cover the exponent set exactly: partial or
    surplus assignments are rejected rather than padded with zeros.
    """
    if set(spec.domain) != set(aux.exponents):
        raise ValueError("specialization domain does not match the exponent set")
    return Potential((e, spec.value(e)) for e in aux.exponents)


class DualityError(ValueError):
    """A fan pair failed the nonnegative-pairing test; carries the report."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class ToricLGModel:
    """A dual pair of marked fans with the two potential families it carries.

    Construction verifies the pairing condition and fails with the
    offending witness otherwise.  `family` lives on the first fan with
    the second fan's markers as exponents; `dual_family` is the mirror
    arrangement.
    """

    __slots__ = ("fan", "dual_fan", "family", "dual_family")

    def __init__(self, fan, dual_fan):
        report = is_dual_pair(fan, dual_fan)
        if not report:
            m, n, value = report.witness
            raise DualityError(
                f"not a dual pair: {m} pairs to {value} against {n}", report
            )
        object.__setattr__(self, "fan", fan)
        object.__setattr__(self, "dual_fan", dual_fan)
        object.__setattr__(
            self, "family", AuxiliaryLG(fan, dual_fan.marked_generators)
        )
        object.__setattr__(
            self, "dual_family", AuxiliaryLG(dual_fan, fan.marked_generators)
        )

    def __setattr__(self, name, value):
        raise AttributeError("ToricLGModel is immutable")

    def __repr__(self):
        return (
            f"ToricLGModel(rank={self.fan.lattice_rank}, "
            f"exponents={len(self.family.exponents)})"
        )


def lg_from_dual_fans(s: Fan, s_prime: Fan) -> ToricLGModel:
    """Model of the pair (s, s_prime); raises DualityError with a witness
    when the fans do not pair nonnegatively."""
    return ToricLGModel(s, s_prime)


class CIData:
    """Recovered split-bundle structure on a fan.

    `transform` is the unimodular relabeling under which the fan equals
    `split_bundle_fan(divisors)`; the chosen candidates become the
    vertical rays, in order.
    """

    __slots__ = ("base_fan", "divisors", "transform")

    def __init__(self, base_fan, divisors, transform):
        object.__setattr__(self, "base_fan", base_fan)
        object.__setattr__(self, "divisors", tuple(divisors))
        object.__setattr__(self, "transform", transform)

    def __setattr__(self, name, value):
        raise AttributeError("CIData is immutable")

    def __repr__(self):
        return (
            f"CIData(base_rank={self.base_fan.lattice_rank}, "
            f"summands={len(self.divisors)})"
        )


def recover_ci_data(f: Fan, candidates=None):
    """Split-bundle structure of a fan, or None when there is none.

    `candidates` picks the rays that should become vertical; omitting it
    searches all subsets, smallest first, which is only allowed on fans
    with at most twelve rays.  Success requires the candidates to extend
    to a lattice basis, to lie in every maximal cone, and the stripped
    fan to be an honest base with Cartier height data that rebuilds the
    input exactly.
    """
    if candidates is None:
        if len(f.rays) > 12:
            raise ValueError(
                "too many rays for exhaustive search: pass explicit candidates"
            )
        for size in range(1, len(f.rays) + 1):
            for combo in combinations(range(len(f.rays)), size):
                found = _recover(f, combo)
                if found is not None:
                    return found
        return None
    index = {r: i for i, r in enumerate(f.rays)}
    picked = []
    for cand in candidates:
        i = index.get(tuple(int(x) for x in cand))
        if i is None:
            raise ValueError(f"candidate {tuple(cand)} is not a ray of the fan")
        picked.append(i)
    if len(set(picked)) != len(picked):
        raise ValueError("candidates must be distinct")
    if not picked:
        raise ValueError("need at least one candidate")
    return _recover(f, tuple(picked))


def _recover(f: Fan, idx):
    c = len(idx)
    base_rank = f.lattice_rank - c
    if base_rank < 1:
        return None  # no proper base left under the candidates
    if not f.max_cones:
        return None
    if any(not set(idx) <= set(ixs) for ixs in f.max_cones):
        return None
    mc = LatticeMap.from_cols([f.rays[i] for i in idx], nrows=f.lattice_rank)
    dec = snf(mc)
    if dec.rank < c or dec.invariant_factors != ():
        return None  # candidates do not extend to a lattice basis
    units = [
        tuple(int(j == base_rank + k) for j in range(f.lattice_rank))
        for k in range(c)
    ]
    if all(f.rays[i] == u for i, u in zip(idx, units)):
        transform = LatticeMap.identity(f.lattice_rank)
    else:
        u_inv = int_inverse(dec.U)
        basis = LatticeMap.from_cols(
            [u_inv.col(j) for j in range(c, f.lattice_rank)]
            + [f.rays[i] for i in idx],
            nrows=f.lattice_rank,
        )
        transform = int_inverse(basis)
    relabeled = relabel_fan(f, transform)
    base_rays = []
    heights = []
    positions = {}
    for pos, ray in enumerate(relabeled.rays):
        if pos in idx:
            continue
        u = ray[:base_rank]
        if not any(u) or primitive_vector(u) != u or u in positions:
            return None
        positions[u] = len(base_rays)
        base_rays.append(u)
        heights.append(ray[base_rank:])
    remap = {
        pos: positions[relabeled.rays[pos][:base_rank]]
        for pos in range(len(f.rays))
        if pos not in idx
    }
    base_cones = [
        tuple(remap[i] for i in ixs if i not in idx) for ixs in f.max_cones
    ]
    base = Fan(base_rays, base_cones, base_rank)
    divisors = []
    for a in range(c):
        d = ToricDivisor(base, [h[a] for h in heights])
        if is_cartier(d) is None:
            return None
        divisors.append(d)
    if split_bundle_fan(divisors) != relabeled:
        return None
    return CIData(base, tuple(divisors), transform)
