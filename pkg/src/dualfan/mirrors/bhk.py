"""Mirror pairs from invertible exponent matrices with a symmetry choice.

The input is a square nonnegative integer matrix P with det P != 0
(columns are the exponents of the defining monomials) together with a
finite group Q of diagonal phase symmetries.  Invariant characters form
a finite-index sublattice M of Z^(n+1); both fans are orthant images,
one through the chosen basis of M, one through the matrix that writes
the monomial exponents in that basis.
"""

from fractions import Fraction

from ..fans import is_dual_pair, orthant_fan, quotient_fan
from ..groups import FiniteAbelianGroup
from ..lattice import (
    LatticeMap,
    annihilator_lattice,
    rational_inverse,
    solve_integer_matrix,
)
from ..toric_lg import (
    AuxiliaryLG,
    Specialization,
    apply_specialization,
    base_change_check,
)
from .report import MirrorReport


def _as_matrix(p):
    if not isinstance(p, LatticeMap):
        p = LatticeMap([tuple(row) for row in p])
    if p.rows != p.cols or p.rows == 0:
        raise ValueError("exponent matrix must be square and nonempty")
    if any(x < 0 for row in p.entries for x in row):
        raise ValueError("exponent matrix entries must be nonnegative")
    if p.det() == 0:
        raise ValueError("exponent matrix must be invertible")
    return p


def _as_phases(q_gens, rank):
    out = []
    for g in q_gens:
        g = tuple(Fraction(x) for x in g)
        if len(g) != rank:
            raise ValueError("phase vector has wrong length")
        out.append(g)
    return tuple(out)


def phase_symmetries(p) -> FiniteAbelianGroup:
    """All diagonal phase symmetries fixing every monomial of P.

    A phase vector q acts on the j-th monomial by the fractional part of
    the j-th entry of P^t q, so the full group is generated by the rows
    of the inverse of P.
    """
    p = _as_matrix(p)
    return FiniteAbelianGroup.from_phases(rational_inverse(p), p.rows)


def _dual_data(p, q_gens):
    """(A, X, Q, Q_dual) with A a basis of the Q-invariant characters
    and X the exponents of P written in that basis, A @ X == P."""
    p = _as_matrix(p)
    n = p.rows
    gens = _as_phases(q_gens, n)
    q_group = FiniteAbelianGroup.from_phases(gens, n)
    if not q_group.is_subgroup_of(phase_symmetries(p)):
        raise ValueError("Q is not a subgroup of the symmetry group of P")
    a = annihilator_lattice(gens, n)
    x = solve_integer_matrix(a, p)
    # solvable whenever Q fixes the monomials, which was just checked
    assert x is not None
    dual_gens = tuple(zip(*rational_inverse(x)))
    q_dual = FiniteAbelianGroup.from_phases(dual_gens, n)
    return p, a, x, q_group, q_dual


def krawitz_dual_group(p, q_gens) -> FiniteAbelianGroup:
    """The dual symmetry group attached to (P, Q).

    Writing the invariant characters through a basis A with A X = P, the
    dual group is generated by the columns of the inverse of X, read as
    phases for the transposed matrix.
    """
    return _dual_data(p, q_gens)[4]


class BhkCriterionReport:
    """Both groups of a dual pair with the mirror-symmetry comparison.

    `holds` records that Q and the quotient on the transposed side are
    isomorphic, and symmetrically for the dual group.
    """

    __slots__ = ("q_group", "q_dual_group", "quotient_factors",
                 "dual_quotient_factors", "holds")

    def __init__(self, q_group, q_dual_group, quotient_factors,
                 dual_quotient_factors):
        object.__setattr__(self, "q_group", q_group)
        object.__setattr__(self, "q_dual_group", q_dual_group)
        object.__setattr__(self, "quotient_factors", tuple(quotient_factors))
        object.__setattr__(self, "dual_quotient_factors",
                           tuple(dual_quotient_factors))
        holds = (q_group.invariant_factors == self.dual_quotient_factors
                 and q_dual_group.invariant_factors == self.quotient_factors)
        object.__setattr__(self, "holds", holds)

    def __setattr__(self, name, value):
        raise AttributeError("BhkCriterionReport is immutable")

    def __repr__(self):
        return (f"BhkCriterionReport(q={self.q_group.invariant_factors}, "
                f"q_dual={self.q_dual_group.invariant_factors}, "
                f"holds={self.holds})")


def verify_bhk_criterion(p, q_gens) -> BhkCriterionReport:
    """Check Q against the quotient of the transposed symmetries and
    the dual group against the quotient of the original ones."""
    p, _, _, q_group, q_dual = _dual_data(p, q_gens)
    g_factors = phase_symmetries(p).quotient_factors(q_group)
    g_dual_factors = phase_symmetries(p.transpose()).quotient_factors(q_dual)
    return BhkCriterionReport(q_group, q_dual, g_factors, g_dual_factors)


def bhk_pair(p, q_gens=()) -> MirrorReport:
    """Build the mirror pair of marked quotient fans for (P, Q).

    The fan on the potential side is the orthant image through the
    transpose of the invariant basis A; the dual fan is the orthant
    image through X where A X = P.  Markers on either side are exactly
    the potential exponents of the other, and they pair to the entries
    of P.
    """
    p, a, x, q_group, q_dual = _dual_data(p, q_gens)
    n = p.rows
    orthant = orthant_fan(n)

    sigma, (free_rank, torsion) = quotient_fan(orthant, a.transpose())
    sigma_prime, (free_rank_p, torsion_p) = quotient_fan(orthant, x)
    checks = [
        ("finite_quotients", free_rank == 0 and free_rank_p == 0),
        ("quotient_group_matches_q", torsion == q_group),
        ("dual_quotient_group_matches_dual_q", torsion_p == q_dual),
    ]

    # markers pair to the exponent matrix itself
    pairing_ok = all(
        sum(ai * xi for ai, xi in zip(sigma.marked_generators[i],
                                      sigma_prime.marked_generators[j]))
        == p.entries[i][j]
        for i in range(n) for j in range(n))
    checks.append(("markers_pair_to_exponents", pairing_ok))

    crit = verify_bhk_criterion(p, q_group.lifts)
    checks.append(("group_duality", crit.holds))
    checks.append(("order_law",
                   q_group.order * q_dual.order == abs(p.det())))

    gamma = AuxiliaryLG(sigma, x.columns())
    gamma_prime = AuxiliaryLG(sigma_prime, a.transpose().columns())
    to_gamma = base_change_check(gamma, sigma_prime)
    to_gamma_prime = base_change_check(gamma_prime, sigma)
    checks.append(("coefficient_rings_isomorphic",
                   to_gamma.is_isomorphism and to_gamma_prime.is_isomorphism))

    ones = Specialization({e: 1 for e in gamma.exponents})
    ones_prime = Specialization({e: 1 for e in gamma_prime.exponents})
    potentials = [
        ("w", apply_specialization(gamma, ones)),
        ("w_prime", apply_specialization(gamma_prime, ones_prime)),
    ]

    counts = [
        ("rank", n),
        ("xi_count", len(gamma.exponents)),
        ("xi_prime_count", len(gamma_prime.exponents)),
        ("q_order", q_group.order),
        ("q_dual_order", q_dual.order),
        ("determinant", abs(p.det())),
    ]
    notes = (
        "dual fan is the orthant image under the transposed factor: "
        "its markers are columns of X with A X = P, so the marker "
        "pairing reproduces P entrywise",
    )

    return MirrorReport(sigma, sigma_prime, is_dual_pair(sigma, sigma_prime),
                        to_gamma=to_gamma, to_gamma_prime=to_gamma_prime,
                        checks=checks, counts=counts, potentials=potentials,
                        notes=notes)
