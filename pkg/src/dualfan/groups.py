"""Finite abelian groups given by invariant factors plus generator lifts.

A group element never exists on its own here: groups arise either as the
torsion of a cokernel (lifts are integer vectors in the codomain) or as a
subgroup of (Q/Z)^m generated by phase vectors (lifts are rational vectors
with entries in [0,1)).  Both cases share the same presentation record, and
isomorphism testing is just equality of invariant-factor lists.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd, prod

from .lattice import (
    LatticeMap,
    column_lattice_basis,
    int_inverse,
    snf,
    solve_integer,
    solve_integer_matrix,
)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def normalize_phase(q):
    """Reduce a rational vector componentwise into [0,1)."""
    return tuple(_frac(x) % 1 for x in q)


def _lcm(a, b):
    return a * b // gcd(a, b)


def _common_denominator(vectors):
    ell = 1
    for v in vectors:
        for x in v:
            ell = _lcm(ell, _frac(x).denominator)
    return ell


def _scaled_lattice_basis(phase_vectors, ambient_rank, ell):
    """Column basis of ell·L where L = Z^m + sum of Z·q over the phases.

    `ell` must clear every denominator.  The result is a nonsingular m×m
    matrix in canonical (column-Hermite) form, so it identifies L uniquely.
    """
    cols = [tuple(int(_frac(x) * ell) for x in q) for q in phase_vectors]
    cols += [
        tuple(ell if j == i else 0 for j in range(ambient_rank))
        for i in range(ambient_rank)
    ]
    return column_lattice_basis(cols, ambient_rank)


class FiniteAbelianGroup:
    """Invariant-factor presentation of a finite abelian group.

    `invariant_factors` is the divisibility chain restricted to factors
    greater than one (empty means the trivial group).  `lifts[i]` is a
    rational vector in the rank-`ambient_rank` ambient whose class
    generates the i-th cyclic factor.
    """

    __slots__ = ("invariant_factors", "lifts", "ambient_rank")

    def __init__(self, invariant_factors, lifts, ambient_rank):
        factors = tuple(int(d) for d in invariant_factors)
        if any(d <= 1 for d in factors):
            raise ValueError("invariant factors must all exceed 1")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        lifts = tuple(tuple(_frac(x) for x in v) for v in lifts)
        if len(lifts) != len(factors):
            raise ValueError("one generator lift per invariant factor")
        if any(len(v) != ambient_rank for v in lifts):
            raise ValueError("generator lift has wrong length")
        object.__setattr__(self, "invariant_factors", factors)
        object.__setattr__(self, "lifts", lifts)
        object.__setattr__(self, "ambient_rank", int(ambient_rank))

    def __setattr__(self, name, value):
        raise AttributeError("FiniteAbelianGroup is immutable")

    @classmethod
    def trivial(cls, ambient_rank):
        return cls((), (), ambient_rank)

    @classmethod
    def from_phases(cls, phases, ambient_rank):
        """Canonical presentation of the subgroup of (Q/Z)^m the given
        phase vectors generate.

        The construction scales away denominators, takes the Hermite
        basis B of the scaled lattice, and reads the quotient by ell·Z^m
        off the Smith form of B⁻¹·(ell·id).  Every step is canonical, so
        two generating sets of the same subgroup produce equal objects.
        """
        qs = [normalize_phase(q) for q in phases]
        for q in qs:
            if len(q) != ambient_rank:
                raise ValueError("phase vector has wrong length")
        ell = _common_denominator(qs)
        basis = _scaled_lattice_basis(qs, ambient_rank, ell)
        scaled_ambient = LatticeMap(
            tuple(
                tuple(ell if i == j else 0 for j in range(ambient_rank))
                for i in range(ambient_rank)
            )
        ) if ambient_rank else LatticeMap.zero(0, 0)
        y = solve_integer_matrix(basis, scaled_ambient)
        if y is None:
            raise AssertionError("ell·Z^m must lie in the scaled lattice")
        dec = snf(y)
        u_inv = int_inverse(dec.U) if ambient_rank else LatticeMap.zero(0, 0)
        factors = []
        lifts = []
        for i, d in enumerate(dec.diagonal):
            if d > 1:
                ambient_vec = basis @ u_inv.col(i)
                lifts.append(tuple(Fraction(x, ell) % 1 for x in ambient_vec))
                factors.append(d)
        return cls(tuple(factors), tuple(lifts), ambient_rank)

    @property
    def order(self):
        return prod(self.invariant_factors)

    @property
    def exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self):
        return not self.invariant_factors

    def is_isomorphic_to(self, other) -> bool:
        return self.invariant_factors == other.invariant_factors

    def contains_phase(self, phase) -> bool:
        """Membership test for a rational vector, read modulo Z^m."""
        q = normalize_phase(phase)
        if len(q) != self.ambient_rank:
            raise ValueError("phase vector has wrong length")
        ell = _lcm(_common_denominator(self.lifts), _common_denominator([q]))
        basis = _scaled_lattice_basis(self.lifts, self.ambient_rank, ell)
        target = tuple(int(x * ell) for x in q)
        return solve_integer(basis, target) is not None

    def elements(self):
        """Every element as a normalized phase tuple.

        Enumerates the full group, so callers are expected to keep the
        order small (the test suite stays at 625 or below).
        """
        out = []
        for ks in product(*(range(d) for d in self.invariant_factors)):
            acc = [Fraction(0)] * self.ambient_rank
            for k, lift in zip(ks, self.lifts):
                for i, x in enumerate(lift):
                    acc[i] += k * x
            out.append(tuple(x % 1 for x in acc))
        return out

    def is_subgroup_of(self, other) -> bool:
        return other._quotient_map(self) is not None

    def quotient_factors(self, sub):
        """Invariant factors (> 1 only) of self modulo the phase subgroup
        `sub`; raises if `sub` does not sit inside self."""
        x = self._quotient_map(sub)
        if x is None:
            raise ValueError("not a subgroup")
        return snf(x).invariant_factors

    def _quotient_map(self, sub):
        # Integer matrix X with B_self·X = B_sub at a common scale, or
        # None when sub is not contained in self.
        if sub.ambient_rank != self.ambient_rank:
            return None
        ell = _lcm(
            _common_denominator(self.lifts), _common_denominator(sub.lifts)
        )
        b_big = _scaled_lattice_basis(self.lifts, self.ambient_rank, ell)
        b_sub = _scaled_lattice_basis(sub.lifts, self.ambient_rank, ell)
        return solve_integer_matrix(b_big, b_sub)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteAbelianGroup)
            and self.invariant_factors == other.invariant_factors
            and self.lifts == other.lifts
            and self.ambient_rank == other.ambient_rank
        )

    def __hash__(self):
        return hash((self.invariant_factors, self.lifts, self.ambient_rank))

    def __repr__(self):
        return (
            f"FiniteAbelianGroup({self.invariant_factors!r}, "
            f"{self.lifts!r}, {self.ambient_rank!r})"
        )
