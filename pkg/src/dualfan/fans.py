"""Fans of strongly convex rational cones, stored via maximal cones.

Lower-dimensional cones are derived on demand from the maximal ones, so
closure under faces holds by construction.  Rays may carry marked
generators: integer multiples of the primitive generators that record
images under lattice maps before any primitivization.  Pairing-based
checks use the marks; geometry always uses the primitive rays.
"""

from __future__ import annotations

from fractions import Fraction

from .groups import FiniteAbelianGroup
from .lattice import LatticeMap, int_inverse, snf
from .polyhedra import Cone, primitive_vector


class FanValidation:
    """Verdict plus human-readable diagnostics for fan validity."""

    __slots__ = ("ok", "diagnostics")

    def __init__(self, ok, diagnostics=()):
        object.__setattr__(self, "ok", bool(ok))
        object.__setattr__(self, "diagnostics", tuple(diagnostics))

    def __setattr__(self, name, value):
        raise AttributeError("FanValidation is immutable")

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"FanValidation(ok={self.ok}, diagnostics={list(self.diagnostics)!r})"


class DualFanReport:
    """Outcome of a dual-fan test; a false verdict carries a witness."""

    __slots__ = ("verdict", "witness")

    def __init__(self, verdict, witness=None):
        if not verdict and witness is None:
            raise ValueError("a failing report needs a witness")
        object.__setattr__(self, "verdict", bool(verdict))
        object.__setattr__(self, "witness", witness)

    def __setattr__(self, name, value):
        raise AttributeError("DualFanReport is immutable")

    def __bool__(self):
        return self.verdict

    def __repr__(self):
        return f"DualFanReport(verdict={self.verdict}, witness={self.witness!r})"


class Fan:
    """A fan given by rays and maximal cones over ray-index sets.

    `rays` must be primitive and pairwise distinct; `marked_generators`
    defaults to the rays themselves and must stay positively parallel to
    them.  Construction does not check the fan condition: `validate_fan`
    does, and reports what went wrong.
    """

    __slots__ = ("lattice_rank", "rays", "marked_generators", "max_cones", "cones")

    def __init__(self, rays, max_cones, lattice_rank, marked_generators=None):
        rays = tuple(tuple(int(x) for x in r) for r in rays)
        for r in rays:
            if len(r) != lattice_rank:
                raise ValueError("ray has wrong length")
            if not any(r):
                raise ValueError("zero ray")
            if primitive_vector(r) != r:
                raise ValueError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise ValueError("rays must be pairwise distinct")
        if marked_generators is None:
            marked = rays
        else:
            marked = tuple(tuple(int(x) for x in m) for m in marked_generators)
            if len(marked) != len(rays):
                raise ValueError("one marked generator per ray")
            for r, m in zip(rays, marked):
                if primitive_vector(m) != r:
                    raise ValueError(
                        f"marked generator {m} is not a positive multiple of ray {r}"
                    )
        cleaned = []
        for ixs in max_cones:
            ixs = tuple(sorted(set(int(i) for i in ixs)))
            if any(i < 0 or i >= len(rays) for i in ixs):
                raise ValueError("cone refers to a missing ray")
            cleaned.append(ixs)
        cleaned = tuple(dict.fromkeys(cleaned))
        object.__setattr__(self, "lattice_rank", int(lattice_rank))
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "marked_generators", marked)
        object.__setattr__(self, "max_cones", cleaned)
        object.__setattr__(
            self,
            "cones",
            tuple(
                Cone([rays[i] for i in ixs], lattice_rank) for ixs in cleaned
            ),
        )

    def __setattr__(self, name, value):
        raise AttributeError("Fan is immutable")

    @classmethod
    def from_generators(cls, generators, max_cones, lattice_rank):
        """Rays are primitivized; the inputs become the marked generators."""
        gens = [tuple(int(x) for x in g) for g in generators]
        return cls(
            [primitive_vector(g) for g in gens],
            max_cones,
            lattice_rank,
            marked_generators=gens,
        )

    @classmethod
    def from_maximal_cones(cls, cones, lattice_rank):
        rays = []
        index = {}
        ixsets = []
        for c in cones:
            ixs = []
            for r in c.extreme_rays:
                if r not in index:
                    index[r] = len(rays)
                    rays.append(r)
                ixs.append(index[r])
            ixsets.append(tuple(sorted(ixs)))
        return cls(rays, ixsets, lattice_rank)

    def canonical_form(self):
        """Hashable shape of the fan: equality-by-value over any ray order."""
        return (
            self.lattice_rank,
            tuple(sorted(self.rays)),
            tuple(sorted(zip(self.rays, self.marked_generators))),
            tuple(sorted({c.generators for c in self.cones})),
        )

    def __eq__(self, other):
        return isinstance(other, Fan) and self.canonical_form() == other.canonical_form()

    def __hash__(self):
        return hash(self.canonical_form())

    def __repr__(self):
        return (
            f"Fan(rays={[list(r) for r in self.rays]!r}, "
            f"max_cones={[list(c) for c in self.max_cones]!r}, "
            f"lattice_rank={self.lattice_rank})"
        )


def validate_fan(f: Fan) -> FanValidation:
    """The fan condition: strong convexity plus the pairwise face test."""
    problems = []
    for ixs, cone in zip(f.max_cones, f.cones):
        if not cone.is_strongly_convex():
            problems.append(f"cone {list(ixs)} is not strongly convex")
    if not problems:
        for i in range(len(f.cones)):
            for j in range(i + 1, len(f.cones)):
                meet = f.cones[i].intersection(f.cones[j])
                if not meet.is_face_of(f.cones[i]) or not meet.is_face_of(
                    f.cones[j]
                ):
                    problems.append(
                        f"intersection of cones {list(f.max_cones[i])} and "
                        f"{list(f.max_cones[j])} is not a common face"
                    )
    return FanValidation(not problems, problems)


def k_cones(f: Fan, k):
    """All k-dimensional cones of the fan, deduplicated and sorted."""
    out = {}
    for cone in f.cones:
        for face in cone.all_faces():
            if face.dim == k:
                out.setdefault(face.generators, face)
    return [out[key] for key in sorted(out)]


def is_dual_pair(s: Fan, s_prime: Fan) -> DualFanReport:
    """Nonnegativity of the pairing between the two supports.

    Every cone is the nonnegative span of its rays, so by bilinearity
    the support condition holds exactly when every ray of `s_prime`
    pairs ≥ 0 with every ray of `s`; scaling cannot change signs, so
    primitive versus marked generators is immaterial here.
    """
    if s.lattice_rank != s_prime.lattice_rank:
        raise ValueError("rank mismatch")
    for m in s_prime.rays:
        for n in s.rays:
            value = sum(a * b for a, b in zip(m, n))
            if value < 0:
                return DualFanReport(False, (m, n, value))
    return DualFanReport(True)


def is_complete(f: Fan) -> bool:
    """Facet census: complete iff the support has no boundary.

    Requires a valid fan.  Every maximal cone must be full dimensional
    and every facet of a maximal cone must lie in exactly two of them.
    """
    if not f.cones:
        return False
    if any(c.dim != f.lattice_rank for c in f.cones):
        return False
    for cone in f.cones:
        for facet in cone.faces(f.lattice_rank - 1):
            owners = sum(1 for c in f.cones if c.contains_cone(facet))
            if owners != 2:
                return False
    return True


def is_smooth(f: Fan) -> bool:
    """Each maximal cone's rays must extend to a basis of the lattice."""
    for cone in f.cones:
        rays = cone.extreme_rays
        mat = LatticeMap.from_rows(list(rays), ncols=f.lattice_rank)
        dec = snf(mat)
        if dec.rank != len(rays) or dec.invariant_factors != ():
            return False
    return True


def quotient_fan(f: Fan, q: LatticeMap):
    """Push the fan through a lattice map, with the finite-quotient data.

    Returns (image fan, (k_rank, torsion)) where k_rank is the rank of
    the kernel of the transposed map on characters and torsion is the
    finite subgroup of the fan's torus that the map kills (its invariant
    factors equal those of the torsion of the transposed cokernel).
    Raises when the image cones do not form a fan.
    """
    if q.cols != f.lattice_rank:
        raise ValueError("map does not start at the fan's lattice")
    target = q.rows

    new_rays = []
    new_marked = []
    index_of = {}
    ray_image = {}
    for i, (r, m) in enumerate(zip(f.rays, f.marked_generators)):
        img = q @ r
        if not any(img):
            ray_image[i] = None  # ray collapses onto the origin
            continue
        prim = primitive_vector(img)
        mark = q @ m
        if prim in index_of:
            if new_marked[index_of[prim]] != mark:
                raise ValueError(
                    "quotient not a fan: conflicting marked generators "
                    f"on image ray {list(prim)}"
                )
        else:
            index_of[prim] = len(new_rays)
            new_rays.append(prim)
            new_marked.append(mark)
        ray_image[i] = index_of[prim]

    image_cones = []
    for ixs in f.max_cones:
        image_cones.append(
            tuple(
                sorted({ray_image[i] for i in ixs if ray_image[i] is not None})
            )
        )
    image = Fan(new_rays, image_cones, target, new_marked)

    check = validate_fan(image)
    if not check.ok:
        raise ValueError(f"quotient not a fan: {check.diagnostics[0]}")
    # the full image set {q(τ) : τ a face} must be closed under faces too
    for src, img in zip(f.cones, image.cones):
        for face in src.all_faces():
            pushed = Cone([q @ g for g in face.generators], target)
            if not pushed.is_face_of(img):
                raise ValueError(
                    "quotient not a fan: a face image is not a face "
                    f"of its cone image ({[list(g) for g in face.generators]})"
                )

    dec = snf(q)
    k_rank = q.rows - dec.rank
    phases = []
    for i in range(min(q.rows, q.cols)):
        d = dec.D.entries[i][i]
        if d > 1:
            col = dec.V.col(i)
            phases.append(tuple(Fraction(x, d) for x in col))
    torsion = FiniteAbelianGroup.from_phases(phases, f.lattice_rank)
    return image, (k_rank, torsion)


def relabel_fan(f: Fan, t: LatticeMap) -> Fan:
    """The same fan written through the unimodular coordinate change t.

    Rays, marked generators, and cone combinatorics all transport; t must
    be a square unimodular matrix on the fan's lattice.
    """
    if t.rows != f.lattice_rank or t.cols != f.lattice_rank:
        raise ValueError("map does not match the fan's lattice")
    int_inverse(t)  # rejects anything that is not a lattice automorphism
    return Fan(
        [t @ r for r in f.rays],
        f.max_cones,
        f.lattice_rank,
        marked_generators=[t @ m for m in f.marked_generators],
    )


def projective_space_fan(n) -> Fan:
    """Rays e₁,…,eₙ and −(e₁+⋯+eₙ); maximal cones are all n-subsets."""
    if n < 1:
        raise ValueError("rank must be positive")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    max_cones = [
        tuple(j for j in range(n + 1) if j != skip) for skip in range(n + 1)
    ]
    return Fan(rays, max_cones, n)


def orthant_fan(n) -> Fan:
    if n < 1:
        raise ValueError("rank must be positive")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return Fan(rays, [tuple(range(n))], n)
