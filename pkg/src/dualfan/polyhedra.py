"""Exact rational polyhedral cones and polytopes.

Both representations of every cone are computed eagerly at construction
by an integer-only incremental double description pass, with constraints
inserted in sorted order so that results are deterministic.  Polytopes
ride on top of their homogenization cones: a polytope in rank n is the
slice at height one of a cone in rank n+1.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .lattice import LatticeMap, kernel_basis


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def primitive_vector(v):
    """Divide out the content; the direction is preserved."""
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return v
    return tuple(x // g for x in v)


def _dedup(vectors):
    return list(dict.fromkeys(vectors))


def _double_description(constraints, ambient):
    """Extreme rays and lineality of {x : c·x ≥ 0 for every c}.

    Returns (rays, lineality) where `rays` generate the pointed part and
    `lineality` is the canonical saturated basis (columns of a kernel) of
    the largest linear subspace inside.  Constraints are deduplicated and
    processed in lexicographic order, making the ray list reproducible.
    """
    cons = sorted({primitive_vector(c) for c in constraints if any(c)})
    lin = [tuple(int(i == j) for j in range(ambient)) for i in range(ambient)]
    rays = []
    inserted = []
    for a in cons:
        pivot = next((l for l in lin if _dot(a, l) != 0), None)
        if pivot is not None:
            # the constraint cuts the lineality space: the new cone is
            # (old ∩ {a = 0}) + ray(pivot), everything else projects in
            if _dot(a, pivot) < 0:
                pivot = tuple(-x for x in pivot)
            ap = _dot(a, pivot)
            lin = [
                primitive_vector(
                    tuple(ap * x - _dot(a, l) * p for x, p in zip(l, pivot))
                )
                for l in lin
                if l is not pivot
            ]
            lin = [l for l in lin if any(l)]
            rays = _dedup(
                [
                    primitive_vector(
                        tuple(ap * x - _dot(a, r) * p for x, p in zip(r, pivot))
                    )
                    for r in rays
                ]
                + [pivot]
            )
            rays = [r for r in rays if any(r)]
            inserted.append(a)
            continue
        pos = [r for r in rays if _dot(a, r) > 0]
        zero = [r for r in rays if _dot(a, r) == 0]
        neg = [r for r in rays if _dot(a, r) < 0]
        combined = []
        need = ambient - len(lin) - 2
        if neg and pos and need >= 0:
            for p in pos:
                vp = _dot(a, p)
                for n in neg:
                    common = [
                        c for c in inserted if _dot(c, p) == 0 and _dot(c, n) == 0
                    ]
                    if len(common) < need:
                        continue
                    if LatticeMap.from_rows(common, ncols=ambient).rank() != need:
                        continue
                    vn = _dot(a, n)
                    combined.append(
                        primitive_vector(
                            tuple(vp * x - vn * y for x, y in zip(n, p))
                        )
                    )
        rays = _dedup(pos + zero + combined)
        inserted.append(a)
    lin_basis = kernel_basis(LatticeMap.from_rows(cons, ncols=ambient))
    lineality = [lin_basis.col(j) for j in range(lin_basis.cols)]
    return sorted(rays), lineality


def _with_flips(rays, lineality):
    out = list(rays)
    for l in lineality:
        out.append(l)
        out.append(tuple(-x for x in l))
    return tuple(sorted(_dedup(out)))


class Cone:
    """A rational polyhedral cone with both descriptions cached.

    `generators` lists the primitive extreme rays, padded with a ± pair
    per lineality basis vector when the cone contains lines.  The facet
    normals play the same role for the dual cone, so a lower-dimensional
    cone carries ± pairs of span equations among its normals.
    """

    __slots__ = (
        "ambient_rank",
        "generators",
        "facet_normals",
        "lineality_rank",
        "dim",
        "_rays",
        "_lineality",
        "_dual_rays",
        "_dual_lineality",
    )

    def __init__(self, generators, ambient_rank):
        gens = sorted(
            {primitive_vector(g) for g in generators if any(g)}
        )
        for g in gens:
            if len(g) != ambient_rank:
                raise ValueError("generator has wrong length")
        dual_rays, dual_lin = _double_description(gens, ambient_rank)
        rays, lin = _double_description(
            _with_flips(dual_rays, dual_lin), ambient_rank
        )
        self._install(ambient_rank, rays, lin, dual_rays, dual_lin)

    def _install(self, ambient_rank, rays, lin, dual_rays, dual_lin):
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "_rays", tuple(rays))
        object.__setattr__(self, "_lineality", tuple(lin))
        object.__setattr__(self, "_dual_rays", tuple(dual_rays))
        object.__setattr__(self, "_dual_lineality", tuple(dual_lin))
        object.__setattr__(self, "generators", _with_flips(rays, lin))
        object.__setattr__(self, "facet_normals", _with_flips(dual_rays, dual_lin))
        object.__setattr__(self, "lineality_rank", len(lin))
        dim = LatticeMap.from_rows(list(self.generators), ncols=ambient_rank).rank()
        object.__setattr__(self, "dim", dim)

    def __setattr__(self, name, value):
        raise AttributeError("Cone is immutable")

    @classmethod
    def from_inequalities(cls, normals, ambient_rank):
        rays, lin = _double_description(normals, ambient_rank)
        return cls(_with_flips(rays, lin), ambient_rank)

    @classmethod
    def _from_parts(cls, ambient_rank, rays, lin, dual_rays, dual_lin):
        cone = object.__new__(cls)
        cone._install(ambient_rank, rays, lin, dual_rays, dual_lin)
        return cone

    @property
    def extreme_rays(self):
        return self._rays

    def dual(self) -> "Cone":
        """The dual cone, free of charge: both descriptions swap."""
        return Cone._from_parts(
            self.ambient_rank,
            self._dual_rays,
            self._dual_lineality,
            self._rays,
            self._lineality,
        )

    def is_strongly_convex(self) -> bool:
        return self.lineality_rank == 0

    def contains_vector(self, v) -> bool:
        return all(_dot(n, v) >= 0 for n in self.facet_normals)

    def contains_cone(self, other) -> bool:
        return all(self.contains_vector(g) for g in other.generators)

    def intersection(self, other) -> "Cone":
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        return Cone.from_inequalities(
            list(self.facet_normals) + list(other.facet_normals),
            self.ambient_rank,
        )

    def minimal_face_containing(self, vectors) -> "Cone":
        """Smallest face whose span admits all the given cone members."""
        tight = [
            n
            for n in self.facet_normals
            if all(_dot(n, v) == 0 for v in vectors)
        ]
        gens = [
            g for g in self.generators if all(_dot(n, g) == 0 for n in tight)
        ]
        return Cone(gens, self.ambient_rank)

    def ray_generator(self):
        if self.dim != 1 or not self.is_strongly_convex():
            raise ValueError("not a ray")
        return self._rays[0]

    def canonical_key(self):
        if not self.is_strongly_convex():
            raise ValueError("has lineality")
        return self._rays

    def all_faces(self):
        """Every face, keyed by its set of extreme rays.

        Requires strong convexity; faces are intersections of facets, so
        a breadth-first closure over single-facet cuts finds them all.
        """
        if not self.is_strongly_convex():
            raise ValueError("has lineality")
        rays = self._rays
        seen = {frozenset(range(len(rays)))}
        frontier = [frozenset(range(len(rays)))]
        while frontier:
            cur = frontier.pop()
            for n in self.facet_normals:
                child = frozenset(
                    i for i in cur if _dot(n, rays[i]) == 0
                )
                if child not in seen:
                    seen.add(child)
                    frontier.append(child)
        faces = [
            Cone([rays[i] for i in key], self.ambient_rank) for key in seen
        ]
        faces.sort(key=lambda f: (f.dim, f.generators))
        return faces

    def faces(self, k):
        return [f for f in self.all_faces() if f.dim == k]

    def is_face_of(self, other) -> bool:
        if not other.contains_cone(self):
            return False
        return other.minimal_face_containing(self.generators) == self

    def __eq__(self, other):
        return (
            isinstance(other, Cone)
            and self.ambient_rank == other.ambient_rank
            and self.contains_cone(other)
            and other.contains_cone(self)
        )

    def __hash__(self):
        # weak but consistent with mutual-inclusion equality
        return hash((self.ambient_rank, self.dim, self.lineality_rank))

    def __repr__(self):
        return f"Cone({[list(g) for g in self.generators]!r}, {self.ambient_rank})"


def dual_cone(c: Cone) -> Cone:
    return c.dual()


def _as_fraction_vector(v):
    return tuple(Fraction(x) for x in v)


def _lift_point(v):
    """Primitive integer lift (v·d, d) of a rational point."""
    fracs = _as_fraction_vector(v)
    d = lcm(*(x.denominator for x in fracs)) if fracs else 1
    return primitive_vector(tuple(int(x * d) for x in fracs) + (d,))


def _scale_constraint(normal, offset):
    fracs = tuple(Fraction(x) for x in normal) + (Fraction(offset),)
    d = lcm(*(x.denominator for x in fracs))
    return primitive_vector(tuple(int(x * d) for x in fracs))


class Polytope:
    """A rational convex polyhedral set, bounded unless stated otherwise.

    The H-rep pairs (a, ℓ) mean a·m + ℓ ≥ 0.  Construction from either
    representation converges to the same canonical fields, with vertices
    sorted lexicographically and facet data inherited from the
    homogenization cone.
    """

    __slots__ = (
        "ambient_rank",
        "vertices",
        "hrep",
        "bounded",
        "dim",
        "_recession",
        "_lineality",
    )

    def __init__(self, *, ambient_rank, vertices, hrep, bounded, recession, lineality, dim):
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "hrep", hrep)
        object.__setattr__(self, "bounded", bounded)
        object.__setattr__(self, "_recession", recession)
        object.__setattr__(self, "_lineality", lineality)
        object.__setattr__(self, "dim", dim)

    def __setattr__(self, name, value):
        raise AttributeError("Polytope is immutable")

    @classmethod
    def from_vertices(cls, points, ambient_rank=None):
        points = [tuple(_as_fraction_vector(p)) for p in points]
        if not points:
            raise ValueError("need at least one point")
        if ambient_rank is None:
            ambient_rank = len(points[0])
        if any(len(p) != ambient_rank for p in points):
            raise ValueError("point has wrong length")
        cone = Cone([_lift_point(p) for p in points], ambient_rank + 1)
        return cls._from_homogenization(cone, ambient_rank)

    @classmethod
    def from_hrep(cls, pairs, ambient_rank):
        rows = [_scale_constraint(a, off) for a, off in pairs]
        rows.append(tuple(0 for _ in range(ambient_rank)) + (1,))
        rays, lin = _double_description(rows, ambient_rank + 1)
        cone = Cone(_with_flips(rays, lin), ambient_rank + 1)
        return cls._from_homogenization(cone, ambient_rank)

    @classmethod
    def _from_homogenization(cls, cone, ambient_rank):
        verts = []
        recession = []
        for r in cone.extreme_rays:
            t = r[-1]
            if t > 0:
                verts.append(tuple(Fraction(x, t) for x in r[:-1]))
            elif t == 0:
                recession.append(r[:-1])
            else:
                raise AssertionError("height must be nonnegative")
        lineality = tuple(l[:-1] for l in cone._lineality)
        hrep = []
        for n in cone.facet_normals:
            a, off = n[:-1], n[-1]
            if not any(a):
                continue  # vacuous height constraints like t ≥ 0
            hrep.append((a, Fraction(off)))
        bounded = not recession and not lineality and bool(verts)
        return cls(
            ambient_rank=ambient_rank,
            vertices=tuple(sorted(verts)),
            hrep=tuple(sorted(hrep)),
            bounded=bounded,
            recession=tuple(sorted(recession)),
            lineality=lineality,
            dim=cone.dim - 1 if cone.dim > 0 else -1,
        )

    @property
    def recession_rays(self):
        return self._recession

    def is_empty(self) -> bool:
        return not self.vertices and not self._recession and not self._lineality

    def contains(self, point) -> bool:
        p = _as_fraction_vector(point)
        return all(
            sum(a * x for a, x in zip(n, p)) + off >= 0 for n, off in self.hrep
        ) and not self.is_empty()

    def translate(self, vec) -> "Polytope":
        v = _as_fraction_vector(vec)
        return Polytope.from_vertices(
            [tuple(a + b for a, b in zip(p, v)) for p in self.vertices],
            self.ambient_rank,
        )

    def minkowski_sum(self, other) -> "Polytope":
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        if not (self.bounded and other.bounded):
            raise ValueError("unbounded")
        return Polytope.from_vertices(
            [
                tuple(a + b for a, b in zip(p, q))
                for p in self.vertices
                for q in other.vertices
            ],
            self.ambient_rank,
        )

    def lattice_points(self):
        """All integer points, lexicographically sorted.

        Depth-first sweep over the coordinates with interval pruning: a
        partial assignment is abandoned as soon as some inequality can no
        longer be satisfied anywhere over the remaining coordinate box.
        """
        if not self.bounded:
            raise ValueError("unbounded")
        if not self.vertices:
            return []
        n = self.ambient_rank
        lo = []
        hi = []
        for i in range(n):
            coords = [v[i] for v in self.vertices]
            lo.append(-int(-min(coords) // 1))
            hi.append(int(max(coords) // 1))
        out = []
        hrep = [(tuple(a), off) for a, off in self.hrep]

        def sweep(prefix):
            d = len(prefix)
            if d == n:
                out.append(tuple(prefix))
                return
            for k in range(lo[d], hi[d] + 1):
                prefix.append(k)
                ok = True
                for a, off in hrep:
                    acc = off + sum(
                        Fraction(c) * x for c, x in zip(a, prefix)
                    )
                    best = acc + sum(
                        max(Fraction(a[i]) * lo[i], Fraction(a[i]) * hi[i])
                        for i in range(d + 1, n)
                    )
                    if best < 0:
                        ok = False
                        break
                if ok:
                    sweep(prefix)
                prefix.pop()

        sweep([])
        return sorted(out)

    def polar(self) -> "Polytope":
        """{n : ⟨m,n⟩ ≥ −1 for every m here}; an involution."""
        if not self.bounded:
            raise ValueError("unbounded")
        if self.dim < self.ambient_rank or any(
            off <= 0 for _, off in self.hrep
        ):
            raise ValueError("polar undefined: origin is not interior")
        return Polytope.from_hrep(
            [(tuple(v), Fraction(1)) for v in self.vertices],
            self.ambient_rank,
        )

    def normal_fan(self):
        """The complete fan of vertex cones in the dual lattice.

        Cones use the inner-normal convention matching the stored H-rep:
        the cone at a vertex is spanned by the normals of the facets
        through that vertex.
        """
        from .fans import Fan

        if self.dim < self.ambient_rank:
            raise ValueError("not full dimensional")
        if not self.vertices:
            raise ValueError("no vertices")
        cones = []
        for v in self.vertices:
            tight = [
                a
                for a, off in self.hrep
                if sum(Fraction(x) * y for x, y in zip(a, v)) + off == 0
            ]
            cones.append(Cone(tight, self.ambient_rank))
        return Fan.from_maximal_cones(cones, self.ambient_rank)

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.ambient_rank == other.ambient_rank
            and self.vertices == other.vertices
            and self._recession == other._recession
            and self._lineality == other._lineality
        )

    def __hash__(self):
        return hash((self.ambient_rank, self.vertices, self._recession))

    def __repr__(self):
        return (
            f"Polytope(vertices={[list(map(str, v)) for v in self.vertices]!r})"
        )
