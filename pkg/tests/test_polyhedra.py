"""Tests for cones and polytopes against brute-force oracles.

The double description output is checked pointwise against a
Caratheodory-style conic membership solver, and lattice point
enumeration against a plain numpy grid scan.  Neither oracle shares
code with the implementation.
"""

import random
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest

from dualfan.polyhedra import Cone, Polytope, dual_cone, primitive_vector

F = Fraction


def solve_unique(cols, target):
    """Exact solution of cols·λ = target when the columns are independent;
    None when they are dependent or the system is inconsistent."""
    m = [
        [F(col[i]) for col in cols] + [F(target[i])]
        for i in range(len(target))
    ]
    r = 0
    for c in range(len(cols)):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            return None
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    for i in range(r, len(m)):
        if m[i][-1] != 0:
            return None
    return [m[i][-1] for i in range(len(cols))]


def in_cone_brute(point, generators, rank):
    """Membership via Caratheodory: some independent subset suffices."""
    if not any(point):
        return True
    gens = list(generators)
    for k in range(1, rank + 1):
        for sub in combinations(gens, k):
            sol = solve_unique(sub, point)
            if sol is not None and all(x >= 0 for x in sol):
                return True
    return False


def grid_scan(poly):
    """Integer points of a bounded polytope by scanning the bounding box."""
    n = poly.ambient_rank
    lo = []
    hi = []
    for i in range(n):
        coords = [v[i] for v in poly.vertices]
        lo.append(-int(-min(coords) // 1))
        hi.append(int(max(coords) // 1))
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    if any(len(ax) == 0 for ax in axes):
        return []
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    keep = np.ones(len(grid), dtype=bool)
    for a, off in poly.hrep:
        d = off.denominator
        vals = grid @ (d * np.array(a, dtype=np.int64)) + int(off * d)
        keep &= vals >= 0
    return sorted(map(tuple, grid[keep].tolist()))


# ------------------------------------------------------------- cones


def test_orthant_is_self_dual():
    o = Cone([(1, 0), (0, 1)], 2)
    assert o.generators == ((0, 1), (1, 0))
    assert dual_cone(o).generators == o.generators


def test_dual_of_slanted_cone():
    c = Cone([(1, 0), (1, 2)], 2)
    assert set(dual_cone(c).generators) == {(0, 1), (2, -1)}
    assert dual_cone(dual_cone(c)) == c


def test_dual_of_origin_is_everything():
    z = Cone([], 2)
    assert z.dim == 0
    full = dual_cone(z)
    assert full.lineality_rank == 2
    assert set(full.generators) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_strong_convexity():
    assert Cone([(1, 0), (0, 1)], 2).is_strongly_convex()
    assert not Cone([(1, 0), (-1, 0)], 2).is_strongly_convex()
    # the three generators sum to zero, exhibiting a line
    assert not Cone([(1, 0), (-1, 1), (0, -1)], 2).is_strongly_convex()


def test_ray_generator():
    assert Cone([(2, 4)], 2).ray_generator() == (1, 2)
    assert Cone([(0, 7)], 2).ray_generator() == (0, 1)
    assert Cone([(-3, 6, -9)], 3).ray_generator() == (-1, 2, -3)
    with pytest.raises(ValueError):
        Cone([(1, 0), (0, 1)], 2).ray_generator()


def test_face_counts_orthant():
    o3 = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)
    assert [len(o3.faces(k)) for k in range(4)] == [1, 3, 3, 1]
    assert len(o3.faces(1)) == 3


def test_face_counts_simplicial_height_cone():
    c = Cone([(-1, -1, 1), (2, -1, 1), (-1, 2, 1)], 3)
    assert [len(c.faces(k)) for k in range(4)] == [1, 3, 3, 1]


def test_faces_require_strong_convexity():
    with pytest.raises(ValueError, match="lineality"):
        Cone([(1, 0), (-1, 0)], 2).faces(1)


def test_face_counts_random_simplicial():
    rng = random.Random(7101)
    found = 0
    while found < 12:
        d = rng.randrange(2, 5)
        gens = [
            tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(d)
        ]
        c = Cone(gens, d)
        if c.dim != d or len(c.extreme_rays) != d:
            continue
        found += 1
        for k in range(d + 1):
            assert len(c.faces(k)) == comb(d, k)


def test_double_description_against_membership_oracle():
    rng = random.Random(40813)
    for _ in range(30):
        rank = rng.randrange(2, 5)
        gens = [
            tuple(rng.randint(-3, 3) for _ in range(rank))
            for _ in range(rng.randrange(1, 7))
        ]
        c = Cone(gens, rank)
        # facet normals are valid for the generators
        for n in c.facet_normals:
            assert all(
                sum(a * b for a, b in zip(n, g)) >= 0 for g in c.generators
            )
        # both descriptions carve out the same set of sample points
        for _ in range(40):
            y = tuple(rng.randint(-3, 3) for _ in range(rank))
            by_hrep = c.contains_vector(y)
            by_vrep = in_cone_brute(y, c.generators, rank)
            assert by_hrep == by_vrep
        # dual cone against the oracle on the original generators
        d = dual_cone(c)
        for _ in range(25):
            y = tuple(rng.randint(-2, 2) for _ in range(rank))
            in_dual = all(
                sum(a * b for a, b in zip(y, g)) >= 0 for g in c.generators
            )
            assert in_dual == in_cone_brute(y, d.generators, rank)
        assert dual_cone(d) == c


def test_intersection_and_faces():
    a = Cone([(1, 0), (1, 1)], 2)
    b = Cone([(1, 1), (0, 1)], 2)
    meet = a.intersection(b)
    assert meet.generators == ((1, 1),)
    assert meet.is_face_of(a) and meet.is_face_of(b)
    overlap = Cone([(1, 0), (0, 1)], 2).intersection(Cone([(1, 1), (1, -1)], 2))
    assert not overlap.is_face_of(Cone([(1, 1), (1, -1)], 2))


def test_cone_equality_is_geometric():
    assert Cone([(1, 0), (0, 1), (1, 1)], 2) == Cone([(0, 1), (1, 0)], 2)
    assert Cone([(2, 0)], 2) == Cone([(1, 0)], 2)
    assert Cone([(1, 0)], 2) != Cone([(0, 1)], 2)


# ---------------------------------------------------------- polytopes


def test_unit_square_points():
    sq = Polytope.from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert sq.lattice_points() == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_triangle_points():
    tri = Polytope.from_vertices([(-1, -1), (2, -1), (-1, 2)])
    assert len(tri.lattice_points()) == 10


def test_degree_five_sections_count():
    # sections of the fifth power of the hyperplane bundle on projective
    # 4-space: monomial count is a stars-and-bars value
    simplex = Polytope.from_vertices(
        [(0, 0, 0, 0)]
        + [tuple(5 * int(i == j) for j in range(4)) for i in range(4)]
    )
    assert len(simplex.lattice_points()) == comb(9, 4) == 126


def test_lattice_points_match_grid_scan():
    rng = random.Random(91218)
    for _ in range(25):
        rank = rng.randrange(1, 4)
        verts = [
            tuple(rng.randint(-4, 4) for _ in range(rank))
            for _ in range(rng.randrange(1, 6))
        ]
        p = Polytope.from_vertices(verts)
        assert p.lattice_points() == grid_scan(p)


def test_lattice_points_reject_unbounded():
    h = Polytope.from_hrep([((1, 0), 0), ((0, 1), 0)], 2)
    with pytest.raises(ValueError, match="unbounded"):
        h.lattice_points()


def test_polar_square():
    sq = Polytope.from_vertices([(-1, -1), (1, -1), (-1, 1), (1, 1)])
    assert set(sq.polar().vertices) == {
        (F(1), F(0)),
        (F(0), F(1)),
        (F(-1), F(0)),
        (F(0), F(-1)),
    }


def test_polar_triangle():
    tri = Polytope.from_vertices([(-1, -1), (2, -1), (-1, 2)])
    assert set(tri.polar().vertices) == {
        (F(1), F(0)),
        (F(0), F(1)),
        (F(-1), F(-1)),
    }


def test_polar_requires_interior_origin():
    shifted = Polytope.from_vertices([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(ValueError, match="polar undefined"):
        shifted.polar()
    segment = Polytope.from_vertices([(-1, 0), (1, 0)])
    with pytest.raises(ValueError, match="polar undefined"):
        segment.polar()


def test_polar_involution_and_vertex_formula():
    rng = random.Random(55521)
    cross = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    for _ in range(15):
        verts = cross + [
            tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(4)
        ]
        p = Polytope.from_vertices(verts)
        q = p.polar()
        assert q.polar() == p
        # polar vertices are facet normals over offsets
        expected = {
            tuple(F(a_i, 1) / off for a_i in a) for a, off in p.hrep
        }
        assert set(q.vertices) == expected


def test_minkowski_sum_of_segments():
    s1 = Polytope.from_vertices([(-1, 0), (1, 0)])
    s2 = Polytope.from_vertices([(0, -1), (0, 1)])
    assert s1.minkowski_sum(s2) == Polytope.from_vertices(
        [(-1, -1), (1, -1), (-1, 1), (1, 1)]
    )


def test_minkowski_with_point_translates():
    tri = Polytope.from_vertices([(0, 0), (1, 0), (0, 1)])
    pt = Polytope.from_vertices([(3, -2)])
    assert tri.minkowski_sum(pt) == tri.translate((3, -2))


def test_minkowski_rank_mismatch():
    with pytest.raises(ValueError):
        Polytope.from_vertices([(0, 0)]).minkowski_sum(
            Polytope.from_vertices([(0,)])
        )


def test_minkowski_support_function():
    rng = random.Random(3141)
    for _ in range(10):
        p = Polytope.from_vertices(
            [tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(4)]
        )
        q = Polytope.from_vertices(
            [tuple(rng.randint(-3, 3) for _ in range(2)) for _ in range(4)]
        )
        s = p.minkowski_sum(q)
        for _ in range(20):
            d = tuple(rng.randint(-4, 4) for _ in range(2))
            sup = lambda poly: max(
                sum(F(a) * b for a, b in zip(v, d)) for v in poly.vertices
            )
            assert sup(s) == sup(p) + sup(q)


def test_vertices_are_irredundant():
    rng = random.Random(777)
    for _ in range(10):
        pts = [tuple(rng.randint(-4, 4) for _ in range(2)) for _ in range(6)]
        p = Polytope.from_vertices(pts)
        for i, v in enumerate(p.vertices):
            others = [w for j, w in enumerate(p.vertices) if j != i]
            if others:
                assert not Polytope.from_vertices(others).contains(v)


def test_hrep_vrep_round_trip():
    sq = Polytope.from_hrep(
        [((1, 0), 0), ((-1, 0), 1), ((0, 1), 0), ((0, -1), 1)], 2
    )
    assert sq == Polytope.from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert Polytope.from_hrep(sq.hrep, 2) == sq


def test_infeasible_hrep_is_empty():
    p = Polytope.from_hrep([((1,), -1), ((-1,), 0)], 1)
    assert p.is_empty()


# --------------------------------------------------------- normal fans


def test_normal_fan_of_square():
    from dualfan.fans import is_complete, is_smooth, validate_fan

    nf = Polytope.from_vertices(
        [(-1, -1), (1, -1), (-1, 1), (1, 1)]
    ).normal_fan()
    assert validate_fan(nf).ok
    assert is_complete(nf) and is_smooth(nf)
    assert set(nf.rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(nf.max_cones) == 4


def test_normal_fan_of_triangle():
    from dualfan.fans import projective_space_fan

    nf = Polytope.from_vertices([(-1, -1), (2, -1), (-1, 2)]).normal_fan()
    assert nf == projective_space_fan(2)


def test_normal_fan_of_shifted_simplex():
    from dualfan.fans import is_complete, validate_fan

    simplex = Polytope.from_vertices(
        [(0, 0, 0, 0)]
        + [tuple(int(i == j) for j in range(4)) for i in range(4)]
    )
    shifted = simplex.translate([F(-1, 5)] * 4)
    nf = shifted.normal_fan()
    assert validate_fan(nf).ok and is_complete(nf)
    assert len(nf.max_cones) == 5


def test_normal_fan_requires_full_dimension():
    seg = Polytope.from_vertices([(0, 0), (1, 0)])
    with pytest.raises(ValueError, match="full dimensional"):
        seg.normal_fan()


def test_normal_fan_rays_are_facet_normals():
    from dualfan.fans import is_complete, validate_fan

    rng = random.Random(60321)
    cross = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    for _ in range(8):
        verts = cross + [
            tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3)
        ]
        p = Polytope.from_vertices(verts)
        nf = p.normal_fan()
        assert validate_fan(nf).ok and is_complete(nf)
        assert set(nf.rays) == {
            primitive_vector(a) for a, _ in p.hrep
        }
