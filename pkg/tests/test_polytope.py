"""Lattice polytopes: hulls, duality, Ehrhart counting, volumes.

Derived values are checked against independent oracles: brute-force box
scans for point counts, scipy's Delaunay triangulation for volumes, and a
Fraction-exact determinant for simplices.
"""

import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from fracmirror.polytope import (
    LatticePolytope,
    cayley_polytope,
    ehrhart_polynomial,
    lattice_transform,
    pyramid_over,
)

QUARTIC = [(3, -1, -1), (-1, 3, -1), (-1, -1, 3), (-1, -1, -1)]


# ---------------------------------------------------------------- oracles


def brute_points_of_simplex(vertices):
    """All lattice points of a full-dimensional simplex via barycentric
    coordinates solved exactly over the rationals."""
    d = len(vertices[0])
    lo = [min(v[i] for v in vertices) for i in range(d)]
    hi = [max(v[i] for v in vertices) for i in range(d)]
    v0 = vertices[0]
    E = [[Fraction(v[i] - v0[i]) for v in vertices[1:]] for i in range(d)]
    pts = []
    for p in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        rhs = [Fraction(p[i] - v0[i]) for i in range(d)]
        lam = _solve_fraction(E, rhs)
        if lam is None:
            continue
        if all(x >= 0 for x in lam) and sum(lam) <= 1:
            pts.append(p)
    return sorted(pts)


def _solve_fraction(M, b):
    n = len(b)
    a = [row[:] + [b[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def delaunay_normalized_volume(points):
    """d! times the Euclidean volume, via scipy's qhull triangulation."""
    from scipy.spatial import Delaunay

    pts = np.array(points, dtype=float)
    tri = Delaunay(pts)
    vol = 0.0
    for simplex in tri.simplices:
        vs = pts[simplex]
        vol += abs(np.linalg.det(vs[1:] - vs[0]))
    return round(vol)


def random_unimodular(rng, n):
    M = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            f = rng.randint(-2, 2)
            M[i] = [a + f * b for a, b in zip(M[i], M[j])]
    return M


# ---------------------------------------------------------------- hulls


def test_unit_square_hull():
    P = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert P.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert len(P.facets) == 4
    assert P.affine_dim == 2


def test_interior_points_are_not_vertices():
    P = LatticePolytope([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)])
    assert P.vertices == ((0, 0), (0, 2), (2, 0))


def test_no_points_error():
    with pytest.raises(ValueError, match="no points"):
        LatticePolytope([])


def test_single_point_and_segment():
    P = LatticePolytope([(0, 0, 0)])
    assert P.affine_dim == 0 and P.vertices == ((0, 0, 0),)
    assert P.normalized_volume() == 1
    S = LatticePolytope([(0, 0, 0), (2, 4, 6)])
    assert S.affine_dim == 1
    assert S.normalized_volume() == 2  # two primitive steps along (1,2,3)
    assert len(S.lattice_points()) == 3


def test_contains():
    P = LatticePolytope(QUARTIC)
    assert P.contains((0, 0, 0))
    assert P.contains((3, -1, -1))
    assert not P.contains((2, 2, 2))
    assert P.contains((Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)))


# ---------------------------------------------------------------- counting


def test_quartic_simplex_lattice_points_against_barycentric_oracle():
    P = LatticePolytope(QUARTIC)
    expect = brute_points_of_simplex(QUARTIC)
    assert list(P.lattice_points()) == expect
    assert len(expect) == 35
    assert P.interior_lattice_points() == ((0, 0, 0),)
    assert P.boundary_lattice_point_count() == 34


def test_dilate_counts_against_oracle():
    P = LatticePolytope(QUARTIC)
    for k in (0, 1, 2):
        scaled = [tuple(k * x for x in v) for v in QUARTIC]
        expect = len(brute_points_of_simplex(scaled)) if k else 1
        assert P.dilate_lattice_point_count(k) == expect


def test_lower_dimensional_counting():
    # a triangle embedded in a 2-plane of Z^3
    tri = LatticePolytope([(0, 0, 0), (2, 0, 2), (0, 2, 2)])
    assert tri.affine_dim == 2
    assert tri.dilate_lattice_point_count(1) == len(tri.lattice_points())
    # its span is x+y-z = 0; oracle count in a box
    pts = [
        p
        for p in itertools.product(range(3), range(3), range(5))
        if p[0] + p[1] == p[2] and tri.contains(p)
    ]
    assert sorted(tri.lattice_points()) == sorted(pts)


# ---------------------------------------------------------------- volumes


def test_simplex_volume_det_vs_count_on_random_instances():
    rng = random.Random(101)
    produced = 0
    sizes = {2: 4, 3: 4, 4: 2, 5: 1}
    while produced < 50:
        d = rng.choice([2, 2, 2, 3, 3, 4, 5])
        span = sizes[d]
        verts = [
            tuple(rng.randint(-span, span) for _ in range(d)) for _ in range(d + 1)
        ]
        P = LatticePolytope(verts)
        if P.affine_dim != d or len(P.vertices) != d + 1:
            continue
        produced += 1
        assert P.normalized_volume(method="det") == P.normalized_volume(method="count")


def test_volume_against_delaunay_oracle():
    rng = random.Random(202)
    cases = [
        [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)],
        [(-1, -1), (2, 1), (1, 2), (-1, 0), (0, -1)],
    ]
    for _ in range(8):
        d = rng.choice([2, 3])
        pts = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(d + 4)]
        if LatticePolytope(pts).affine_dim == d:
            cases.append(pts)
    for pts in cases:
        P = LatticePolytope(pts)
        assert P.normalized_volume() == delaunay_normalized_volume(P.vertices)


def test_volume_method_errors():
    P = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
    with pytest.raises(ValueError, match="determinant volume requires a simplex"):
        P.normalized_volume(method="det")
    with pytest.raises(ValueError, match="unknown volume method"):
        P.normalized_volume(method="guess")


def test_volume_invariant_under_unimodular_maps():
    rng = random.Random(303)
    P = LatticePolytope(QUARTIC)
    for _ in range(5):
        U = random_unimodular(rng, 3)
        Q = lattice_transform(U, P)
        assert Q.normalized_volume() == P.normalized_volume()
        assert len(Q.lattice_points()) == len(P.lattice_points())


# ---------------------------------------------------------------- Ehrhart


def test_ehrhart_polynomial_predicts_unseen_dilates():
    for verts in (
        QUARTIC,
        [(0, 0), (1, 0), (0, 1), (1, 1)],
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
    ):
        P = LatticePolytope(verts)
        coeffs = ehrhart_polynomial(P)
        a = P.affine_dim
        assert len(coeffs) == a + 1
        assert coeffs[0] == 1  # constant term chi of a polytope
        assert coeffs[-1] * math.factorial(a) == P.normalized_volume()
        for k in (a + 1, a + 2):
            predicted = sum(c * k**i for i, c in enumerate(coeffs))
            assert predicted == P.dilate_lattice_point_count(k)


# ---------------------------------------------------------------- duality


def test_polar_dual_known_pairs():
    K3 = LatticePolytope([(2, -1), (-1, 2), (-1, -1)])
    assert K3.polar_dual().vertices == ((-1, -1), (0, 1), (1, 0))
    Q = LatticePolytope(QUARTIC)
    assert Q.polar_dual().vertices == ((-1, -1, -1), (0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_polar_dual_requires_interior_origin():
    shifted = LatticePolytope([(1, 1), (3, 1), (1, 3)])
    with pytest.raises(ValueError, match="origin is not an interior point"):
        shifted.polar_dual()
    flat = LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    with pytest.raises(ValueError, match="full-dimensional"):
        flat.polar_dual()


def test_polar_dual_rejects_non_reflexive():
    P = LatticePolytope([(2, 0), (0, 2), (-2, 0), (0, -2)])
    with pytest.raises(ValueError, match="not reflexive"):
        P.polar_dual()


def test_polar_involution_on_random_sheared_reflexives():
    rng = random.Random(404)
    seeds = [
        QUARTIC,
        [(2, -1), (-1, 2), (-1, -1)],
        [(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (-1, 1)],
        [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1), (-1, -1, -1),
         (1, 1, -1), (1, -1, 1), (-1, 1, 1)],
    ]
    checked = 0
    while checked < 20:
        base = rng.choice(seeds)
        U = random_unimodular(rng, len(base[0]))
        P = lattice_transform(U, LatticePolytope(base))
        assert P.is_reflexive()
        assert P.polar_dual().polar_dual() == P
        checked += 1


def test_is_reflexive_false_cases():
    assert not LatticePolytope([(2, 0), (0, 2), (-2, 0), (0, -2)]).is_reflexive()
    assert not LatticePolytope([(0, 0), (1, 0), (0, 1)]).is_reflexive()
    assert not LatticePolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0)]).is_reflexive()


# ------------------------------------------------------------ constructions


def test_minkowski_sum_of_segments_is_square():
    a = LatticePolytope([(0, 0), (1, 0)])
    b = LatticePolytope([(0, 0), (0, 1)])
    assert (a + b).vertices == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_cayley_and_pyramid():
    tri = LatticePolytope([(0, 0), (1, 0), (0, 1)])
    seg = LatticePolytope([(0, 0), (1, 0)])
    C = cayley_polytope([tri, seg])
    assert C.ambient_dim == 4
    # vertices carry one-hot tags
    assert set(C.vertices) == {
        (0, 0, 1, 0), (1, 0, 1, 0), (0, 1, 1, 0),
        (0, 0, 0, 1), (1, 0, 0, 1),
    }
    pyr = pyramid_over(C)
    assert tuple([0] * 4) in pyr.vertices
    # Cayley of a single polytope keeps the volume of the factor
    C1 = cayley_polytope([tri])
    assert C1.normalized_volume() == tri.normalized_volume()


def test_lattice_transform_on_points_and_polytopes():
    U = [[0, -1], [1, 0]]
    pts = [(1, 0), (0, 1)]
    assert lattice_transform(U, pts) == ((0, 1), (-1, 0))
    P = LatticePolytope([(2, -1), (-1, 2), (-1, -1)])
    Q = lattice_transform(U, P)
    assert isinstance(Q, LatticePolytope)
    assert Q.normalized_volume() == P.normalized_volume()


# ---------------------------------------------------------------- JSON


def test_json_round_trip():
    P = LatticePolytope(QUARTIC)
    assert LatticePolytope.from_dict(P.to_dict()) == P
    with pytest.raises(ValueError, match='polytope JSON needs "dim" and "vertices"'):
        LatticePolytope.from_dict({"vertices": [[0]]})
