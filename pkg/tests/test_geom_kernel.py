import json
from math import factorial, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from inscribed.geom_kernel import (
    GeometryError,
    VertexPolytope,
    convex_hull,
    facet_vertex_sets,
    hull_volume,
    on_unit_sphere,
    polytope_volume,
    random_rotation,
    simplex_volume,
)
from inscribed.constructions import cube, regular_simplex


def test_unit_simplex_volume():
    for d in range(1, 6):
        V = np.vstack([np.zeros(d), np.eye(d)])
        assert simplex_volume(V) == pytest.approx(1 / factorial(d), rel=1e-12)


def test_cube_volume_and_faces():
    P = cube()
    assert polytope_volume(P) == pytest.approx(8 / (3 * sqrt(3)), abs=1e-12)
    faces = facet_vertex_sets(P.vertices)
    assert len(faces) == 6 and all(len(f) == 4 for f in faces)


def test_oriented_facets_are_outward():
    P = regular_simplex(4)
    cplx = convex_hull(P.vertices)
    c = P.vertices.mean(axis=0)
    for f in cplx.facets:
        M = P.vertices[f] - c
        assert np.linalg.det(M) > 0


def test_duplicates_and_rank_rejected():
    with pytest.raises(GeometryError):
        VertexPolytope(np.array([[1.0, 0], [1.0, 0], [0, 1.0]]))
    assert hull_volume(np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0.0]])) == 0.0
    with pytest.raises(GeometryError):
        VertexPolytope(np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0.0]]))


def test_json_roundtrip():
    P = regular_simplex(3)
    Q = VertexPolytope.from_json(json.loads(P.dumps()))
    assert np.allclose(P.vertices, Q.vertices)
    assert on_unit_sphere(Q)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 4), st.integers(0, 8))
def test_volume_matches_qhull_and_is_rotation_invariant(seed, d, extra):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(d + 1 + extra, d))
    vol = hull_volume(pts)
    assert vol == pytest.approx(ConvexHull(pts).volume, rel=1e-9)
    R = random_rotation(d, rng)
    assert hull_volume(pts @ R.T) == pytest.approx(vol, rel=1e-9)
