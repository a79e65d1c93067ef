import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inscribed import constructions as cons
from inscribed.gale import GaleDiagram, gale_predicates, gale_transform, homogeneous_matrix, min_open_halfspace_count
from inscribed.geom_kernel import VertexPolytope, facet_vertex_sets


def test_kernel_property():
    P = cons.cyclic_polytope(4, 7)
    D = gale_transform(P)
    assert D.points.shape == (7, 2)
    assert np.allclose(homogeneous_matrix(P) @ D.points, 0, atol=1e-12)
    assert np.linalg.norm(D.points) == pytest.approx(1.0)


def test_square_diagram():
    sq = VertexPolytope(np.array([[1.0, 0], [0, 1], [-1, 0], [0, -1]]))
    pts = gale_transform(sq).points[:, 0]
    assert np.allclose(pts / pts[0], [1, -1, 1, -1])


def test_non_polytope_configuration():
    pts = np.array([[1.0], [-0.5], [-0.5]])
    assert min_open_halfspace_count(pts) == 1
    assert not gale_predicates(GaleDiagram(pts, None))["is_polytope_diagram"]


def test_simplex_has_empty_diagram():
    pred = gale_predicates(gale_transform(cons.regular_simplex(3)))
    assert pred["is_simplicial"] and len(pred["facets"]) == 4


def test_pyramid_base_coface():
    P = VertexPolytope(np.array([[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0], [0, 0, 1.0]]))
    pred = gale_predicates(gale_transform(P))
    assert pred["is_pyramid"] and not pred["is_simplicial"]
    assert [4] in pred["facet_cofaces"]
    assert {frozenset(f) for f in pred["facets"]} == facet_vertex_sets(P.vertices)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_predicates_invariant_under_linear_maps(seed):
    rng = np.random.default_rng(seed)
    P = [cons.cross_polytope(3), cons.cyclic_polytope(4, 7), cons.orthogonal_join((2, 2))][seed % 3]
    D = gale_transform(P)
    A = rng.normal(size=(D.dim, D.dim))
    if abs(np.linalg.det(A)) < 1e-3:
        A += np.eye(D.dim)
    a, b = gale_predicates(D), gale_predicates(D.transformed(A))
    assert {k: a[k] for k in ("is_polytope_diagram", "is_simplicial", "is_pyramid")} == \
        {k: b[k] for k in ("is_polytope_diagram", "is_simplicial", "is_pyramid")}
    assert sorted(map(tuple, a["facets"])) == sorted(map(tuple, b["facets"]))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 4))
def test_random_polytopes_facets(seed, d):
    rng = np.random.default_rng(seed)
    n = d + int(rng.integers(2, 4))
    pts = rng.normal(size=(n, d))
    try:
        P = VertexPolytope(pts)
    except Exception:
        return
    if len(P.vertices) != n or len({i for f in facet_vertex_sets(pts) for i in f}) < n:
        return  # some point not a vertex
    pred = gale_predicates(gale_transform(P))
    assert pred["is_polytope_diagram"]
    assert {frozenset(f) for f in pred["facets"]} == facet_vertex_sets(pts)
