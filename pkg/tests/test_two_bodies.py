from math import pi, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from inscribed import closed_forms as cf
from inscribed.constructions import regular_simplex
from inscribed.geom_kernel import GeometryError, VertexPolytope, polytope_volume
from inscribed.two_bodies import bodies, constants, placements, simplices

FAST = {"grid": 720}


def brute_translation_max(K, samples=4000, seed=0):
    """Touching translates x = lambda(u) u sampled over directions (2D)."""
    t = np.linspace(0, 2 * np.pi, samples, endpoint=False)
    U = np.column_stack([np.cos(t), np.sin(t)])
    lam = constants.contact_lengths(K, U)
    return max(constants.translation_volume(K, l * u) for l, u in zip(lam, U)) / polytope_volume(K)


def test_translation_constant_matches_sampling():
    K = bodies.affine_regular_pentagon()
    exact = constants.c_quantity(K, "translations").value
    assert exact == pytest.approx(2 + 1 / sqrt(5), abs=1e-9)
    assert brute_translation_max(K) <= exact + 1e-9
    assert brute_translation_max(K) == pytest.approx(exact, abs=1e-4)


def test_point_reflection_values():
    assert constants.c_quantity(bodies.triangle(), "point_reflections").value == pytest.approx(4)
    assert constants.c_quantity(bodies.square(), "point_reflections").value == pytest.approx(3)
    pent = constants.c_quantity(bodies.regular_polygon(5), "point_reflections").value
    assert pent == pytest.approx(3 - 1 / sqrt(5), abs=1e-9)


def test_disc_constants_near_rs_lower():
    D = bodies.disc()
    val = constants.c_quantity(D, "translations").value
    assert val == pytest.approx(cf.rs_lower(2), abs=1e-3)


def test_congruence_at_least_translation():
    K = bodies.triangle()
    co = constants.c_quantity(K, "congruences", {"restarts": 4}).value
    assert co >= constants.c_quantity(K, "translations").value - 1e-9
    assert co == pytest.approx(4, abs=1e-6)


def test_constants_at_least_one():
    K = bodies.random_polygon(np.random.default_rng(4), 7)
    for fam in ("translations", "point_reflections"):
        assert constants.c_quantity(K, fam).value >= 1.0


def test_constant_volume_property():
    assert constants.constant_volume_predicate(bodies.disc())
    assert constants.constant_volume_predicate(bodies.reuleaux_triangle())
    assert not constants.constant_volume_predicate(bodies.square())


def test_cylinder_ratio():
    val, _ = constants.max_cylinder_ratio(bodies.square(), FAST)
    assert val == pytest.approx(2.0, abs=1e-6)
    assert constants.cylinder_ratio(bodies.square(), [1, 0]) == pytest.approx(1.0)


def test_rogers_shephard_battery():
    # vol(K - K) <= C(2d, d) vol K and the reflection constants stay below 2^d
    rng = np.random.default_rng(8)
    for _ in range(10):
        K = bodies.random_polygon(rng, 6)
        for fam in ("translations", "point_reflections"):
            assert constants.c_quantity(K, fam).value <= 4 + 1e-9


def test_placements():
    K = bodies.square()
    P = placements.PairPlacement("flat_reflection", {"a": [0.5, 0.5], "basis": [[1.0], [0.0]]})
    assert np.allclose(P.apply(np.array([[0.5, 1.0]])), [[0.5, 0.0]])
    H = placements.PairPlacement("hyperplane_reflection", {"u": [0, 2.0], "h": 0.0})
    assert np.allclose(H.apply(np.array([[1.0, 3.0]])), [[1.0, -3.0]])
    assert placements.pair_hull_volume(K, K, placements.identity(2)) == pytest.approx(1.0)
    with pytest.raises(GeometryError):
        placements.PairPlacement("shear", {})
    with pytest.raises(GeometryError):
        placements.g_profile(K, K, [0, 0], [0, 1, 2])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 3))
def test_g_is_convex(seed, d):
    rng = np.random.default_rng(seed)
    K = bodies.random_polytope(rng, 8, d)
    L = bodies.random_polytope(rng, 8, d)
    prof = placements.g_profile(K, L, rng.normal(size=d), np.linspace(-2, 2, 41))
    assert placements.convexity_defect(prof) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 5))
def test_prism_formula_agrees(seed, d):
    rng = np.random.default_rng(seed)
    S = VertexPolytope.from_points(rng.normal(size=(d + 1, d)))
    u = rng.normal(size=d)
    h = np.sort(S.vertices @ u / np.linalg.norm(u))
    if h[1] - h[0] < 1e-3:
        return
    out = simplices.simplex_reflection(S, u)
    assert out["ratio_prism"] == pytest.approx(out["ratio"], rel=1e-9)
    if out["bound"] is not None:
        assert out["ratio"] <= out["bound_tight"] + 1e-9 <= out["bound"] + 2e-9


def test_reflection_contact_regime():
    S = regular_simplex(2)
    V = S.vertices
    with pytest.raises(GeometryError):
        # vertices 1 and 2 are both lowest
        simplices.simplex_reflection(S, V[0] - (V[1] + V[2]) / 2)


def test_common_center_triangles():
    res = simplices.common_center_search("two_triangles", {"restarts": 16})
    wit = simplices.triangle_witness(res["points"])
    assert wit["plane_angle"] == pytest.approx(pi / 2, abs=1e-4)
    assert wit["antipodal_gap"] < 1e-4


def test_symmetricity_outer_tetrahedron():
    val = simplices.symmetricity_oracle(regular_simplex(3), "outer", resolution=12)["value"]
    assert val == pytest.approx(1 / 3, abs=1e-2)


def test_clip_polygon():
    sq = np.array([[0, 0], [1, 0], [1, 1], [0, 1.0]])
    half = simplices.clip_polygon(sq, np.array([1.0, 0]), 0.5)
    assert simplices._polygon_area(half) == pytest.approx(0.5)
