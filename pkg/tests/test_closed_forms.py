from math import pi, sqrt

import numpy as np
import pytest
from conftest import random_facial_triangle, spherical_area
from hypothesis import given, settings
from hypothesis import strategies as st

from inscribed import closed_forms as cf
from inscribed.constructions import cross_polytope, icosahedron, orthogonal_join, regular_simplex
from inscribed.geom_kernel import polytope_volume


def test_fejes_toth_regular_solids():
    # (e, f, v, inradius) with R = 1
    cases = {
        "tetrahedron": (6, 4, 4, 1 / 3, regular_simplex(3)),
        "octahedron": (12, 8, 6, 1 / sqrt(3), cross_polytope(3)),
        "icosahedron": (30, 20, 12, 0.7946544722917661, icosahedron()),
    }
    for e, f, v, r, P in cases.values():
        b = cf.fejes_toth_bounds(e, f, v, r, 1.0)
        vol = polytope_volume(P)
        assert b.lower == pytest.approx(vol, rel=1e-9)
        assert b.upper == pytest.approx(vol, rel=1e-9)


def test_fejes_toth_domain():
    with pytest.raises(cf.DomainError):
        cf.fejes_toth_bounds(6, 4, 5, 0.3, 1.0)  # Euler fails


def test_as_printed_lower_side_exceeds_cube():
    r = 1 / sqrt(3)
    printed = cf.fejes_toth_bounds(12, 6, 8, r, 1.0, as_printed=True)
    assert printed.lower > 8 * r**3


def test_vertex_bound_values():
    assert cf.vertex_bound(12) == pytest.approx(2.5361507101, abs=1e-9)
    assert cf.vertex_bound(6) == pytest.approx(4 / 3, abs=1e-12)
    assert cf.vertex_bound(8) > 1.815712
    with pytest.raises(cf.DomainError):
        cf.vertex_bound(3)


def test_facial_tetra_icosahedron():
    c = 2 * np.arcsin(1 / sqrt((1 + sqrt(5)) / 2 * sqrt(5)))
    assert 20 * cf.facial_tetra_bound(pi / 5, c) == pytest.approx(polytope_volume(icosahedron()), abs=1e-9)
    with pytest.raises(cf.DomainError):
        cf.facial_tetra_bound(1.0, 0.5)


def test_facial_tetra_quadratic_contact():
    rng = np.random.default_rng(3)
    for _ in range(300):
        A, B, C = random_facial_triangle(rng)
        c = np.arccos(A @ B)
        gap = cf.facial_tetra_bound(spherical_area(A, B, C), c) - abs(np.linalg.det([A, B, C])) / 6
        asym = abs(np.arccos(A @ C) - np.arccos(B @ C))
        assert gap >= 1e-7 * asym**2 - 1e-15


def test_split_curve():
    assert cf.hessian_split(0.1) == pytest.approx(0.813, abs=2e-3)
    assert cf.hessian_split(0.9) == pytest.approx(cf.C_MAX)
    omega = cf.split_omega()
    assert cf.hessian_split(omega) == pytest.approx(cf.C_MAX, abs=1e-6)
    assert 0.69 < omega < 0.70


def test_star_shaped_bound():
    c = 2 * np.arcsin(1 / sqrt((1 + sqrt(5)) / 2 * sqrt(5)))
    assert cf.star_shaped_bound([pi / 5] * 20, [c] * 20, 20) == pytest.approx(2.53614, abs=1e-3)
    assert cf.star_shaped_bound([pi / 2] * 8, [pi / 2] * 8, 8) >= 4 / 3 - 1e-12


def test_v_d_plus2_matches_join():
    for d in range(3, 8):
        P = orthogonal_join((d // 2, d - d // 2))
        assert cf.v_d_plus2(d) == pytest.approx(polytope_volume(P), rel=1e-10)


def test_v_d_plus3_matches_join():
    for d in range(3, 8):
        assert cf.v_d_plus3(d) == pytest.approx(polytope_volume(orthogonal_join(cf.balanced_split(d, 3))), rel=1e-10)


def test_symmetricity_closed_forms():
    assert cf.inner_symmetricity(2) == pytest.approx(2 / 3)
    assert cf.inner_symmetricity(3) == pytest.approx(1 / 2)
    assert cf.outer_symmetricity(2) == pytest.approx(1 / 2)
    assert cf.outer_symmetricity(3) == pytest.approx(1 / 3)


def test_rs_lower():
    assert cf.rs_lower(2) == pytest.approx(1 + 4 / pi)
    assert cf.rs_lower(3) == pytest.approx(2.5)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12))
def test_ball_volume_recursion(d):
    assert cf.unit_ball_volume(d + 2) == pytest.approx(cf.unit_ball_volume(d) * 2 * pi / (d + 2))


def test_formula_registry():
    assert set(cf.FORMULAS) == set(cf.FORMULA_TEXT)
