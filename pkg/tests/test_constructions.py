from math import cos, pi, sin, sqrt

import numpy as np
import pytest

from inscribed import constructions as cons
from inscribed.geom_kernel import GeometryError, on_unit_sphere, polytope_volume
from inscribed.search import distance_pattern


@pytest.mark.parametrize("P", [cons.regular_simplex(5), cons.cross_polytope(4), cons.double_pyramid(7),
                               cons.cyclic_polytope(4, 7), cons.orthogonal_join((2, 2)), cons.icosahedron(),
                               cons.named_polytope("max8"), cons.named_polytope("remark_P3")])
def test_inscribed(P):
    assert on_unit_sphere(P, tol=1e-9)


def test_simplex_volume_formula():
    for d in range(2, 7):
        # regular simplex inscribed in the unit sphere
        expected = sqrt(d + 1) / np.prod(range(1, d + 1)) * ((d + 1) / d) ** (d / 2)
        assert polytope_volume(cons.regular_simplex(d)) == pytest.approx(expected, rel=1e-12)


def test_cross_polytope_volume():
    for d in range(2, 6):
        assert polytope_volume(cons.cross_polytope(d)) == pytest.approx(2**d / np.prod(range(1, d + 1)))


def test_icosahedron_volume():
    phi = (1 + sqrt(5)) / 2
    edge = 4 / sqrt(2 * phi * sqrt(5)) / sqrt(2)
    assert polytope_volume(cons.icosahedron()) == pytest.approx(5 / 12 * (3 + sqrt(5)) * edge**3, rel=1e-12)


def test_p4_is_sqrt3_over_4():
    assert polytope_volume(cons.orthogonal_join((2, 1, 1))) == pytest.approx(sqrt(3) / 4, abs=1e-12)


def test_cyclic_c4_7_formula():
    vol = polytope_volume(cons.cyclic_polytope(4, 7))
    assert vol == pytest.approx(49 / 192 * (cos(pi / 7) + cos(2 * pi / 7)), abs=1e-12)


def test_cyclic_distance_pattern():
    assert distance_pattern(cons.cyclic_polytope(6, 9))["is_k_invariant"]


def test_double_pyramid_formula():
    for n in range(5, 12):
        assert polytope_volume(cons.double_pyramid(n)) == pytest.approx((n - 2) / 3 * sin(2 * pi / (n - 2)))


def test_errors():
    with pytest.raises(GeometryError):
        cons.double_pyramid(4)
    with pytest.raises(GeometryError):
        cons.cyclic_polytope(5, 8)
    with pytest.raises(GeometryError):
        cons.named_polytope("dodecahedron")
