"""Polygonal and polyhedral stand-ins for the convex bodies used in the checks."""

from __future__ import annotations

import numpy as np

from ..geom_kernel import VertexPolytope


def regular_polygon(m: int, radius: float = 1.0, phase: float = 0.0) -> VertexPolytope:
    t = phase + 2 * np.pi * np.arange(m) / m
    return VertexPolytope(radius * np.column_stack([np.cos(t), np.sin(t)]))


def triangle() -> VertexPolytope:
    return regular_polygon(3)


def square() -> VertexPolytope:
    """The unit square [0, 1]^2."""
    return VertexPolytope(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


def disc(m: int = 256) -> VertexPolytope:
    return regular_polygon(m)


# a fixed non-orthogonal linear map, so the pentagon is affine regular but not regular
_PENTAGON_MAP = np.array([[1.7, 0.4], [-0.2, 0.9]])


def affine_regular_pentagon() -> VertexPolytope:
    return VertexPolytope(regular_polygon(5).vertices @ _PENTAGON_MAP.T)


def reuleaux_triangle(per_arc: int = 200) -> VertexPolytope:
    """Reuleaux triangle of width 1, each arc sampled at ``per_arc`` points."""
    corners = regular_polygon(3, radius=1 / np.sqrt(3), phase=np.pi / 2).vertices
    pts = []
    for k in range(3):
        centre = corners[k]
        a, b = corners[(k + 1) % 3], corners[(k + 2) % 3]
        t0 = np.arctan2(*(a - centre)[::-1])
        t1 = np.arctan2(*(b - centre)[::-1])
        span = (t1 - t0 + np.pi) % (2 * np.pi) - np.pi
        # endpoints belong to the neighbouring arcs as corners
        t = t0 + span * np.arange(per_arc) / per_arc
        pts.append(centre + np.column_stack([np.cos(t), np.sin(t)]))
    return VertexPolytope(np.vstack(pts))


def fibonacci_ball(m: int = 1000) -> VertexPolytope:
    """m nearly uniform points on the unit sphere; their hull approximates the ball."""
    k = np.arange(m) + 0.5
    z = 1 - 2 * k / m
    r = np.sqrt(1 - z * z)
    phi = np.pi * (1 + 5**0.5) * k
    return VertexPolytope(np.column_stack([r * np.cos(phi), r * np.sin(phi), z]))


def tetrahedron() -> VertexPolytope:
    from ..constructions import regular_simplex

    return regular_simplex(3)


def random_polygon(rng: np.random.Generator, m: int, jitter: float = 0.3) -> VertexPolytope:
    """Hull of m points at jittered angles on a jittered circle (always convex position)."""
    t = np.sort(rng.uniform(0, 2 * np.pi, m))
    r = 1 + jitter * rng.uniform(-1, 1, m)
    pts = np.column_stack([r * np.cos(t), r * np.sin(t)])
    return VertexPolytope.from_points(pts)


def random_polytope(rng: np.random.Generator, m: int, d: int) -> VertexPolytope:
    return VertexPolytope.from_points(rng.normal(size=(m, d)))


BODIES = {
    "triangle": triangle,
    "square": square,
    "pentagon": affine_regular_pentagon,
    "disc": disc,
    "reuleaux": reuleaux_triangle,
    "ball": fibonacci_ball,
    "tetrahedron": tetrahedron,
}
