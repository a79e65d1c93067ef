"""Determinants, brute-force convex hulls, oriented facet complexes and volumes.

Hulls of up to ``BRUTE_FORCE_LIMIT`` points are enumerated directly: every
d-subset whose supporting hyperplane leaves all remaining points on one side
is a facet candidate. Non-simplicial facets are split by a pulling
triangulation in index order, which is what a lexicographic symbolic
perturbation of the vertices produces, so the result is always a simplicial
complex covering the boundary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

import numpy as np

SIDE_TOL = 1e-9
DUPLICATE_TOL = 1e-9
RANK_TOL = 1e-9
BRUTE_FORCE_LIMIT = 40


class GeometryError(ValueError):
    """Raised for rank-deficient, duplicated or mismatched geometric input."""


def as_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2:
        raise GeometryError(f"expected a 2-d array of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise GeometryError("points must have finite coordinates")
    return arr


def affine_rank(points: np.ndarray, tol: float = RANK_TOL) -> int:
    pts = np.asarray(points, dtype=float)
    if len(pts) <= 1:
        return 0
    centered = pts - pts.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    scale = max(1.0, float(np.abs(pts).max()))
    return int(np.sum(sv > tol * scale))


def _check_duplicates(pts: np.ndarray) -> None:
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=-1))
    np.fill_diagonal(dist, np.inf)
    if dist.min() <= DUPLICATE_TOL:
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        raise GeometryError(f"duplicate points {min(i, j)} and {max(i, j)}")


@dataclass(frozen=True)
class VertexPolytope:
    """A full-dimensional polytope given by its ordered vertex list."""

    vertices: np.ndarray

    def __post_init__(self):
        pts = as_points(self.vertices).copy()
        n, d = pts.shape
        if d < 2:
            raise GeometryError("dimension must be at least 2")
        if n < d + 1:
            raise GeometryError(f"{n} vertices cannot span dimension {d}")
        _check_duplicates(pts)
        if affine_rank(pts) < d:
            raise GeometryError("vertices do not affinely span the ambient space")
        pts.setflags(write=False)
        object.__setattr__(self, "vertices", pts)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    @classmethod
    def from_points(cls, points) -> "VertexPolytope":
        """Build the hull of arbitrary points, keeping only its extreme points."""
        pts = as_points(points)
        return cls(pts[extreme_points(pts)])

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": self.vertices.tolist()}

    @classmethod
    def from_json(cls, payload: dict) -> "VertexPolytope":
        try:
            dim = int(payload["dim"])
            verts = payload["vertices"]
        except (KeyError, TypeError) as exc:
            raise GeometryError(f"malformed polytope JSON: {exc}") from exc
        poly = cls(np.asarray(verts, dtype=float))
        if poly.dim != dim:
            raise GeometryError(f"declared dim {dim} but vertices have dim {poly.dim}")
        return poly

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __eq__(self, other):
        if not isinstance(other, VertexPolytope):
            return NotImplemented
        return np.array_equal(self.vertices, other.vertices)

    def __hash__(self):
        return hash(self.vertices.tobytes())


@dataclass(frozen=True)
class OrientedComplex:
    """Simplicial boundary complex; each row of ``facets`` is an outward-oriented d-tuple.

    Rows are stored in ascending index order, with the last two entries swapped
    when needed so that det(p_i1 - c, ..., p_id - c) > 0 for the interior
    reference point c.
    """

    facets: np.ndarray
    points: np.ndarray = field(repr=False)
    normals: np.ndarray = field(repr=False)
    offsets: np.ndarray = field(repr=False)
    faces: tuple = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def to_json(self) -> dict:
        return {"facets": self.facets.tolist()}

    def ridges(self) -> dict[tuple, int]:
        counts: dict[tuple, int] = {}
        for facet in self.facets:
            for ridge in combinations(sorted(facet), self.dim - 1):
                counts[ridge] = counts.get(ridge, 0) + 1
        return counts

    def edges(self) -> set[tuple[int, int]]:
        out = set()
        for facet in self.facets:
            for i, j in combinations(sorted(facet), 2):
                out.add((i, j))
        return out

    def valences(self) -> np.ndarray:
        val = np.zeros(len(self.points), dtype=int)
        for i, j in self.edges():
            val[i] += 1
            val[j] += 1
        return val

    def star(self, vertex: int) -> list[int]:
        return [k for k, f in enumerate(self.facets) if vertex in f]

    def halfspaces(self) -> tuple[np.ndarray, np.ndarray]:
        """Facet inequalities ``A x <= b`` of the hull (one row per true facet)."""
        return self.normals, self.offsets


def simplex_volume(vertices) -> float:
    """Volume of the simplex spanned by d+1 points in R^d."""
    pts = as_points(vertices)
    n, d = pts.shape
    if n != d + 1:
        raise GeometryError(f"a {d}-simplex needs {d + 1} vertices, got {n}")
    return abs(float(np.linalg.det(pts[1:] - pts[0]))) / factorial(d)


def generalized_cross(rows: np.ndarray) -> np.ndarray:
    """Vector orthogonal to the d-1 rows of each (..., d-1, d) stack.

    Its length is the (d-1)-volume of the spanned parallelotope and
    det([rows; x]) = <cross, x>.
    """
    rows = np.asarray(rows, dtype=float)
    d = rows.shape[-1]
    if d == 2:
        return np.stack([-rows[..., 0, 1], rows[..., 0, 0]], axis=-1)
    if d == 3:
        return np.cross(rows[..., 0, :], rows[..., 1, :])
    out = np.empty(rows.shape[:-2] + (d,))
    cols = np.arange(d)
    for k in range(d):
        minor = rows[..., cols != k]
        out[..., k] = (-1) ** (d - 1 + k) * np.linalg.det(minor)
    return out


def _supporting_sets(pts: np.ndarray, tol: float = SIDE_TOL):
    """All maximal supporting point sets of the hull of ``pts`` (n, k), full rank.

    Returns a list of (index tuple, unit outward normal, offset).
    """
    n, k = pts.shape
    if k == 1:
        x = pts[:, 0]
        lo, hi = x.min(), x.max()
        lo_set = tuple(np.flatnonzero(np.abs(x - lo) <= tol))
        hi_set = tuple(np.flatnonzero(np.abs(x - hi) <= tol))
        return [(lo_set, np.array([-1.0]), -lo), (hi_set, np.array([1.0]), hi)]
    combos = np.array(list(combinations(range(n), k)), dtype=int)
    base = pts[combos[:, 0]]
    edges = pts[combos[:, 1:]] - base[:, None, :]
    normals = generalized_cross(edges)
    norms = np.linalg.norm(normals, axis=1)
    scale = max(1.0, float(np.abs(pts).max()))
    ok = norms > RANK_TOL * scale ** (k - 1)
    combos, base, normals, norms = combos[ok], base[ok], normals[ok], norms[ok]
    normals = normals / norms[:, None]
    offsets = np.einsum("ij,ij->i", normals, base)
    side = pts @ normals.T - offsets
    below = np.all(side <= tol, axis=0)
    above = np.all(side >= -tol, axis=0)
    found: dict[tuple, tuple] = {}
    for j in np.flatnonzero(below | above):
        sign = 1.0 if below[j] else -1.0
        members = tuple(np.flatnonzero(np.abs(side[:, j]) <= tol))
        if members not in found:
            found[members] = (sign * normals[j], sign * offsets[j])
    return [(m, nv, off) for m, (nv, off) in found.items()]


def _pulling_triangulation(
    pts: np.ndarray, members: Sequence[int], rank: dict | None = None
) -> list[tuple]:
    """Triangulate the face conv(pts[members]) by pulling vertices in ``rank`` order.

    The default order is the vertex index.
    """
    key = (lambda i: rank.get(i, i)) if rank else None
    members = tuple(sorted(members, key=key))
    sub = pts[list(members)]
    centered = sub - sub.mean(axis=0)
    _, sv, vt = np.linalg.svd(centered, full_matrices=False)
    scale = max(1.0, float(np.abs(sub).max()))
    k = int(np.sum(sv > RANK_TOL * scale))
    if len(members) == k + 1:
        return [members]
    local = centered @ vt[:k].T
    apex = members[0]
    out = []
    for face, _, _ in _supporting_sets(local):
        face_ids = [members[i] for i in face]
        if apex in face_ids:
            continue
        for simplex in _pulling_triangulation(pts, face_ids, rank):
            out.append((apex,) + simplex)
    return out


def extreme_points(points) -> np.ndarray:
    """Indices of the points that are vertices of their convex hull."""
    pts = as_points(points)
    d = pts.shape[1]
    if affine_rank(pts) < d:
        raise GeometryError("points are rank deficient")
    if len(pts) > BRUTE_FORCE_LIMIT:
        from scipy.spatial import ConvexHull

        return np.sort(ConvexHull(pts).vertices)
    cplx = convex_hull(pts, check_duplicates=False)
    return np.unique(cplx.facets)


def _orient(pts: np.ndarray, facets: np.ndarray) -> np.ndarray:
    ref = pts.mean(axis=0)
    facets = np.sort(facets, axis=1)
    dets = np.linalg.det(pts[facets] - ref)
    flip = dets < 0
    facets[flip, -2:] = facets[flip, -2:][:, ::-1]
    return facets


def convex_hull(points, check_duplicates: bool = True) -> OrientedComplex:
    """Oriented simplicial boundary complex of conv(points)."""
    pts = as_points(points)
    n, d = pts.shape
    if d < 2:
        raise GeometryError("dimension must be at least 2")
    if check_duplicates:
        _check_duplicates(pts)
    if affine_rank(pts) < d:
        raise GeometryError("points do not affinely span the ambient space")
    if n > BRUTE_FORCE_LIMIT:
        return _qhull_complex(pts)
    ref = pts.mean(axis=0)
    supports = _supporting_sets(pts - ref)
    simplices: list[tuple] = []
    normals, offsets, faces = [], [], []
    for members, normal, offset in supports:
        normals.append(normal)
        offsets.append(offset + normal @ ref)
        faces.append(members)
        if len(members) == d:
            simplices.append(members)
        else:
            simplices.extend(_pulling_triangulation(pts, members))
    facets = _orient(pts, np.array(simplices, dtype=int))
    order = np.lexsort(np.sort(facets, axis=1).T[::-1])
    return OrientedComplex(
        facets=facets[order],
        points=pts,
        normals=np.array(normals),
        offsets=np.array(offsets),
        faces=tuple(faces),
    )


def _qhull_complex(pts: np.ndarray) -> OrientedComplex:
    from scipy.spatial import ConvexHull

    hull = ConvexHull(pts, qhull_options="Qt")
    facets = _orient(pts, np.array(hull.simplices, dtype=int))
    eq = hull.equations
    # qhull repeats the hyperplane of every triangle of a split facet
    _, keep = np.unique(np.round(eq, 9), axis=0, return_index=True)
    eq = eq[np.sort(keep)]
    return OrientedComplex(
        facets=facets, points=pts, normals=eq[:, :-1], offsets=-eq[:, -1], faces=()
    )


def face_triangulations(cplx: "OrientedComplex") -> list[tuple[float, np.ndarray]]:
    """Weighted oriented simplices averaging each non-simplicial facet over its apexes.

    A facet with k > d vertices contributes the pulling triangulation started
    at each of its vertices, with weight 1/k; simplicial facets have weight 1.
    """
    pts = cplx.points
    d = pts.shape[1]
    if not cplx.faces:
        return [(1.0, cplx.facets)]
    out = []
    plain = [f for f in cplx.faces if len(f) == d]
    if plain:
        out.append((1.0, _orient(pts, np.array(plain, dtype=int))))
    for face in cplx.faces:
        if len(face) == d:
            continue
        for apex in face:
            rank = {apex: -1}
            tri = _pulling_triangulation(pts, face, rank)
            out.append((1.0 / len(face), _orient(pts, np.array(tri, dtype=int))))
    return out


def complex_volume(cplx: OrientedComplex) -> float:
    pts = cplx.points
    ref = pts.mean(axis=0)
    d = pts.shape[1]
    dets = np.linalg.det(pts[cplx.facets] - ref)
    return float(dets.sum()) / factorial(d)


def hull_volume(points) -> float:
    """Volume of conv(points); 0 for lower-dimensional point sets."""
    pts = as_points(points)
    if affine_rank(pts) < pts.shape[1]:
        return 0.0
    if len(pts) > BRUTE_FORCE_LIMIT:
        from scipy.spatial import ConvexHull

        return float(ConvexHull(pts).volume)
    return complex_volume(convex_hull(pts, check_duplicates=False))


def polytope_volume(P: VertexPolytope) -> float:
    return complex_volume(convex_hull(P.vertices, check_duplicates=False))


def on_unit_sphere(P: VertexPolytope, tol: float = 1e-12) -> bool:
    norms = np.linalg.norm(P.vertices, axis=1)
    return bool(np.all(np.abs(norms - 1.0) <= tol))


def facet_vertex_sets(points) -> set[frozenset]:
    """Vertex index sets of the true (possibly non-simplicial) facets."""
    cplx = convex_hull(points)
    if cplx.faces:
        return {frozenset(f) for f in cplx.faces}
    return {frozenset(f) for f in cplx.facets}


def random_rotation(d: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(d, d)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def sample_sphere(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.normal(size=(n, d))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def normalize_rows(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def load_polytope(source: str | Iterable) -> VertexPolytope:
    if isinstance(source, str):
        return VertexPolytope.from_json(json.loads(source))
    return VertexPolytope(np.asarray(list(source), dtype=float))
