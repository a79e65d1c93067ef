"""Gale transforms of vertex polytopes and the combinatorial predicates read off them.

For n vertices in dimension d the diagram lives in R^k with k = n - d - 1.
All predicates below are decided by finite enumeration, which is exact up to
the floating point tolerances for the small k (at most 3) used here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import linprog

from .geom_kernel import GeometryError, VertexPolytope

KERNEL_TOL = 1e-9
ORIGIN_TOL = 1e-9
RELINT_TOL = 1e-9


@dataclass(frozen=True)
class GaleDiagram:
    points: np.ndarray
    source: VertexPolytope | None = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def to_json(self) -> dict:
        return {"dim": self.dim, "points": self.points.tolist()}

    def transformed(self, A: np.ndarray) -> "GaleDiagram":
        """Image under the invertible linear map x -> A x."""
        return GaleDiagram(self.points @ np.asarray(A, float).T, self.source)


def homogeneous_matrix(P: VertexPolytope) -> np.ndarray:
    """The (d+1) x n matrix with columns (p_i, 1)."""
    return np.vstack([P.vertices.T, np.ones(P.n)])


def gale_transform(P: VertexPolytope) -> GaleDiagram:
    """Orthonormal kernel basis of the homogeneous matrix, scaled to unit Frobenius norm.

    The sign of each basis vector is fixed so that its first entry of largest
    magnitude is positive, which makes the output reproducible.
    """
    M = homogeneous_matrix(P)
    _, s, vt = np.linalg.svd(M)
    rank = int(np.sum(s > KERNEL_TOL * max(s[0], 1.0)))
    if rank < P.dim + 1:
        raise GeometryError("homogeneous vertex matrix is rank deficient")
    basis = vt[rank:].T
    if basis.shape[1] == 0:
        return GaleDiagram(np.zeros((P.n, 0)), P)
    for j in range(basis.shape[1]):
        col = basis[:, j]
        pivot = np.argmax(np.abs(col) > np.abs(col).max() - 1e-12)
        if col[pivot] < 0:
            basis[:, j] = -col
    basis /= np.linalg.norm(basis)
    return GaleDiagram(basis, P)


def _scale(points: np.ndarray) -> float:
    return max(float(np.abs(points).max(initial=0.0)), 1e-300)


def _at_origin(points: np.ndarray) -> np.ndarray:
    return np.linalg.norm(points, axis=1) <= ORIGIN_TOL * _scale(points)


def origin_in_relint(points: np.ndarray, scale: float | None = None) -> bool:
    """Whether o lies in the relative interior of conv(points).

    Solved as the LP max t s.t. lam_i >= t, sum lam = 1, sum lam_i q_i = 0.
    ``scale`` is the magnitude of the whole diagram, used for the origin test.
    """
    m = len(points)
    if m == 0:
        return False
    scale = _scale(points) if scale is None else scale
    norms = np.linalg.norm(points, axis=1)
    if np.all(norms <= ORIGIN_TOL * scale):
        return True
    if m == 1:
        return False
    k = points.shape[1]
    # variables (lam_1..lam_m, t); minimize -t
    c = np.zeros(m + 1)
    c[-1] = -1.0
    a_eq = np.zeros((k + 1, m + 1))
    a_eq[:k, :m] = (points / _scale(points)).T
    a_eq[k, :m] = 1.0
    b_eq = np.zeros(k + 1)
    b_eq[k] = 1.0
    a_ub = np.hstack([-np.eye(m), np.ones((m, 1))])
    res = linprog(
        c, A_ub=a_ub, b_ub=np.zeros(m), A_eq=a_eq, b_eq=b_eq,
        bounds=[(0, None)] * m + [(None, 1)], method="highs",
    )
    return bool(res.status == 0 and -res.fun > RELINT_TOL)


def _in_span(points: np.ndarray, basis_pts: np.ndarray) -> np.ndarray:
    """Mask of rows of ``points`` lying in the linear span of ``basis_pts``."""
    scale = _scale(points)
    if len(basis_pts) == 0:
        return np.linalg.norm(points, axis=1) <= ORIGIN_TOL * scale
    q, r = np.linalg.qr(basis_pts.T)
    q = q[:, np.abs(np.diag(r)) > KERNEL_TOL * scale]
    resid = points - (points @ q) @ q.T
    return np.linalg.norm(resid, axis=1) <= 1e-9 * scale


def min_open_halfspace_count(points: np.ndarray) -> int:
    """Smallest number of points in an open half-space bounded by a hyperplane through o.

    Rotating a hyperplane until it meets diagram points never increases the
    count on its positive side, so it suffices to test the hyperplanes spanned
    by k - 1 linearly independent points, on both sides.
    """
    n, k = points.shape
    scale = _scale(points)
    if np.linalg.matrix_rank(points, tol=KERNEL_TOL * scale) < k:
        return 0
    if k == 1:
        x = points[:, 0]
        tol = ORIGIN_TOL * scale
        return int(min(np.sum(x > tol), np.sum(x < -tol)))
    best = n
    for subset in combinations(range(n), k - 1):
        sub = points[list(subset)]
        # normal of span(sub): the last left singular vector of sub^T
        u, s, _ = np.linalg.svd(sub.T)
        if s[-1] <= KERNEL_TOL * scale:
            continue
        normal = u[:, -1]
        side = points @ normal
        tol = 1e-9 * scale
        best = min(best, int(np.sum(side > tol)), int(np.sum(side < -tol)))
    return best


def _is_simplicial(points: np.ndarray) -> bool:
    """No hyperplane H through o has o in relint conv(points in H)."""
    n, k = points.shape
    seen = set()
    for size in range(0, k):
        for subset in combinations(range(n), size):
            mask = _in_span(points, points[list(subset)])
            key = tuple(np.flatnonzero(mask))
            if key in seen:
                continue
            seen.add(key)
            span_rank = np.linalg.matrix_rank(points[mask], tol=KERNEL_TOL * _scale(points)) if key else 0
            if span_rank >= k:
                continue
            if origin_in_relint(points[mask], _scale(points)):
                return False
    return True


def facet_cofaces(points: np.ndarray) -> list[tuple[int, ...]]:
    """Minimal index sets Z with o in relint conv(Z); their complements are the facets."""
    n, k = points.shape
    scale = _scale(points)
    found: list[tuple[int, ...]] = []
    for size in range(1, min(k + 1, n) + 1):
        for subset in combinations(range(n), size):
            if any(set(z) <= set(subset) for z in found):
                continue
            if origin_in_relint(points[list(subset)], scale):
                found.append(subset)
    return found


def gale_predicates(D: GaleDiagram) -> dict:
    """Polytope-diagram, simplicial and pyramid predicates plus the certified facets."""
    n, k = D.points.shape
    if k == 0:
        # n = d + 1: the simplex, every vertex set of size d is a facet
        cofaces = [(i,) for i in range(n)]
        return {
            "is_polytope_diagram": True,
            "is_simplicial": True,
            "is_pyramid": True,
            "facet_cofaces": [list(z) for z in cofaces],
            "facets": [sorted(set(range(n)) - set(z)) for z in cofaces],
        }
    pts = D.points
    cofaces = facet_cofaces(pts)
    return {
        "is_polytope_diagram": min_open_halfspace_count(pts) >= 2,
        "is_simplicial": _is_simplicial(pts),
        "is_pyramid": bool(_at_origin(pts).any()),
        "facet_cofaces": [list(z) for z in cofaces],
        "facets": [sorted(set(range(n)) - set(z)) for z in cofaces],
    }
