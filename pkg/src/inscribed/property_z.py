"""Stationarity of inscribed polytopes and local volume maximization on the sphere.

At a volume-stationary inscribed polytope every vertex p equals m/|m|, where
m is the sum over the facets F around p of A(F, p) m(F, p): the (d-1)-volume
of the cone conv((V(F) u {o}) minus {p}) times its unit normal toward p.
Up to the factor d this m is the gradient of the volume with respect to p,
which is what the optimizer uses.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .geom_kernel import (
    GeometryError,
    OrientedComplex,
    VertexPolytope,
    complex_volume,
    convex_hull,
    face_triangulations,
    generalized_cross,
    normalize_rows,
)

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 5000
NEWTON_SWITCH = 1e-4


@dataclass
class ZReport:
    residuals: np.ndarray
    stars: list[list[int]]
    max_residual: float
    volume: float = float("nan")
    iterations: int = 0
    converged: bool | None = None
    combinatorial_changes: int = 0

    def to_json(self) -> dict:
        return {
            "residuals": self.residuals.tolist(),
            "stars": self.stars,
            "max_residual": self.max_residual,
            "volume": self.volume,
            "iterations": self.iterations,
            "converged": self.converged,
            "combinatorial_changes": self.combinatorial_changes,
        }


def volume_gradient(points: np.ndarray, facets: np.ndarray) -> np.ndarray:
    """Gradient of sum det(p_i1, ..., p_id) / d! over the oriented facets."""
    d = points.shape[1]
    rows = points[facets]
    grad = np.zeros_like(points)
    for j in range(d):
        others = np.delete(rows, j, axis=1)
        contrib = generalized_cross(others) * (-1) ** (d - 1 - j)
        np.add.at(grad, facets[:, j], contrib)
    return grad / factorial(d)


def weighted_normals(points: np.ndarray, cplx: OrientedComplex) -> np.ndarray:
    """The vectors m = sum A(F,p) m(F,p), built facet by facet from cone areas.

    Non-simplicial facets enter through the apex-averaged triangulation, which
    is the central (two-sided mean) derivative of the volume there.
    """
    n, d = points.shape
    m = np.zeros((n, d))
    for weight, simplices in face_triangulations(cplx):
        for facet in simplices:
            sign = np.sign(np.linalg.det(points[facet]))
            for j, p_idx in enumerate(facet):
                others = points[np.delete(facet, j)]
                normal = generalized_cross(others)
                length = np.linalg.norm(normal)
                if length == 0.0:
                    continue
                # (d-1)-volume of conv(others u {o})
                area = np.sqrt(max(np.linalg.det(others @ others.T), 0.0)) / factorial(d - 1)
                unit = normal / length
                toward = np.sign(unit @ points[p_idx]) or 1.0
                # a negatively oriented facial simplex contributes with reversed sign
                m[p_idx] += weight * sign * area * toward * unit
    return m


def bh_vectors_3d(points: np.ndarray, cplx: OrientedComplex) -> np.ndarray:
    """3-d shortcut: m = sum of (p_j x p_k) / 6 over the oriented faces (p, p_j, p_k)."""
    if points.shape[1] != 3:
        raise GeometryError("the cross-product form needs d = 3")
    m = np.zeros_like(points)
    for a, b, c in cplx.facets:
        m[a] += np.cross(points[b], points[c]) / 6
        m[b] += np.cross(points[c], points[a]) / 6
        m[c] += np.cross(points[a], points[b]) / 6
    return m


def _report(points: np.ndarray, cplx: OrientedComplex, m: np.ndarray) -> ZReport:
    stars = [[] for _ in range(len(points))]
    for k, facet in enumerate(cplx.facets):
        for i in facet:
            stars[i].append(k)
    for i, star in enumerate(stars):
        if not star:
            raise GeometryError(f"vertex {i} has an empty facet star")
    norms = np.linalg.norm(m, axis=1)
    if np.any(norms < 1e-12):
        raise GeometryError("degenerate facet star: |m| vanishes")
    residuals = np.linalg.norm(points - m / norms[:, None], axis=1)
    return ZReport(
        residuals=residuals,
        stars=stars,
        max_residual=float(residuals.max()),
        volume=complex_volume(cplx),
    )


def z_residual(P: VertexPolytope) -> ZReport:
    cplx = convex_hull(P.vertices)
    return _report(P.vertices, cplx, weighted_normals(P.vertices, cplx))


def _gradient_report(points: np.ndarray, cplx: OrientedComplex) -> ZReport:
    return _report(points, cplx, volume_gradient(points, cplx.facets))


def bh_step(P: VertexPolytope) -> VertexPolytope:
    """One synchronous update p_i <- m_i / |m_i| for every vertex."""
    cplx = convex_hull(P.vertices)
    m = volume_gradient(P.vertices, cplx.facets)
    norms = np.linalg.norm(m, axis=1)
    if np.any(norms < 1e-12):
        raise GeometryError("degenerate facet star: |m| vanishes")
    return VertexPolytope(m / norms[:, None])


def _tangent_bases(points: np.ndarray) -> np.ndarray:
    n, d = points.shape
    bases = np.empty((n, d, d - 1))
    for i, p in enumerate(points):
        q, _ = np.linalg.qr(np.column_stack([p, np.eye(d)]))
        bases[i] = q[:, 1:d]
    return bases


def _move(points: np.ndarray, bases: np.ndarray, step: np.ndarray) -> np.ndarray:
    n, d = points.shape
    tangent = np.einsum("ijk,ik->ij", bases, step.reshape(n, d - 1))
    angle = np.linalg.norm(tangent, axis=1)
    out = points.copy()
    moving = angle > 0
    unit = tangent[moving] / angle[moving, None]
    out[moving] = (
        points[moving] * np.cos(angle[moving])[:, None] + unit * np.sin(angle[moving])[:, None]
    )
    return out


def _newton_step(points: np.ndarray, facets: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Riemannian Newton step for the volume with the combinatorics held fixed."""
    n, d = points.shape
    bases = _tangent_bases(points)

    def rgrad(pts):
        g = volume_gradient(pts, facets)
        return np.einsum("ijk,ij->ik", bases, g).ravel()

    g0 = rgrad(points)
    k = len(g0)
    hess = np.empty((k, k))
    for j in range(k):
        e = np.zeros(k)
        e[j] = h
        hess[:, j] = (rgrad(_move(points, bases, e)) - rgrad(_move(points, bases, -e))) / (2 * h)
    hess = (hess + hess.T) / 2
    radial = np.einsum("ij,ij->i", volume_gradient(points, facets), points)
    hess -= np.diag(np.repeat(radial, d - 1))
    # rotations leave the volume invariant, so the Hessian is singular
    step = -np.linalg.lstsq(hess, g0, rcond=1e-10)[0]
    return _move(points, bases, step)


def local_optimize(
    P: VertexPolytope, max_iter: int = DEFAULT_MAX_ITER, tol: float = DEFAULT_TOL
) -> tuple[VertexPolytope, ZReport]:
    """Climb to a volume-stationary inscribed polytope near ``P``.

    Damped synchronous Berman-Hanes updates p <- normalize(p + t (m/|m| - p))
    run until the residual drops below ``NEWTON_SWITCH``; the damping t is
    halved while the volume would decrease and reset to 1 after a change of
    combinatorics. Close to the optimum a tangent-space Newton step takes
    over, accepted only while it does not lose volume.
    """
    pts = normalize_rows(np.array(P.vertices, dtype=float))
    cplx = convex_hull(pts)
    report = _gradient_report(pts, cplx)
    volume = report.volume
    damping = 1.0
    changes = 0
    it = 0
    while it < max_iter and report.max_residual >= tol:
        it += 1
        if report.max_residual < NEWTON_SWITCH:
            cand = _newton_step(pts, cplx.facets)
            try:
                cand_cplx = convex_hull(cand)
                cand_report = _gradient_report(cand, cand_cplx)
            except GeometryError:
                cand_report = None
            if (
                cand_report is not None
                and cand_report.volume >= volume - 1e-12
                and cand_report.max_residual < report.max_residual
            ):
                if not np.array_equal(cand_cplx.facets, cplx.facets):
                    changes += 1
                pts, cplx, report, volume = cand, cand_cplx, cand_report, cand_report.volume
                continue
        m = volume_gradient(pts, cplx.facets)
        target = normalize_rows(m)
        while True:
            cand = normalize_rows(pts + damping * (target - pts))
            try:
                cand_cplx = convex_hull(cand)
                cand_vol = complex_volume(cand_cplx)
            except GeometryError:
                cand_vol = -np.inf
            if cand_vol > volume or damping < 1e-12:
                break
            damping /= 2
        if cand_vol <= volume:
            # no ascent possible at machine precision along the update direction
            break
        if not np.array_equal(cand_cplx.facets, cplx.facets):
            changes += 1
            damping = 1.0
        else:
            damping = min(1.0, 2 * damping)
        pts, cplx = cand, cand_cplx
        report = _gradient_report(pts, cplx)
        volume = report.volume
    final = VertexPolytope(pts)
    report = z_residual(final)
    report.iterations = it
    report.converged = report.max_residual < tol
    report.combinatorial_changes = changes
    return final, report


def medial_check(P: VertexPolytope) -> dict:
    """Valence multiset of the boundary complex and the medial flag (d = 3)."""
    if P.dim != 3:
        raise GeometryError("medial complexes are defined for d = 3")
    cplx = convex_hull(P.vertices)
    valences = cplx.valences()
    n = P.n
    avg_num = 6 * n - 12
    if avg_num % n == 0:
        allowed = {avg_num // n}
    else:
        low = avg_num // n
        allowed = {low, low + 1}
    return {
        "valences": dict(sorted(Counter(valences.tolist()).items())),
        "is_medial": bool(set(valences.tolist()) <= allowed),
    }


def valence_string(valences: dict) -> str:
    """Render a valence multiset the way Table 1 prints it, e.g. '4x4;5x4'."""
    return ";".join(f"{v}x{c}" for v, c in sorted(valences.items()))
