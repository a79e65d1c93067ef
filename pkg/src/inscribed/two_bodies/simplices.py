"""Simplices meeting their reflected or rotated copies, and symmetricity oracles."""

from __future__ import annotations

from itertools import combinations

import numpy as np
from scipy.optimize import minimize
from scipy.spatial.transform import Rotation

from ..geom_kernel import GeometryError, VertexPolytope, polytope_volume
from .placements import PairPlacement, fast_volume

# ------------------------------------------------------------ hyperplane reflection


def _facet_normals(S: np.ndarray) -> np.ndarray:
    """Outward unit normal of the facet opposite each vertex of the simplex S."""
    d = S.shape[1]
    normals = np.empty((d + 1, d))
    centroid = S.mean(axis=0)
    for j in range(d + 1):
        face = np.delete(S, j, axis=0)
        normal = np.linalg.svd(face[1:] - face[0])[2][-1]
        if normal @ (face[0] - centroid) < 0:
            normal = -normal
        normals[j] = normal
    return normals


def prism_ratio(S: np.ndarray, u: np.ndarray) -> tuple[float, list[int]]:
    """vol conv(S u S^H) / vol S via prisms over the projected upper facets.

    S has s_0 = o on H = u^perp and the other vertices strictly above it.
    Returns the ratio and the indices j of the upper facets (opposite s_j).
    """
    d = S.shape[1]
    s = S.sum(axis=0)
    normals = _facet_normals(S)
    total, upper = 0.0, []
    for j, uj in enumerate(normals):
        if uj @ u <= 1e-12:
            continue
        upper.append(j)
        total += (uj @ u) * (u @ (s - S[j])) / abs(uj @ ((d + 1) * S[j] - s))
    return 2 * d * total, upper


def gram_bound(S: np.ndarray) -> tuple[float, float]:
    """The single-upper-facet bound with s_0 = o: (Gram form, tight form d(1 + |s|/<u_0,s>))."""
    d = S.shape[1]
    M = S[1:].T
    G = M.T @ M
    ones = np.ones(d)
    row = ones @ np.linalg.inv(G)
    gram = d + np.sqrt(np.abs(row).sum()) * np.linalg.norm(M @ ones)
    s = M @ ones
    u0 = _facet_normals(S)[0]
    tight = d * (1 + np.linalg.norm(s) / (u0 @ s))
    return float(gram), float(tight)


def simplex_reflection(S: VertexPolytope, H_normal, opts: dict | None = None) -> dict:
    """Hull of a simplex and its mirror image in a hyperplane touching it at one vertex.

    H has normal ``H_normal`` and passes through the unique lowest vertex s_0;
    the reflection direction is irrelevant to the ratio. The ratio is computed
    from the hull directly and from the prism formula.
    """
    opts = opts or {}
    V = S.vertices
    d = S.dim
    if S.n != d + 1:
        raise GeometryError("simplex_reflection needs a simplex")
    u = np.asarray(H_normal, float)
    u = u / np.linalg.norm(u)
    heights = V @ u
    order = np.argsort(heights)
    gap = opts.get("contact_tol", 1e-9)
    if heights[order[1]] - heights[order[0]] <= gap:
        raise GeometryError("contact regime violated: H must touch the simplex at a single vertex")
    i0 = int(order[0])
    shifted = np.vstack([V[i0], np.delete(V, i0, axis=0)]) - V[i0]
    h = float(heights[i0])
    placement = PairPlacement("hyperplane_reflection", {"u": u, "h": h})
    direct = fast_volume(np.vstack([V, placement.apply(V)])) / polytope_volume(S)
    prism, upper = prism_ratio(shifted, u)
    out = {
        "ratio": float(direct),
        "ratio_prism": float(prism),
        "upper_facets": upper,
        "bound": None,
        "bound_tight": None,
        "contact_vertex": i0,
    }
    if upper == [0]:
        out["bound"], out["bound_tight"] = gram_bound(shifted)
    return out


def optimal_reflection_normal(S: VertexPolytope, contact: int = 0) -> np.ndarray:
    """(u_0 + s') / |u_0 + s'| for contact vertex s_0; equals s/|s| for a regular simplex."""
    V = S.vertices
    shifted = np.vstack([V[contact], np.delete(V, contact, axis=0)]) - V[contact]
    s = shifted.sum(axis=0)
    u0 = _facet_normals(shifted)[0]
    v = u0 + s / np.linalg.norm(s)
    return v / np.linalg.norm(v)


# ------------------------------------------------------------- common centre


def _triangle_3d() -> np.ndarray:
    t = 2 * np.pi * np.arange(3) / 3
    return np.column_stack([np.cos(t), np.sin(t), np.zeros(3)])


def _tetrahedron() -> np.ndarray:
    from ..constructions import regular_simplex

    return np.array(regular_simplex(3).vertices)


def _common_volume(base: np.ndarray, rotvec: np.ndarray) -> float:
    R = Rotation.from_rotvec(rotvec).as_matrix()
    return fast_volume(np.vstack([base, base @ R.T]))


def common_center_search(kind: str, opt_config: dict | None = None) -> dict:
    """Maximize vol conv(B u R B) over rotations R for two regular bodies with common centre.

    Multi-start Nelder-Mead in rotation-vector coordinates; restart 0 starts at
    the identity (the coincident position).
    """
    cfg = {"restarts": 64, "seed": 0}
    cfg.update(opt_config or {})
    if kind == "two_tetrahedra":
        base = _tetrahedron()
    elif kind == "two_triangles":
        base = _triangle_3d()
    else:
        raise GeometryError("kind must be 'two_tetrahedra' or 'two_triangles'")
    rng = np.random.default_rng(cfg["seed"])
    best = (-np.inf, None)
    starts = [np.zeros(3)] + [Rotation.random(random_state=rng).as_rotvec() for _ in range(cfg["restarts"] - 1)]
    for x0 in starts:
        res = minimize(lambda p: -_common_volume(base, p), x0, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 20000,
                                "initial_simplex": x0 + np.vstack([np.zeros(3), 0.5 * np.eye(3)])})
        if -res.fun > best[0]:
            best = (-res.fun, res.x)
    R = Rotation.from_rotvec(best[1]).as_matrix()
    points = np.vstack([base, base @ R.T])
    return {
        "kind": kind,
        "max_volume": float(best[0]),
        "witness_rotation": R,
        "points": points,
        "start_volume": _common_volume(base, np.zeros(3)),
        "restarts": cfg["restarts"],
        "seed": cfg["seed"],
    }


def cube_deviation(points: np.ndarray) -> float:
    """Max difference between the sorted pairwise distances and those of an inscribed cube."""
    from ..constructions import cube

    def dists(p):
        return np.sort([np.linalg.norm(a - b) for a, b in combinations(p, 2)])

    scale = np.linalg.norm(points, axis=1).mean()
    return float(np.abs(dists(points / scale) - dists(cube().vertices)).max())


def triangle_witness(points: np.ndarray) -> dict:
    """Angle between the planes of the two triangles and the best antipodal vertex pair."""
    a, b = points[:3], points[3:]
    na = np.cross(a[1] - a[0], a[2] - a[0])
    nb = np.cross(b[1] - b[0], b[2] - b[0])
    cosang = abs(na @ nb) / (np.linalg.norm(na) * np.linalg.norm(nb))
    antipodal = min(np.linalg.norm(x + y) for x in a for y in b)
    return {"plane_angle": float(np.arccos(np.clip(cosang, 0, 1))), "antipodal_gap": float(antipodal)}


# ------------------------------------------------------------- symmetricity


def clip_polygon(poly: np.ndarray, a: np.ndarray, b: float) -> np.ndarray:
    """Sutherland-Hodgman: the part of a convex polygon with <a, x> <= b."""
    out = []
    m = len(poly)
    for k in range(m):
        p, q = poly[k], poly[(k + 1) % m]
        fp, fq = a @ p - b, a @ q - b
        if fp <= 0:
            out.append(p)
        if fp * fq < 0:
            out.append(p + (q - p) * (fp / (fp - fq)))
    return np.array(out).reshape(-1, 2)


def _polygon_area(poly: np.ndarray) -> float:
    if len(poly) < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def halfspace_volume(A: np.ndarray, b: np.ndarray) -> float:
    """Volume of {x : A x <= b} in d = 3 by vertex enumeration (bounded input assumed)."""
    d = A.shape[1]
    verts = []
    for idx in combinations(range(len(A)), d):
        sub = A[list(idx)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, b[list(idx)])
        if np.all(A @ x <= b + 1e-10):
            verts.append(x)
    if len(verts) < d + 1:
        return 0.0
    return fast_volume(np.unique(np.round(np.array(verts), 12), axis=0))


def _simplex_halfspaces(V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    normals = _facet_normals(V)
    offsets = np.array([normals[j] @ V[(j + 1) % len(V)] for j in range(len(V))])
    return normals, offsets


def _inner_ratio(V: np.ndarray, a: np.ndarray, vol: float) -> float:
    d = V.shape[1]
    W = 2 * a - V
    if d == 2:
        poly = V[np.argsort(np.arctan2(*(V - V.mean(0)).T[::-1]))]
        A, b = _simplex_halfspaces(W)
        for ak, bk in zip(A, b):
            poly = clip_polygon(poly, ak, bk)
            if len(poly) == 0:
                return 0.0
        return _polygon_area(poly) / vol
    A1, b1 = _simplex_halfspaces(V)
    A2, b2 = _simplex_halfspaces(W)
    return halfspace_volume(np.vstack([A1, A2]), np.concatenate([b1, b2])) / vol


def _outer_ratio(V: np.ndarray, a: np.ndarray, vol: float) -> float:
    return vol / fast_volume(np.vstack([V, 2 * a - V]))


def _barycentric_grid(d: int, res: int) -> np.ndarray:
    """All barycentric weights with denominators res, strictly inside the simplex."""
    pts = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            pts.append(prefix + [remaining])
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], res, d + 1)
    w = np.array(pts, float) / res
    return w[np.all(w > 0, axis=1)]


def symmetricity_oracle(S: VertexPolytope, kind: str, resolution: int = 24) -> dict:
    """Brute-force inner/outer symmetricity of a simplex: barycentric grid of centres, then Nelder-Mead.

    inner: max_a vol(S cap (2a - S)) / vol S   (polygon clipping / halfspace vertices)
    outer: vol S / min_a vol conv(S u (2a - S))
    """
    d = S.dim
    if d not in (2, 3) or S.n != d + 1:
        raise GeometryError("the symmetricity oracle handles triangles and tetrahedra only")
    V = S.vertices
    vol = polytope_volume(S)
    if kind == "inner":
        f = lambda a: _inner_ratio(V, a, vol)  # noqa: E731
    elif kind == "outer":
        f = lambda a: _outer_ratio(V, a, vol)  # noqa: E731
    else:
        raise GeometryError("kind must be 'inner' or 'outer'")
    W = _barycentric_grid(d, resolution)
    centres = W @ V
    vals = np.array([f(a) for a in centres])
    k = int(np.argmax(vals))
    res = minimize(lambda a: -f(a), centres[k], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000})
    value = max(float(vals[k]), float(-res.fun))
    centre = res.x if -res.fun >= vals[k] else centres[k]
    return {"kind": kind, "value": value, "grid_value": float(vals[k]), "centre": centre.tolist(),
            "resolution": resolution, "grid_points": len(W)}
