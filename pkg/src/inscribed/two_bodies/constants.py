"""Extremal hull-volume ratios c(K|S) of a body and its image under a family of isometries.

The hull volume of K and a copy moving linearly is convex in the motion
parameter, so over a convex feasible set the maximum sits at a vertex:
  translations       K cap (K+t) != 0  iff  t in K - K   -> vertices of K - K
  point reflections  K cap (2a-K) != 0 iff  a in K       -> a at a vertex of K
  flat reflections   K cap sigma K != 0 iff  the flat meets K; for a fixed flat
                     direction the offset ranges over the projection of K onto
                     the normal space        -> flats through projected vertices
Only the direction of a flat (or the rotation of a congruent copy) is searched
numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize, minimize_scalar
from scipy.spatial import ConvexHull
from scipy.spatial.transform import Rotation

from ..geom_kernel import GeometryError, VertexPolytope, polytope_volume
from .placements import PairPlacement, fast_volume

FAMILIES = ("translations", "point_reflections", "flat_reflections", "hyperplane_reflections", "congruences")

DEFAULT_CONFIG = {"grid": 3600, "restarts": 16, "seed": 0, "refine": 6}


@dataclass
class CResult:
    value: float
    witness: PairPlacement
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"value": self.value, "witness": self.witness.to_json(), "stats": self.stats}


def _config(opt_config: dict | None) -> dict:
    cfg = dict(DEFAULT_CONFIG)
    cfg.update(opt_config or {})
    return cfg


def difference_vertices(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Vertices of conv(A) - conv(B)."""
    diff = (A[:, None, :] - B[None, :, :]).reshape(-1, A.shape[1])
    return diff[ConvexHull(diff).vertices]


def projection_volume(K: VertexPolytope, u) -> float:
    """(d-1)-volume of the orthogonal projection of K onto u^perp."""
    u = np.asarray(u, float)
    u = u / np.linalg.norm(u)
    # orthonormal basis of u^perp from the SVD of u
    basis = np.linalg.svd(u[None, :])[2][1:].T
    proj = K.vertices @ basis
    if proj.shape[1] == 1:
        return float(np.ptp(proj))
    return fast_volume(proj)


def width(K: VertexPolytope, u) -> float:
    u = np.asarray(u, float)
    return float(np.ptp(K.vertices @ (u / np.linalg.norm(u))))


def translation_volume(K: VertexPolytope, t) -> float:
    """vol conv(K u (K+t)) = vol K + |t| vol_{d-1}(K | t^perp)."""
    t = np.asarray(t, float)
    norm = np.linalg.norm(t)
    if norm == 0:
        return polytope_volume(K)
    return polytope_volume(K) + norm * projection_volume(K, t)


def contact_lengths(K: VertexPolytope, directions: np.ndarray) -> np.ndarray:
    """lambda(u) = max{l : K cap (K + l u) != 0}, the radial function of K - K."""
    diff = (K.vertices[:, None, :] - K.vertices[None, :, :]).reshape(-1, K.dim)
    eq = ConvexHull(diff).equations
    A, b = eq[:, :-1], -eq[:, -1]
    dots = np.asarray(directions, float) @ A.T
    with np.errstate(divide="ignore"):
        ratios = np.where(dots > 1e-15, b / dots, np.inf)
    return ratios.min(axis=1)


# ---------------------------------------------------------------- translations


def _c_translations(K: VertexPolytope, cfg: dict) -> CResult:
    vol = polytope_volume(K)
    best, arg = -np.inf, None
    W = difference_vertices(K.vertices, K.vertices)
    for w in W:
        if np.linalg.norm(w) < 1e-12:
            continue
        r = translation_volume(K, w) / vol
        if r > best:
            best, arg = r, w
    return CResult(best, PairPlacement("translation", {"t": arg}), {"candidates": len(W)})


# ----------------------------------------------------------- point reflections


def _c_point_reflections(K: VertexPolytope, cfg: dict) -> CResult:
    vol = polytope_volume(K)
    V = K.vertices
    vals = [fast_volume(np.vstack([V, 2 * v - V])) / vol for v in V]
    i = int(np.argmax(vals))
    return CResult(float(vals[i]), PairPlacement("point_reflection", {"a": V[i]}), {"candidates": len(V)})


# ------------------------------------------------------------ flat reflections


def _flat_candidates(V: np.ndarray, basis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vertices of K whose projections are vertices of the projection onto span(basis)^perp."""
    d, i = basis.shape
    normal = np.linalg.svd(basis.T)[2][i:].T if i else np.eye(d)
    proj = V @ normal
    if proj.shape[1] == 1:
        idx = np.array([np.argmin(proj[:, 0]), np.argmax(proj[:, 0])])
    elif proj.shape[1] == d:
        idx = np.arange(len(V))
    else:
        idx = ConvexHull(proj).vertices
    return V[idx], normal


def _reflect_volume(V: np.ndarray, anchor: np.ndarray, basis: np.ndarray) -> float:
    proj = anchor + ((V - anchor) @ basis) @ basis.T
    return fast_volume(np.vstack([V, 2 * proj - V]))


def _best_anchor(V: np.ndarray, basis: np.ndarray) -> tuple[float, np.ndarray]:
    anchors, _ = _flat_candidates(V, basis)
    vals = [_reflect_volume(V, a, basis) for a in anchors]
    k = int(np.argmax(vals))
    return float(vals[k]), anchors[k]


def _line_basis(theta: float) -> np.ndarray:
    return np.array([[np.cos(theta)], [np.sin(theta)]])


def maximize_periodic(f, period: float, grid: int, refine: int) -> tuple[float, float]:
    """Maximize a periodic scalar function: dense grid, then bounded Brent around the best peaks."""
    xs = np.arange(grid) * period / grid
    vals = np.array([f(x) for x in xs])
    peaks = [k for k in range(grid) if vals[k] >= vals[k - 1] and vals[k] >= vals[(k + 1) % grid]]
    peaks = sorted(peaks, key=lambda k: -vals[k])[:refine]
    best_x, best_v = float(xs[int(np.argmax(vals))]), float(vals.max())
    h = period / grid
    for k in peaks:
        res = minimize_scalar(lambda x: -f(x), bounds=(xs[k] - h, xs[k] + h), method="bounded",
                              options={"xatol": 1e-13})
        if -res.fun > best_v:
            best_x, best_v = float(res.x) % period, float(-res.fun)
    return best_x, best_v


def _basis_from_params(params: np.ndarray, d: int, i: int) -> np.ndarray:
    return np.linalg.qr(params.reshape(d, i))[0]


def _c_flat_reflections(K: VertexPolytope, i: int, cfg: dict) -> CResult:
    d = K.dim
    if not 0 <= i <= d - 1:
        raise GeometryError(f"flat dimension must lie in 0..{d - 1}")
    if i == 0:
        return _c_point_reflections(K, cfg)
    vol = polytope_volume(K)
    V = K.vertices
    if d == 2:
        theta, val = maximize_periodic(lambda t: _best_anchor(V, _line_basis(t))[0], np.pi,
                                       cfg["grid"], cfg["refine"])
        basis = _line_basis(theta)
        stats = {"grid": cfg["grid"], "refine": cfg["refine"]}
    else:
        rng = np.random.default_rng(cfg["seed"])
        starts = [rng.normal(size=d * i) for _ in range(cfg["restarts"])]
        best = (-np.inf, None)
        for x0 in starts:
            res = minimize(lambda p: -_best_anchor(V, _basis_from_params(p, d, i))[0], x0,
                           method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000})
            if -res.fun > best[0]:
                best = (-res.fun, res.x)
        basis = _basis_from_params(best[1], d, i)
        stats = {"restarts": cfg["restarts"], "seed": cfg["seed"]}
    val, anchor = _best_anchor(V, basis)
    if i == d - 1:
        u = np.linalg.svd(basis.T)[2][-1]
        witness = PairPlacement("hyperplane_reflection", {"u": u, "h": float(anchor @ u)})
    else:
        witness = PairPlacement("flat_reflection", {"a": anchor, "basis": basis})
    return CResult(val / vol, witness, stats)


# ----------------------------------------------------------------- congruences


def _rotation(params: np.ndarray, d: int, improper: bool) -> np.ndarray:
    if d == 2:
        c, s = np.cos(params[0]), np.sin(params[0])
        R = np.array([[c, -s], [s, c]])
    elif d == 3:
        R = Rotation.from_rotvec(params).as_matrix()
    else:
        raise GeometryError("congruence search is implemented for d = 2, 3")
    if improper:
        R = R @ np.diag([-1.0] + [1.0] * (d - 1))
    return R


def _best_translate(V: np.ndarray, R: np.ndarray) -> tuple[float, np.ndarray]:
    W = V @ R.T
    vals, ts = [], difference_vertices(V, W)
    for t in ts:
        vals.append(fast_volume(np.vstack([V, W + t])))
    k = int(np.argmax(vals))
    return float(vals[k]), ts[k]


def _c_congruences(K: VertexPolytope, cfg: dict) -> CResult:
    d = K.dim
    vol = polytope_volume(K)
    V = K.vertices
    best = (-np.inf, None, None)
    if d == 2:
        grid = max(cfg["grid"] // 10, 36)
        for improper in (False, True):
            phi, val = maximize_periodic(lambda a: _best_translate(V, _rotation(np.array([a]), 2, improper))[0],
                                         2 * np.pi, grid, cfg["refine"])
            if val > best[0]:
                best = (val, _rotation(np.array([phi]), 2, improper), None)
    else:
        rng = np.random.default_rng(cfg["seed"])
        for r in range(cfg["restarts"]):
            improper = bool(r % 2)
            x0 = Rotation.random(random_state=rng).as_rotvec()
            res = minimize(lambda p: -_best_translate(V, _rotation(p, d, improper))[0], x0,
                           method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-12})
            if -res.fun > best[0]:
                best = (-res.fun, _rotation(res.x, d, improper), None)
    R = best[1]
    val, t = _best_translate(V, R)
    return CResult(val / vol, PairPlacement("rigid_motion", {"R": R, "t": t}), dict(cfg))


def c_quantity(K: VertexPolytope, family: str, opt_config: dict | None = None, flat_dim: int | None = None) -> CResult:
    """max vol conv(K u sigma K) / vol K over sigma in the family with K cap sigma K nonempty.

    ``family`` may also be written 'flat_reflections(i)'.
    """
    cfg = _config(opt_config)
    if family.startswith("flat_reflections(") and family.endswith(")"):
        flat_dim = int(family[len("flat_reflections("):-1])
        family = "flat_reflections"
    if family == "translations":
        return _c_translations(K, cfg)
    if family == "point_reflections":
        return _c_point_reflections(K, cfg)
    if family == "hyperplane_reflections":
        return _c_flat_reflections(K, K.dim - 1, cfg)
    if family == "flat_reflections":
        if flat_dim is None:
            raise GeometryError("flat_reflections needs a flat dimension")
        return _c_flat_reflections(K, flat_dim, cfg)
    if family == "congruences":
        return _c_congruences(K, cfg)
    raise GeometryError(f"unknown family {family!r}; expected one of {FAMILIES}")


# ----------------------------------------------------------- related functionals


def touching_volumes(K: VertexPolytope, samples: int = 360) -> np.ndarray:
    """vol conv(K u (K + lambda(u) u)) for equally spaced contact directions u (d = 2)."""
    if K.dim != 2:
        raise GeometryError("touching_volumes is defined for d = 2")
    t = 2 * np.pi * np.arange(samples) / samples
    U = np.column_stack([np.cos(t), np.sin(t)])
    lam = contact_lengths(K, U)
    return np.array([translation_volume(K, l * u) for l, u in zip(lam, U)])


def constant_volume_predicate(K: VertexPolytope, samples: int = 360, tol: float = 1e-3) -> bool:
    """Translative constant volume: relative spread of the touching hull areas below tol."""
    vals = touching_volumes(K, samples)
    return bool(np.ptp(vals) / vals.mean() < tol)


def reflection_body_ratio(K: VertexPolytope, kind: str) -> float:
    """vol(R*K)/vol K (best centre of symmetry) or vol(T*K)/vol K (best touching translate)."""
    if kind == "R_star":
        return _c_point_reflections(K, DEFAULT_CONFIG).value
    if kind == "T_star":
        return _c_translations(K, DEFAULT_CONFIG).value
    raise GeometryError("kind must be 'R_star' or 'T_star'")


def V_star(H: VertexPolytope, K: VertexPolytope) -> float:
    """max vol conv(H u (K + x)) over x with H cap (K + x) nonempty."""
    if H.dim != K.dim:
        raise GeometryError("dimension mismatch")
    best = -np.inf
    for x in difference_vertices(H.vertices, K.vertices):
        best = max(best, fast_volume(np.vstack([H.vertices, K.vertices + x])))
    return float(best)


def cylinder_ratio(K: VertexPolytope, u) -> float:
    """Volume of the circumscribed right cylinder with generators along u, over vol K."""
    return width(K, u) * projection_volume(K, u) / polytope_volume(K)


def max_cylinder_ratio(K: VertexPolytope, opt_config: dict | None = None) -> tuple[float, np.ndarray]:
    cfg = _config(opt_config)
    d = K.dim
    if d == 2:
        theta, val = maximize_periodic(lambda t: cylinder_ratio(K, [np.cos(t), np.sin(t)]), np.pi,
                                       cfg["grid"], cfg["refine"])
        return val, np.array([np.cos(theta), np.sin(theta)])
    rng = np.random.default_rng(cfg["seed"])
    best = (-np.inf, None)
    for _ in range(cfg["restarts"]):
        res = minimize(lambda p: -cylinder_ratio(K, p), rng.normal(size=d), method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-13})
        if -res.fun > best[0]:
            best = (-res.fun, res.x / np.linalg.norm(res.x))
    return float(best[0]), best[1]
