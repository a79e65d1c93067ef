"""Placements of a second body and the hull volume of the pair."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from ..geom_kernel import GeometryError, VertexPolytope, hull_volume

KINDS = ("translation", "point_reflection", "flat_reflection", "hyperplane_reflection", "rigid_motion")


def fast_volume(points: np.ndarray) -> float:
    """Hull volume through qhull, falling back to the exact kernel on degenerate input."""
    try:
        return float(ConvexHull(points).volume)
    except (QhullError, ValueError):
        return hull_volume(points)


@dataclass
class PairPlacement:
    """An isometry applied to the second body.

    Parameters per kind:
      translation            t
      point_reflection       a            x -> 2a - x
      flat_reflection        a, basis     x -> 2 pi_F(x) - x, F = a + span(basis columns)
      hyperplane_reflection  u, h         x -> x - 2 (<x,u> - h) u, |u| = 1
      rigid_motion           R, t         x -> R x + t
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GeometryError(f"unknown placement kind {self.kind!r}")
        self.params = {k: np.asarray(v, dtype=float) for k, v in self.params.items()}
        if self.kind == "hyperplane_reflection":
            u = self.params["u"]
            self.params["u"] = u / np.linalg.norm(u)
        if self.kind == "flat_reflection":
            basis = self.params["basis"].reshape(len(self.params["a"]), -1)
            q = np.linalg.qr(basis)[0] if basis.shape[1] else basis
            self.params["basis"] = q

    @property
    def flat_dim(self) -> int | None:
        if self.kind == "point_reflection":
            return 0
        if self.kind == "flat_reflection":
            return self.params["basis"].shape[1]
        if self.kind == "hyperplane_reflection":
            return len(self.params["u"]) - 1
        return None

    def apply(self, points: np.ndarray) -> np.ndarray:
        x = np.asarray(points, dtype=float)
        p = self.params
        if self.kind == "translation":
            return x + p["t"]
        if self.kind == "point_reflection":
            return 2 * p["a"] - x
        if self.kind == "flat_reflection":
            B = p["basis"]
            proj = p["a"] + ((x - p["a"]) @ B) @ B.T
            return 2 * proj - x
        if self.kind == "hyperplane_reflection":
            return x - 2 * np.outer(x @ p["u"] - p["h"], p["u"])
        return x @ p["R"].T + p["t"]

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": {k: v.tolist() for k, v in self.params.items()}}


def identity(d: int) -> PairPlacement:
    return PairPlacement("translation", {"t": np.zeros(d)})


def pair_hull_volume(K: VertexPolytope, K2: VertexPolytope, placement: PairPlacement) -> float:
    """vol conv(K u placement(K2))."""
    if K.dim != K2.dim:
        raise GeometryError(f"dimension mismatch: {K.dim} vs {K2.dim}")
    return fast_volume(np.vstack([K.vertices, placement.apply(K2.vertices)]))


@dataclass
class VolumeProfile:
    parameters: np.ndarray
    values: np.ndarray

    def to_json(self) -> dict:
        return {"parameters": self.parameters.tolist(), "values": self.values.tolist()}


def g_profile(K: VertexPolytope, K2: VertexPolytope, direction, x_values) -> VolumeProfile:
    """g(x) = vol conv(K u (K2 + x t)) sampled at ``x_values``."""
    t = np.asarray(direction, dtype=float)
    if not np.any(t):
        raise GeometryError("direction must be nonzero")
    if K.dim != K2.dim or len(t) != K.dim:
        raise GeometryError("dimension mismatch")
    xs = np.asarray(x_values, dtype=float)
    vals = np.array([fast_volume(np.vstack([K.vertices, K2.vertices + x * t])) for x in xs])
    return VolumeProfile(xs, vals)


def convexity_defect(profile: VolumeProfile) -> float:
    """max_i g(x_i) - (g(x_{i-1}) + g(x_{i+1})) / 2 on a uniform grid; <= 0 for convex g."""
    x, g = profile.parameters, profile.values
    if len(x) < 3:
        raise GeometryError("need at least 3 samples")
    steps = np.diff(x)
    if np.ptp(steps) > 1e-9 * max(abs(steps).max(), 1.0):
        raise GeometryError("convexity_defect needs a uniform grid")
    return float(np.max(g[1:-1] - (g[:-2] + g[2:]) / 2))
