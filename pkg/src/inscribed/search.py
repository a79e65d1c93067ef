"""Seeded multi-restart search for maximal-volume inscribed polytopes."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .geom_kernel import GeometryError, VertexPolytope, convex_hull, sample_sphere
from .property_z import DEFAULT_TOL, local_optimize, valence_string, z_residual

# n -> (volume, facets, valence multiset) from the published table of computer search results
TABLE1 = {
    4: (0.51320010, 4, {3: 4}),
    5: (0.86602375, 6, {3: 2, 4: 3}),
    6: (1.33333036, 8, {4: 6}),
    7: (1.58508910, 10, {4: 5, 5: 2}),
    8: (1.81571182, 12, {4: 4, 5: 4}),
    9: (2.04374046, 14, {4: 3, 5: 6}),
    10: (2.21872888, 16, {4: 2, 5: 8}),
    11: (2.35462915, 18, {4: 2, 5: 8, 6: 1}),
    12: (2.53614471, 20, {5: 12}),
    30: (3.45322727, 56, {5: 12, 6: 18}),
}

CSV_COLUMNS = ("n", "volume", "ref_volume", "abs_dev", "facets", "valences", "restarts", "seed")


def default_restarts(d: int, n: int) -> int:
    return 50 if d == 3 and n <= 12 else 200


def worker_count() -> int:
    """Workers allowed by INSCRIBED_THREADS (0 or unset means one per CPU)."""
    raw = os.environ.get("INSCRIBED_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        k = 0
    if k <= 0:
        k = os.cpu_count() or 1
    return k


@dataclass
class SearchReport:
    d: int
    n: int
    best_volume: float
    best_polytope: VertexPolytope | None
    valences: dict
    restarts: int
    seed: int
    volumes: list = field(default_factory=list)
    residual: float = float("nan")
    facets: int = 0
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "best_volume": self.best_volume,
            "best_polytope": None if self.best_polytope is None else self.best_polytope.to_json(),
            "valences": {str(k): v for k, v in self.valences.items()},
            "facets": self.facets,
            "residual": self.residual,
            "restarts": self.restarts,
            "seed": self.seed,
            "volumes": self.volumes,
            "failures": self.failures,
        }


def _restart(args) -> tuple[float, np.ndarray | None, str | None]:
    d, n, seed, r, tol = args
    # counter-based stream: restart r depends only on (seed, r)
    rng = np.random.default_rng([seed, r])
    try:
        P, report = local_optimize(VertexPolytope(sample_sphere(n, d, rng)), tol=tol)
    except GeometryError as exc:
        return float("nan"), None, str(exc)
    return report.volume, P.vertices.copy(), None


def _better(vol, pts, best_vol, best_pts) -> bool:
    if best_pts is None or vol > best_vol:
        return True
    if vol < best_vol:
        return False
    key = sorted(map(tuple, pts.tolist()))
    return key < sorted(map(tuple, best_pts.tolist()))


def global_search(d: int, n: int, restarts: int | None = None, seed: int = 0,
                  tol: float = DEFAULT_TOL, workers: int | None = None) -> SearchReport:
    """Best of ``restarts`` local optimizations from uniform random starts on S^{d-1}.

    Ties in volume go to the lexicographically smallest sorted vertex list, so
    the result does not depend on the order in which restarts finish.
    """
    if n < d + 1:
        raise GeometryError(f"n = {n} vertices cannot span dimension {d}")
    restarts = default_restarts(d, n) if restarts is None else restarts
    if restarts < 1:
        raise GeometryError("restarts must be at least 1")
    jobs = [(d, n, seed, r, tol) for r in range(restarts)]
    workers = min(worker_count() if workers is None else workers, restarts)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_restart, jobs, chunksize=max(1, restarts // (4 * workers))))
    else:
        results = [_restart(job) for job in jobs]

    best_vol, best_pts = -np.inf, None
    failures = []
    for r, (vol, pts, err) in enumerate(results):
        if err is not None:
            failures.append({"restart": r, "error": err})
            continue
        if _better(vol, pts, best_vol, best_pts):
            best_vol, best_pts = vol, pts
    volumes = [float(v) for v, _, _ in results]
    if best_pts is None:
        return SearchReport(d, n, float("nan"), None, {}, restarts, seed, volumes, failures=failures)
    best = VertexPolytope(best_pts)
    cplx = convex_hull(best.vertices)
    residual = z_residual(best).max_residual
    valences = dict(sorted(zip(*np.unique(cplx.valences(), return_counts=True))))
    valences = {int(k): int(v) for k, v in valences.items()}
    return SearchReport(
        d, n, float(best_vol), best, valences, restarts, seed, volumes,
        residual=float(residual), facets=len(cplx.facets), failures=failures,
    )


def table1_report(n_min: int = 4, n_max: int = 12, restarts: int = 50, seed: int = 1,
                  workers: int | None = None) -> list[dict]:
    """One row per n in [n_min, n_max] comparing the search against the reference table."""
    if not 4 <= n_min <= n_max:
        raise GeometryError("need 4 <= n_min <= n_max")
    rows = []
    for n in range(n_min, n_max + 1):
        rep = global_search(3, n, restarts, seed, workers=workers)
        ref = TABLE1.get(n)
        ref_vol = ref[0] if ref else float("nan")
        rows.append({
            "n": n,
            "volume": rep.best_volume,
            "ref_volume": ref_vol,
            "abs_dev": abs(rep.best_volume - ref_vol),
            "facets": rep.facets,
            "valences": valence_string(rep.valences),
            "restarts": restarts,
            "seed": seed,
        })
    return rows


def distance_pattern(P: VertexPolytope, tol: float = 1e-9) -> dict:
    """Check whether |p_{i+k} - p_i| depends only on k (indices taken cyclically)."""
    pts = P.vertices
    n = len(pts)
    profile = []
    for k in range(1, n // 2 + 1):
        dist = np.linalg.norm(np.roll(pts, -k, axis=0) - pts, axis=1)
        profile.append({"k": k, "mean": float(dist.mean()), "deviation": float(np.abs(dist - dist.mean()).max())})
    return {
        "is_k_invariant": all(p["deviation"] < tol for p in profile),
        "profile": profile,
    }
