"""Named polytopes inscribed in the unit sphere."""

from __future__ import annotations

import numpy as np

from .geom_kernel import GeometryError, VertexPolytope, normalize_rows

# Output of local_optimize on 8 random points (seed 8, best of 10 restarts),
# polished to a stationarity residual of 2e-15. Medial: valences 4x4, 5x4.
_MAX8 = [
    [-0.42575321079844264, -0.3038743661379181, -0.8522878463870615],
    [-0.009360292903722658, -0.36891673327791497, 0.929415315574425],
    [0.1959506501081529, -0.9663873445041729, -0.16642969417854983],
    [0.9308623039164915, -0.07962023616527017, 0.35658938450305566],
    [0.6648357881897689, 0.3128513909435616, -0.6783195278972644],
    [-0.49574880021432627, 0.7524113355811031, -0.43371685369041935],
    [-0.9374534426931663, -0.18015597074228257, 0.29786720025648417],
    [0.0766670043952442, 0.8336919243028936, 0.5468820218193299],
]

_REMARK_P3 = [
    [1.0, 0.0, 0.0],
    [-2 / 3, -2 / 3, 1 / 3],
    [0.0, 1.0, 0.0],
    [1 / 3, -2 / 3, -2 / 3],
    [0.0, 0.0, 1.0],
    [-2 / 3, 1 / 3, -2 / 3],
]

NAMES = ("cube", "icosahedron", "max8", "remark_P3")


def _simplex_coords(k: int) -> np.ndarray:
    """k+1 unit vectors in R^k with pairwise inner product -1/k."""
    if k == 1:
        return np.array([[1.0], [-1.0]])
    centered = np.eye(k + 1) - 1.0 / (k + 1)
    # orthonormal basis of the hyperplane sum(x) = 0
    q, _ = np.linalg.qr(centered[:, :k])
    coords = centered @ q
    return normalize_rows(coords)


def regular_simplex(d: int) -> VertexPolytope:
    if d < 2:
        raise GeometryError("regular_simplex needs d >= 2")
    return VertexPolytope(_simplex_coords(d))


def cross_polytope(d: int) -> VertexPolytope:
    if d < 2:
        raise GeometryError("cross_polytope needs d >= 2")
    eye = np.eye(d)
    return VertexPolytope(np.vstack([eye, -eye]))


def double_pyramid(n: int) -> VertexPolytope:
    """Poles +-e3 over a regular (n-2)-gon on the equator."""
    if n < 5:
        raise GeometryError("a double n-pyramid needs n >= 5")
    k = n - 2
    t = 2 * np.pi * np.arange(k) / k
    ring = np.column_stack([np.cos(t), np.sin(t), np.zeros(k)])
    poles = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    return VertexPolytope(np.vstack([poles, ring]))


def cyclic_polytope(d: int, n: int) -> VertexPolytope:
    """Trigonometric moment curve sqrt(2/d) (cos 2 pi k i/n, sin 2 pi k i/n)_{k=1..d/2}.

    Vertex i sits at angle 2 pi i k / n on the k-th coordinate circle, so the
    dihedral group D_n acts by index shifts and reversal.
    """
    if d % 2 or d < 4:
        raise GeometryError("cyclic_polytope needs an even d >= 4")
    if n < d + 3:
        raise GeometryError("cyclic_polytope needs n >= d + 3")
    i = np.arange(n)[:, None]
    freqs = np.arange(1, d // 2 + 1)[None, :]
    ang = 2 * np.pi * i * freqs / n
    coords = np.empty((n, d))
    coords[:, 0::2] = np.cos(ang)
    coords[:, 1::2] = np.sin(ang)
    return VertexPolytope(np.sqrt(2.0 / d) * coords)


def orthogonal_join(dims) -> VertexPolytope:
    """Hull of regular k_i-simplices inscribed in S^{d-1}, in orthogonal coordinate blocks."""
    dims = [int(k) for k in dims]
    if not dims or any(k < 1 for k in dims):
        raise GeometryError("orthogonal_join needs positive block dimensions")
    d = sum(dims)
    if d < 2:
        raise GeometryError("orthogonal_join needs total dimension >= 2")
    blocks = []
    start = 0
    for k in dims:
        part = np.zeros((k + 1, d))
        part[:, start : start + k] = _simplex_coords(k)
        blocks.append(part)
        start += k
    return VertexPolytope(np.vstack(blocks))


def icosahedron() -> VertexPolytope:
    phi = (1 + np.sqrt(5)) / 2
    pts = []
    for a in (1.0, -1.0):
        for b in (phi, -phi):
            pts += [[0.0, a, b], [a, b, 0.0], [b, 0.0, a]]
    return VertexPolytope(normalize_rows(np.array(pts)))


def cube() -> VertexPolytope:
    pts = np.array([[x, y, z] for x in (1, -1) for y in (1, -1) for z in (1, -1)], float)
    return VertexPolytope(pts / np.sqrt(3))


def named_polytope(name: str) -> VertexPolytope:
    if name == "cube":
        return cube()
    if name == "icosahedron":
        return icosahedron()
    if name == "max8":
        return VertexPolytope(np.array(_MAX8))
    if name == "remark_P3":
        return VertexPolytope(np.array(_REMARK_P3))
    raise GeometryError(f"unknown polytope name {name!r}; expected one of {NAMES}")
