"""Closed-form volumes, volume bounds and symmetricity constants.

Everything here is a scalar function evaluated in double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import asin, comb, cos, factorial, isfinite, pi, sin, sqrt, tan

import numpy as np
from scipy.optimize import brentq

# largest edge arc of a face that can occur in the concavity analysis
C_MAX = 2 * asin(sqrt(2 / 3))


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is stated."""


@dataclass(frozen=True)
class FTBounds:
    lower: float
    upper: float

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper}


def _cot(x: float) -> float:
    return 1.0 / tan(x)


def _positive(**kw) -> None:
    for name, val in kw.items():
        if not (isfinite(val) and val > 0):
            raise DomainError(f"{name} must be a positive real, got {val}")


def fejes_toth_bounds(e: int, f: int, v: int, r: float, R: float, as_printed: bool = False) -> FTBounds:
    """Lower (inradius) and upper (circumradius) volume bounds for a polyhedron.

    The lower side is (e/3) sin(pi f/e) (tan^2(pi f/2e) tan^2(pi v/2e) - 1) r^3,
    the form with equality on regular solids. ``as_printed=True`` drops the -1,
    reproducing the historical misprint (which is not a valid bound).
    """
    if v - e + f != 2:
        raise DomainError(f"(e, f, v) = ({e}, {f}, {v}) violates v - e + f = 2")
    if min(f, v) < 4 or e < 6:
        raise DomainError("a polyhedron has at least 4 faces, 4 vertices and 6 edges")
    _positive(r=r, R=R)
    a = pi * f / (2 * e)
    b = pi * v / (2 * e)
    prod = tan(a) ** 2 * tan(b) ** 2
    lower = e / 3 * sin(2 * a) * (prod if as_printed else prod - 1) * r**3
    upper = 2 * e / 3 * cos(a) ** 2 * _cot(b) * (1 - _cot(a) ** 2 * _cot(b) ** 2) * R**3
    return FTBounds(lower, upper)


def omega_n(n: int) -> float:
    return n / (n - 2) * pi / 6


def vertex_bound(v: int, R: float = 1.0) -> float:
    """Upper volume bound for a polyhedron with v vertices and circumradius R."""
    if v < 4:
        raise DomainError("vertex_bound needs v >= 4")
    _positive(R=R)
    w = omega_n(v)
    return (v - 2) / 6 * _cot(w) * (3 - _cot(w) ** 2) * R**3


def face_bound(f: int, r: float, R: float) -> FTBounds:
    """Inradius and circumradius volume bounds for a polyhedron with f faces."""
    if f < 4:
        raise DomainError("face_bound needs f >= 4")
    _positive(r=r, R=R)
    w = omega_n(f)
    lower = (f - 2) * sin(2 * w) * (3 * tan(w) ** 2 - 1) * r**3
    upper = 2 * sqrt(3) / 9 * (f - 2) * cos(w) ** 2 * (3 - _cot(w) ** 2) * R**3
    return FTBounds(lower, upper)


def _v(tau: float, c: float) -> float:
    num = cos((tau - c) / 2) - cos(tau / 2) * cos(c / 2)
    den = 1 - cos(c / 2) * cos(tau / 2)
    return sin(c) / 6 * num / den


def facial_tetra_bound(tau: float, c: float) -> float:
    """Upper bound v(tau, c) on the volume of conv(o, A, B, C).

    tau is the spherical area of ABC and c its longest edge arc; equality
    holds exactly for isosceles triangles with the two shorter edges equal.
    """
    if not (0 < tau <= c < pi / 2):
        raise DomainError(f"need 0 < tau <= c < pi/2, got tau={tau}, c={c}")
    return _v(tau, c)


def _hessian_det(tau: float, c: float, h: float = 1e-4) -> float:
    fxx = (_v(tau + h, c) - 2 * _v(tau, c) + _v(tau - h, c)) / h**2
    fyy = (_v(tau, c + h) - 2 * _v(tau, c) + _v(tau, c - h)) / h**2
    fxy = (_v(tau + h, c + h) - _v(tau + h, c - h) - _v(tau - h, c + h) + _v(tau - h, c - h)) / (
        4 * h * h
    )
    return fxx * fyy - fxy**2


def hessian_split(tau: float, samples: int = 64) -> float:
    """Approximate split curve f(tau): the first zero of det Hess v(tau, .) above tau.

    Found by a sign scan on [tau, C_MAX] followed by Brent's method, so the
    result carries the finite-difference error of the Hessian (about 1e-7).
    Returns C_MAX when the determinant keeps its sign on the whole range.
    """
    if not (0 < tau < pi / 2 + 1e-12):
        raise DomainError(f"need 0 < tau <= pi/2, got {tau}")
    if tau >= C_MAX:
        return C_MAX
    grid = np.linspace(tau + 1e-6, C_MAX, samples)
    vals = [_hessian_det(tau, c) for c in grid]
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa > 0 >= fb:
            return float(brentq(lambda c: _hessian_det(tau, c), a, b, xtol=1e-12))
    return C_MAX


def split_omega() -> float:
    """The tau with f(tau) = C_MAX, where the Hessian zero curve leaves the domain."""
    return float(brentq(lambda t: _hessian_det(t, C_MAX), 0.3, 1.0, xtol=1e-12))


def star_shaped_bound(taus, cs, f_prime: int, split=None) -> float:
    """Volume bound for a star-shaped triangular polyhedron inscribed in the unit sphere.

    Faces 1..f_prime must lie in the concave domain tau <= c <= min(f(tau), C_MAX),
    the remaining ones in f(tau) <= c <= C_MAX. The bound is f v(4 pi/f, C/f)
    with C = f' c' + (f - f') c*, c' the mean of the first f' arcs and c* the
    mean of f(tau) over the rest. ``split`` overrides the numeric f(tau).
    """
    taus = [float(t) for t in taus]
    cs = [float(c) for c in cs]
    if len(taus) != len(cs) or not taus:
        raise DomainError("taus and cs must be non-empty lists of equal length")
    f = len(taus)
    if not (0 <= f_prime <= f):
        raise DomainError(f"f_prime must lie in 0..{f}")
    split = hessian_split if split is None else split
    tol = 1e-9
    total = 0.0
    for i, (tau, c) in enumerate(zip(taus, cs)):
        if not (0 < tau <= pi / 2 + tol):
            raise DomainError(f"face {i}: need 0 < tau <= pi/2, got {tau}")
        ft = split(tau)
        if i < f_prime:
            if not (tau <= c + tol and c <= min(ft, C_MAX) + tol):
                raise DomainError(f"face {i}: need tau <= c <= min(f(tau), C_MAX)")
            total += c
        else:
            if not (0 < ft <= c + tol and c <= C_MAX + tol):
                raise DomainError(f"face {i}: need f(tau) <= c <= C_MAX")
            total += ft
    return f * _v(4 * pi / f, total / f)


def _join_factor(k: int) -> float:
    return (k + 1) ** ((k + 1) / 2) / k ** (k / 2)


def v_d_plus2(d: int) -> float:
    """Maximal volume of a d-polytope with d+2 vertices in the unit sphere."""
    if d < 3:
        raise DomainError("v_d_plus2 needs d >= 3")
    return _join_factor(d // 2) * _join_factor(d - d // 2) / factorial(d)


def balanced_split(d: int, parts: int) -> list[int]:
    q, rem = divmod(d, parts)
    return [q + 1] * rem + [q] * (parts - rem)


def v_d_plus3(d: int) -> float:
    """Volume of the orthogonal join of three balanced regular simplices.

    This is the maximum over d-polytopes with d+3 vertices for odd d; for even
    d it is the maximum over the non-cyclic ones only.
    """
    if d < 3:
        raise DomainError("v_d_plus3 needs d >= 3")
    out = 1.0 / factorial(d)
    for k in balanced_split(d, 3):
        out *= _join_factor(k)
    return out


def inner_symmetricity(n: int) -> float:
    """Largest volume fraction of an n-simplex covered by a centrally symmetric body inside it."""
    if n < 1:
        raise DomainError("inner_symmetricity needs n >= 1")
    total = sum((-1) ** nu * comb(n + 1, nu) * (n + 1 - 2 * nu) ** n for nu in range((n + 1) // 2 + 1))
    return total / (n + 1) ** n


def outer_symmetricity(n: int) -> float:
    """Ratio vol(S) / smallest centrally symmetric body containing the n-simplex S."""
    if n < 1:
        raise DomainError("outer_symmetricity needs n >= 1")
    n0 = n // 2
    return 1.0 / comb(n, n0)


def unit_ball_volume(d: int) -> float:
    if d < 0:
        raise DomainError("dimension must be non-negative")
    vol = [1.0, 2.0]
    for k in range(2, d + 1):
        vol.append(vol[k - 2] * 2 * pi / k)
    return vol[d]


def rs_lower(d: int) -> float:
    """1 + 2 v_{d-1} / v_d, attained by ellipsoids."""
    if d < 2:
        raise DomainError("rs_lower needs d >= 2")
    return 1 + 2 * unit_ball_volume(d - 1) / unit_ball_volume(d)


# name -> (callable, positional argument names), used by the command line
FORMULAS = {
    "fejes_toth": (fejes_toth_bounds, ("e", "f", "v", "r", "R")),
    "vertex": (vertex_bound, ("v", "R")),
    "face": (face_bound, ("f", "r", "R")),
    "facial_tetra": (facial_tetra_bound, ("tau", "c")),
    "v_d_plus2": (v_d_plus2, ("d",)),
    "v_d_plus3": (v_d_plus3, ("d",)),
    "inner_symmetricity": (inner_symmetricity, ("n",)),
    "outer_symmetricity": (outer_symmetricity, ("n",)),
    "rs_lower": (rs_lower, ("d",)),
    "hessian_split": (hessian_split, ("tau",)),
}

FORMULA_TEXT = {
    "fejes_toth": "(e/3) sin(pi f/e) (tan^2(pi f/2e) tan^2(pi v/2e) - 1) r^3 <= V <= "
    "(2e/3) cos^2(pi f/2e) cot(pi v/2e) (1 - cot^2(pi f/2e) cot^2(pi v/2e)) R^3",
    "vertex": "V <= (v-2)/6 cot(w_v) (3 - cot^2 w_v) R^3, w_n = n/(n-2) pi/6",
    "face": "(f-2) sin(2 w_f) (3 tan^2 w_f - 1) r^3 <= V <= 2 sqrt(3)/9 (f-2) cos^2 w_f (3 - cot^2 w_f) R^3",
    "facial_tetra": "v(tau,c) = sin(c)/6 (cos((tau-c)/2) - cos(tau/2) cos(c/2)) / (1 - cos(c/2) cos(tau/2))",
    "v_d_plus2": "(1/d!) prod_{k in {floor(d/2), ceil(d/2)}} (k+1)^((k+1)/2) / k^(k/2)",
    "v_d_plus3": "(1/d!) prod_{i=1..3} (k_i+1)^((k_i+1)/2) / k_i^(k_i/2), k_i balanced",
    "inner_symmetricity": "(n+1)^-n sum_{0<=nu<=(n+1)/2} (-1)^nu C(n+1,nu) (n+1-2nu)^n",
    "outer_symmetricity": "1 / C(n, floor(n/2))",
    "rs_lower": "1 + 2 v_{d-1} / v_d",
    "hessian_split": "first zero in c of det Hess v(tau, c) on [tau, 2 asin sqrt(2/3)]",
}
