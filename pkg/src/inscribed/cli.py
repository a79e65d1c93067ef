"""Command-line entry point: inscribed <subcommand> [options].

Polytopes travel as JSON {"dim": d, "vertices": [[...], ...]}; commands that
take a polytope read it from a file argument or from stdin. Results are JSON
(CSV for table1) on stdout or in --out. Exit codes: 0 success, 2 usage error
or malformed input, 1 numeric failure (error JSON on stderr).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import closed_forms, constructions, gale, property_z, search
from .closed_forms import DomainError
from .geom_kernel import GeometryError, VertexPolytope, polytope_volume
from .two_bodies import bodies, constants, placements, simplices


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(payload, out: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, default=_jsonable, indent=2)
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_polytope(source: str | None) -> VertexPolytope:
    try:
        text = sys.stdin.read() if source in (None, "-") else Path(source).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed polytope JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise UsageError("malformed polytope JSON: expected an object with dim and vertices")
    if "best_polytope" in payload:
        payload = payload["best_polytope"]
    elif "polytope" in payload:
        payload = payload["polytope"]
    try:
        return VertexPolytope.from_json(payload)
    except (GeometryError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed polytope JSON: {exc}") from exc


def _body(source: str | None) -> VertexPolytope:
    if source in bodies.BODIES:
        return bodies.BODIES[source]()
    return _read_polytope(source)


def parse_range(text: str) -> tuple[int, int]:
    """'4..12' -> (4, 12); '7' -> (7, 7)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from exc


# ------------------------------------------------------------------ commands


def cmd_construct(args) -> dict:
    name = args.name
    if name in ("simplex", "tetrahedron"):
        P = constructions.regular_simplex(args.d or 3)
    elif name in ("cross", "octahedron"):
        P = constructions.cross_polytope(args.d or 3)
    elif name == "double_pyramid":
        P = constructions.double_pyramid(args.n or 5)
    elif name == "cyclic":
        P = constructions.cyclic_polytope(args.d or 4, args.n or 7)
    elif name == "join":
        P = constructions.orthogonal_join(args.dims or [2, 2])
    else:
        P = constructions.named_polytope(name)
    return P.to_json()


def cmd_volume(args) -> dict:
    P = _read_polytope(args.file)
    return {"volume": polytope_volume(P), "dim": P.dim, "n": P.n}


def cmd_zcheck(args) -> dict:
    P = _read_polytope(args.file)
    rep = property_z.z_residual(P)
    out = rep.to_json()
    out["stationary"] = rep.max_residual < args.tol
    if P.dim == 3:
        out["medial"] = property_z.medial_check(P)
    return out


def cmd_optimize(args) -> dict:
    P = _read_polytope(args.file)
    best, rep = property_z.local_optimize(P, max_iter=args.max_iter, tol=args.tol)
    return {"polytope": best.to_json(), "report": rep.to_json()}


def cmd_search(args) -> dict:
    rep = search.global_search(args.dim, args.n, args.restarts, args.seed, tol=args.tol)
    return rep.to_json()


def cmd_table1(args) -> str:
    lo, hi = args.n
    rows = search.table1_report(lo, hi, args.restarts, args.seed)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=search.CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.10f}" if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def cmd_gale(args) -> dict:
    P = _read_polytope(args.file)
    D = gale.gale_transform(P)
    return {"diagram": D.to_json(), "predicates": gale.gale_predicates(D)}


def _parse_formula_args(pairs: list[str]) -> dict:
    """['--d', '3'] or ['d=3'] -> {'d': 3}."""
    out = {}
    k = 0
    while k < len(pairs):
        item = pairs[k]
        if "=" in item:
            key, val = item.lstrip("-").split("=", 1)
            k += 1
        elif item.startswith("--") and k + 1 < len(pairs):
            key, val = item[2:], pairs[k + 1]
            k += 2
        else:
            raise UsageError(f"cannot parse formula argument {item!r}")
        num = float(val)
        out[key] = int(num) if num.is_integer() and "." not in val and "e" not in val.lower() else num
    return out


def cmd_bounds(args) -> dict:
    name = args.formula
    if name not in closed_forms.FORMULAS:
        raise UsageError(f"unknown formula {name!r}; expected one of {sorted(closed_forms.FORMULAS)}")
    fn, names = closed_forms.FORMULAS[name]
    given = _parse_formula_args((args.args or []) + args.extra)
    if name == "vertex":
        given.setdefault("R", 1.0)
    missing = [k for k in names if k not in given]
    if missing:
        raise UsageError(f"formula {name} needs arguments {list(names)}; missing {missing}")
    value = fn(*[given[k] for k in names])
    return {"value": value, "formula": name, "arguments": given, "paper_eq": closed_forms.FORMULA_TEXT[name]}


TWOBODY_OPS = ("c_tr", "c0", "c1", "chyp", "cco", "rstar", "tstar", "cylinder", "simplex-reflect",
               "common-center", "gprofile", "constant-volume")


def cmd_twobody(args) -> dict:
    op = args.op
    cfg = {"seed": args.seed}
    if op == "common-center":
        res = simplices.common_center_search(args.kind, {"seed": args.seed, "restarts": args.restarts})
        out = {k: v for k, v in res.items() if k != "points"}
        out["points"] = res["points"]
        if args.kind == "two_tetrahedra":
            out["cube_deviation"] = simplices.cube_deviation(res["points"])
        else:
            out.update(simplices.triangle_witness(res["points"]))
        return out
    K = _body(args.input)
    families = {"c_tr": "translations", "c0": "point_reflections", "chyp": "hyperplane_reflections",
                "cco": "congruences"}
    if op in families:
        return constants.c_quantity(K, families[op], cfg).to_json()
    if op == "c1":
        return constants.c_quantity(K, "flat_reflections", cfg, flat_dim=args.flat_dim).to_json()
    if op == "rstar":
        return {"R_star": constants.reflection_body_ratio(K, "R_star")}
    if op == "tstar":
        return {"T_star": constants.reflection_body_ratio(K, "T_star")}
    if op == "cylinder":
        if args.direction:
            return {"ratio": constants.cylinder_ratio(K, args.direction)}
        val, u = constants.max_cylinder_ratio(K, cfg)
        return {"max_ratio": val, "direction": u}
    if op == "constant-volume":
        vals = constants.touching_volumes(K, args.samples)
        return {"constant": constants.constant_volume_predicate(K, args.samples, args.tol_body),
                "relative_spread": float(np.ptp(vals) / vals.mean())}
    if op == "simplex-reflect":
        u = args.direction if args.direction else simplices.optimal_reflection_normal(K)
        return simplices.simplex_reflection(K, u)
    if op == "gprofile":
        K2 = _body(args.input2) if args.input2 else K
        t = np.asarray(args.direction or [1.0] + [0.0] * (K.dim - 1))
        xs = np.linspace(args.x_min, args.x_max, args.samples)
        prof = placements.g_profile(K, K2, t, xs)
        return {"profile": prof.to_json(), "convexity_defect": placements.convexity_defect(prof)}
    raise UsageError(f"unknown op {op!r}")


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="tolerance (default 1e-10)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="inscribed", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--out", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="emit a named polytope")
    p.add_argument("name", choices=["simplex", "tetrahedron", "cross", "octahedron", "double_pyramid", "cyclic",
                                    "join", *constructions.NAMES])
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--dims", type=int, nargs="+")
    p.set_defaults(func=cmd_construct)

    for name, func, text in [("volume", cmd_volume, "volume of a polytope"),
                             ("zcheck", cmd_zcheck, "stationarity residuals"),
                             ("gale", cmd_gale, "Gale diagram and predicates")]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", nargs="?", help="polytope JSON (default stdin)")
        p.set_defaults(func=func)

    p = sub.add_parser("optimize", parents=[common], help="local volume maximization")
    p.add_argument("file", nargs="?")
    p.add_argument("--max-iter", type=int, default=property_z.DEFAULT_MAX_ITER)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("search", parents=[common], help="multi-restart global search")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restarts", type=int, default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("table1", parents=[common], help="reproduce the table of maximal volumes (CSV)")
    p.add_argument("--n", type=parse_range, default=(4, 12), help="range such as 4..12")
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--csv", default=None, help="CSV output path (same as --out)")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("bounds", parents=[common], help="evaluate a closed-form bound")
    p.add_argument("--formula", required=True)
    p.add_argument("--args", nargs="*", help="key=value pairs")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("twobody", parents=[common], help="hull volumes of two bodies")
    p.add_argument("--op", required=True, choices=TWOBODY_OPS)
    p.add_argument("--in", dest="input", help=f"polytope JSON or a body name {sorted(bodies.BODIES)}")
    p.add_argument("--in2", dest="input2")
    p.add_argument("--kind", default="two_tetrahedra", choices=["two_tetrahedra", "two_triangles"])
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--flat-dim", type=int, default=1)
    p.add_argument("--direction", type=float, nargs="+")
    p.add_argument("--x-min", type=float, default=-2.0)
    p.add_argument("--x-max", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--tol-body", type=float, default=1e-3, help="relative spread for constant-volume")
    p.set_defaults(func=cmd_twobody)
    return parser


def _seed_in_range(seed: int) -> None:
    if seed < 0:
        raise UsageError("--seed must be non-negative")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and args.command != "bounds":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    args.extra = extra
    try:
        _seed_in_range(args.seed)
        result = args.func(args)
        out = args.out
        if args.command == "table1" and args.csv:
            out = args.csv
        _emit(result, out)
    except UsageError as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "kind": "usage"}) + "\n")
        return 2
    except (GeometryError, DomainError, np.linalg.LinAlgError, FloatingPointError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "kind": type(exc).__name__}) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
