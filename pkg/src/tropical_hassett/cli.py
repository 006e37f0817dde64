"""Command-line interface.

Exit status: 0 success, 1 a requested check failed, 2 bad input or
parameters outside a check's scope, 3 a capacity limit was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import complex as cx
from . import graphs as gr
from .errors import CapacityError, DomainError, InputError
from .io import format_weights, graph_to_dot, graph_to_json, parse_weights, weights_to_json
from .permgroup import cycle_string
from .verify import CHECKS, induced_map_report, run_check
from .weights import admissible_transpositions, aut_kw, aut_mbar, classify_heavy_light, kw_facets

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", type=int, help="genus")
    common.add_argument("--weights", help='weight vector, e.g. "1/3^3,7/12^3"')
    common.add_argument("--cap-simplices", type=int,
                        default=_env_int("TROPICAL_HASSETT_CAP_SIMPLICES", cx.DEFAULT_SIMPLEX_CAP))
    common.add_argument("--cap-group", type=int, default=_env_int("TROPICAL_HASSETT_CAP_GROUP", 10**6))
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="tropical-hassett", description="Stable graph complexes and their symmetries.")
    sub = p.add_subparsers(dest="verb", required=True)
    sub.add_parser("enumerate", parents=[common], help="list stable graphs by edge count")
    sub.add_parser("kw", parents=[common], help="facets and symmetries of the weight complex")
    sub.add_parser("aut-delta", parents=[common], help="automorphism group of the graph complex")
    v = sub.add_parser("verify", parents=[common], help="run named checks")
    v.add_argument("names", nargs="*", metavar="NAME", help=", ".join(CHECKS))
    v.add_argument("--check", action="append", default=[], metavar="NAME")
    v.add_argument("--k", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--eps")
    v.add_argument("--blocks", help="comma-separated block sizes")
    sub.add_parser("export", parents=[common], help="write the complex as JSON or DOT")
    return p


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InputError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _fmt_set(S) -> str:
    return "{" + ",".join(map(str, sorted(S))) + "}"


def cmd_enumerate(args) -> int:
    _need(args, "g", "weights")
    w = parse_weights(args.weights)
    levels = gr.enumerate_stable_graphs(args.g, w, cap=args.cap_simplices)
    if args.format == "json":
        _emit(args, json.dumps({
            "g": args.g, "weights": weights_to_json(w),
            "graphs": {str(k): [graph_to_json(G) for G in L] for k, L in levels.items()},
        }, indent=1))
    elif args.format == "dot":
        _emit(args, "".join(graph_to_dot(G, f"G{k}_{i}") for k, L in levels.items() for i, G in enumerate(L)))
    else:
        lines = [f"g={args.g} w=({format_weights(w)}): {sum(map(len, levels.values()))} classes"]
        for k, L in levels.items():
            lines.append(f"{k} edge(s): {len(L)}")
            lines.extend("  " + cx.graph_caption(G) + f"  edges={list(G.edges)}" for G in L)
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_kw(args) -> int:
    _need(args, "weights")
    w = parse_weights(args.weights)
    K = aut_kw(w)
    hl = classify_heavy_light(w)
    adm = admissible_transpositions(w) if w.n >= 2 else []
    data = {
        "weights": weights_to_json(w),
        "facets": [sorted(F) for F in kw_facets(w)],
        "aut_kw_generators": [cycle_string(g) for g in K.generators],
        "aut_kw_order": K.order(),
        "orbit_blocks": [[k + 1 for k in o] for o in K.orbits() if len(o) > 1],
        "admissible_transpositions": [list(t) for t in adm],
        "aut_mbar_order": aut_mbar(w).order() if w.n >= 2 else 1,
        "heavy": sorted(hl.heavy), "light": sorted(hl.light), "neither": sorted(hl.neither),
        "is_heavy_light": hl.is_heavy_light,
    }
    if args.format == "json":
        _emit(args, json.dumps(data, indent=1))
    else:
        _emit(args, "\n".join([
            f"w = ({format_weights(w)})",
            "facets: " + " ".join(_fmt_set(F) for F in kw_facets(w)),
            "Aut(K_w) generators: " + (" ".join(data["aut_kw_generators"]) or "none"),
            f"Aut(K_w) order: {K.order()}",
            "orbit blocks: " + (" ".join(_fmt_set(b) for b in data["orbit_blocks"]) or "none"),
            "admissible transpositions: " + (" ".join(f"({i} {j})" for i, j in adm) or "none"),
            f"admissible group order: {data['aut_mbar_order']}",
            f"heavy: {_fmt_set(hl.heavy)} light: {_fmt_set(hl.light)} neither: {_fmt_set(hl.neither)}"
            f" heavy/light: {hl.is_heavy_light}",
        ]))
    return EXIT_OK


def _build(args):
    _need(args, "g", "weights")
    return cx.build_delta(args.g, parse_weights(args.weights), cap=args.cap_simplices)


def cmd_aut_delta(args) -> int:
    X = _build(args)
    A = cx.aut_complex(X, cap=args.cap_simplices)
    try:
        bijective, wit = induced_map_report(X, args.cap_group)
    except CapacityError:
        bijective, wit = None, {}
    data = {
        "sizes": X.sizes(),
        "order": A.order_string(),
        "generators_dim0": [list(g.maps[0]) for g in A.generators],
        "aut_kw_order": aut_kw(X.w).order(),
        "induced_map_bijective": bijective,
    }
    if "non_injective" in wit:
        data["non_injective"] = wit["non_injective"]
    if args.format == "json":
        _emit(args, json.dumps(data, indent=1))
    else:
        gens = [cycle_string(g.maps[0], offset=0) for g in A.generators]
        _emit(args, "\n".join([
            f"sizes: {X.sizes()}",
            f"|Aut(Delta)| = {data['order']}",
            f"|Aut(K_w)| = {data['aut_kw_order']}",
            "generators on vertices: " + (" ".join(gens) or "none"),
            "induced map from Aut(K_w) bijective: "
            + ("unknown (group cap)" if bijective is None else str(bijective)),
        ]))
    return EXIT_OK


def _check_params(name: str, args) -> dict:
    if name in ("main-theorem", "excluded-case", "reconstruction", "filtration", "structure"):
        _need(args, "g", "weights")
        return {"g": args.g, "w": parse_weights(args.weights)}
    if name in ("heavy-light", "expansion-formula"):
        _need(args, "m", "n", "eps")
        try:
            eps = Fraction(args.eps)
        except ValueError:
            raise InputError(f"bad --eps {args.eps!r}") from None
        return {"m": args.m, "n": args.n, "eps": eps}
    if name == "disjoint-vertices":
        _need(args, "k")
        return {"k": args.k}
    if name == "realize-product":
        _need(args, "blocks")
        try:
            return {"block_sizes": [int(b) for b in args.blocks.split(",")]}
        except ValueError:
            raise InputError(f"bad --blocks {args.blocks!r}") from None
    return {}


def cmd_verify(args) -> int:
    names = list(args.names) + list(args.check)
    if not names:
        raise InputError("name at least one check: " + ", ".join(CHECKS))
    for name in names:
        if name not in CHECKS:
            raise InputError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    reports = [run_check(name, **_check_params(name, args)) for name in names]
    if args.format == "json":
        _emit(args, json.dumps([r.to_json() for r in reports], indent=1))
    else:
        lines = []
        for r in reports:
            lines.append(r.summary())
            lines.extend(f"  {k}: {json.dumps(v)}" for k, v in r.to_json()["witnesses"].items())
        _emit(args, "\n".join(lines))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_export(args) -> int:
    X = _build(args)
    if args.format == "dot":
        _emit(args, cx.complex_to_dot(X))
    else:
        _emit(args, cx.complex_to_json_string(X))
    return EXIT_OK


COMMANDS = {"enumerate": cmd_enumerate, "kw": cmd_kw, "aut-delta": cmd_aut_delta, "verify": cmd_verify,
            "export": cmd_export}


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.verb](args)
    except (InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity limit: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
