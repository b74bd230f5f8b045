"""``tamcalc`` command line: exit 0 on success or PASS, 1 on a verified FAIL, 2 on bad input."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .barcode import to_json
from .config import Config, load_config
from .fileio import InputError, load_barcode, load_geometry, load_graph, load_grid_rep, load_model
from .scalar import set_scale

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _write(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_decompose(args, cfg: Config) -> int:
    from .oracle.grid import gabriel_decompose

    rep, degree = load_grid_rep(args.rep)
    _write(to_json(gabriel_decompose(rep, degree)), args.out)
    return EXIT_OK


def cmd_homstar(args, cfg: Config) -> int:
    from .homstar import hom_star

    res = hom_star(load_barcode(args.F), load_barcode(args.G))
    text = to_json(res.barcode)
    if args.audit:
        text += "\n" + res.audit_table() + "\n"
    _write(text, args.out)
    return EXIT_OK


def cmd_v(args, cfg: Config) -> int:
    from .homstar import v

    print(v(load_barcode(args.F), load_barcode(args.G)))
    return EXIT_OK


def cmd_persist(args, cfg: Config) -> int:
    from .persistence import persistent_homology, lower_star

    model = load_graph(args.model)
    B = persistent_homology(lower_star(model.complex, model.values), args.prime or cfg.prime)
    _write(to_json(B), args.out)
    return EXIT_OK


def cmd_chords(args, cfg: Config) -> int:
    from .lagrangian import NotImmersed, reeb_chords

    model = load_model(args.curve)
    try:
        chords = reeb_chords(model, args.tol or cfg.chord_tol)
    except NotImmersed as exc:
        raise InputError(f"{args.curve}: {exc}") from None
    out = {"chords": [{"s1": c.s1, "s2": c.s2, "length": c.length} for c in chords.chords],
           "l_max": chords.l_max}
    _write(json.dumps(out, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_check_bound(args, cfg: Config) -> int:
    from .bounds import BoundRefused, verify_conjecture

    model = load_model(args.model)
    geometry = load_geometry(args.geometry)
    try:
        rep = verify_conjecture(model, geometry, cfg.prime)
    except BoundRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _write(rep.to_markdown(), args.report)
    if args.report is not None:
        print(f"{rep.verdict}: report written to {args.report}")
    return EXIT_FAIL if rep.verdict == "FAIL" else EXIT_OK


def cmd_oracle_verify(args, cfg: Config) -> int:
    from .oracle.suites import SUITES

    names = list(SUITES) if args.suite == "all" else [args.suite]
    cases = args.cases or cfg.oracle_cases
    seed = cfg.seed
    ok = True
    for name in names:
        res = SUITES[name](cases, seed, args.prime or cfg.prime)
        print(res.summary())
        for f in res.failures[:3]:
            print(json.dumps(f, indent=2))
        ok = ok and res.ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render_svg(args, cfg: Config) -> int:
    from .render import render_svg

    _write(render_svg(load_barcode(args.barcode)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tamcalc", description=__doc__)
    ap.add_argument("--version", action="version", version=f"tamcalc {__version__}")
    ap.add_argument("--config", help="key = value configuration file")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="barcode of a grid representation")
    p.add_argument("rep")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("homstar", help="closed-form hom* of two barcodes")
    p.add_argument("F")
    p.add_argument("G")
    p.add_argument("--audit", action="store_true", help="append the per-pair table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_homstar)

    p = sub.add_parser("v", help="boundary depth of hom*(F, G) tensored with the ray")
    p.add_argument("F")
    p.add_argument("G")
    p.set_defaults(func=cmd_v)

    p = sub.add_parser("persist", help="sublevel persistence of a vertex function")
    p.add_argument("model")
    p.add_argument("--prime", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_persist)

    p = sub.add_parser("chords", help="Reeb chords of a sampled curve")
    p.add_argument("curve")
    p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_chords)

    p = sub.add_parser("check-bound", help="gamma <= v(B,B) <= bound for a model")
    p.add_argument("--model", required=True)
    p.add_argument("--geometry", required=True, help="u1, su2, t2, s2 or a JSON file")
    p.add_argument("--report")
    p.set_defaults(func=cmd_check_bound)

    p = sub.add_parser("oracle-verify", help="run seeded oracle comparison suites")
    p.add_argument("--suite", default="all", choices=["all", "homstar", "tau", "cone",
                                                      "vcone", "equivariant"])
    p.add_argument("--cases", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--prime", type=int)
    p.set_defaults(func=cmd_oracle_verify)

    p = sub.add_parser("render-svg", help="draw a barcode")
    p.add_argument("barcode")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render_svg)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        env = dict(os.environ)
        if getattr(args, "seed", None) is not None:
            env["TAMCALC_SEED"] = str(args.seed)
        # only randomized runs must name their seed
        defaults = {} if args.command == "oracle-verify" else {"seed": 0}
        cfg = load_config(args.config, env, defaults)
        set_scale(cfg.scale)
        return args.func(args, cfg)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
