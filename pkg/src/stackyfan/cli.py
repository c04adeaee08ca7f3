"""Command-line front end.

Exit codes: 0 success, 2 validation failure, 3 invariant violation,
4 I/O or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .cox import excluded_locus, irrelevant_ideal, is_saturated, saturation_components, saturation_ideal
from .desing import divisorial_simplicialize, partial_desingularize
from .errors import InternalInvariantViolation, StackyFanError, ValidationError
from .render import render_svg
from .stacky import gale_dual, stabilizer_invariants, stacky_star_subdivide
from .verify import VerifyConfig, run_suite

EXIT_OK, EXIT_VALIDATION, EXIT_INVARIANT, EXIT_IO = 0, 2, 3, 4


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _sets(sets) -> list[list[int]]:
    return [sorted(s) for s in sets]


def _group(inv) -> dict:
    return {"rank": inv.rank, "torsion": list(inv.torsion)}


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------


def analyze_report(doc: io.Document) -> dict:
    sf = doc.stacky_fan
    f = sf.fan
    ns = f.ns_index()
    gd = gale_dual(sf)
    S = [] if ns == 0 else sorted(sorted(c.rays) for c in f.minimal_nonsimplicial_cones())
    return {
        "name": doc.name,
        "rank": sf.lattice.rank,
        "torsion": list(sf.lattice.torsion),
        "n_rays": sf.n,
        "rays": [list(r) for r in f.rays],
        "ns": ns,
        "simplicial": ns == 0,
        "minimal_nonsimplicial_cones": S,
        "gale_dual": {
            **_group(gd.invariants),
            "weights": [list(w) for w in gd.weights],
            "beta_dual": gd.beta_dual.to_rows(),
        },
        "irrelevant_ideal": _sets(irrelevant_ideal(f).generators),
        "excluded_locus": _sets(excluded_locus(f)),
        "cones": [
            {"rays": sorted(c.rays), "dim": c.dim, "ns": c.ns, "stabilizer": _group(stabilizer_invariants(sf, c))}
            for c in f.cones
        ],
    }


def _format_analyze(rep: dict) -> str:
    lines = [
        f"name: {rep['name']}",
        f"lattice: Z^{rep['rank']}" + "".join(f" + Z/{q}" for q in rep["torsion"]),
        f"rays: {rep['n_rays']}",
        f"ns: {rep['ns']}",
        f"simplicial: {str(rep['simplicial']).lower()}",
        f"minimal non-simplicial cones: {rep['minimal_nonsimplicial_cones']}",
        f"DG(beta): rank {rep['gale_dual']['rank']}, torsion {rep['gale_dual']['torsion']}",
        f"weights: {rep['gale_dual']['weights']}",
        "irrelevant ideal B: "
        + ("<1>" if rep["irrelevant_ideal"] == [[]] else str(rep["irrelevant_ideal"])),
        f"Z_Sigma components: {rep['excluded_locus']}",
        "cones (rays, dim, ns, stabilizer rank, stabilizer torsion):",
    ]
    for c in rep["cones"]:
        lines.append(f"  {c['rays']} {c['dim']} {c['ns']} {c['stabilizer']['rank']} {c['stabilizer']['torsion']}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    doc = io.load(args.file)
    rep = analyze_report(doc)
    if args.format == "json":
        _emit(json.dumps(rep, indent=2) + "\n", None)
    else:
        _emit(_format_analyze(rep), None)
    return EXIT_OK


def cmd_desingularize(args) -> int:
    doc = io.load(args.file)
    if args.mode == "stacky":
        out, trace = partial_desingularize(doc.stacky_fan)
    else:
        out, trace = divisorial_simplicialize(doc.stacky_fan, args.ray_order)
    if not out.fan.is_simplicial():  # pragma: no cover - drivers guarantee this
        raise InternalInvariantViolation("driver output is not simplicial")
    new_doc = doc.evolve(out)
    if args.trace:
        data = {"input": doc.name, **trace.to_json()}
        Path(args.trace).write_text(json.dumps(data, indent=2) + "\n")
    _emit(io.dumps(new_doc), args.out)
    return EXIT_OK


def cmd_cox(args) -> int:
    doc = io.load(args.file)
    sf = doc.stacky_fan
    c = sf.fan.cone(args.cone)
    ideal = saturation_ideal(sf.fan, c)
    rep = {
        "cone": sorted(c.rays),
        "ideal": _sets(ideal.generators),
        "components": _sets(saturation_components(sf.fan, c)),
        "saturated": is_saturated(sf.fan, c),
        "stabilizer": _group(stabilizer_invariants(sf, c)),
    }
    if args.format == "json":
        _emit(json.dumps(rep, indent=2) + "\n", None)
    else:
        _emit(
            f"cone: {rep['cone']}\n"
            f"saturation ideal: {ideal}\n"
            f"components: {rep['components']}\n"
            f"saturated: {str(rep['saturated']).lower()}\n"
            f"stabilizer: rank {rep['stabilizer']['rank']}, torsion {rep['stabilizer']['torsion']}\n",
            None,
        )
    return EXIT_OK


def cmd_subdivide(args) -> int:
    doc = io.load(args.file)
    res = stacky_star_subdivide(doc.stacky_fan, args.cone)
    sys.stderr.write(f"new marker {list(res.new_marker)} at ray {res.new_ray_index}\n")
    _emit(io.dumps(doc.evolve(res.stacky_fan)), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    doc = io.load(args.file)
    svg = render_svg(doc.stacky_fan.fan, doc.labels(), args.plane, title=doc.name)
    Path(args.out).write_text(svg)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        doc = io.load(args.file)
    except ValidationError as exc:
        sys.stdout.write(f"FAIL load: {getattr(exc, 'kind', type(exc).__name__)}: {exc}\n")
        return EXIT_VALIDATION
    results = run_suite(doc.stacky_fan, VerifyConfig(seed=args.seed, iters=args.iters))
    for r in results:
        sys.stdout.write(r.line() + "\n")
    failed = [r for r in results if not r.ok]
    if failed:
        bad = next((r.reproducer for r in failed if r.reproducer is not None), doc.stacky_fan)
        sys.stdout.write("reproducer:\n" + io.dumps(doc.evolve(bad)))
        return EXIT_INVARIANT
    sys.stdout.write(f"all {len(results)} checks passed\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stackyfan", description="Stacky fans and their desingularization.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="ns, Gale dual, Cox data and stabilizers")
    a.add_argument("file")
    a.add_argument("--format", choices=["text", "json"], default="text")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("desingularize", help="run a simplicialization driver")
    d.add_argument("file")
    d.add_argument("--mode", choices=["stacky", "divisorial"], required=True)
    d.add_argument("--trace")
    d.add_argument("--out")
    d.add_argument("--ray-order", type=_csv_ints, default=None, help="divisorial sweep order")
    d.set_defaults(func=cmd_desingularize)

    c = sub.add_parser("cox", help="saturation ideal of a cone")
    c.add_argument("file")
    c.add_argument("--cone", type=_csv_ints, required=True)
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.set_defaults(func=cmd_cox)

    s = sub.add_parser("subdivide", help="stacky star subdivision at one cone")
    s.add_argument("file")
    s.add_argument("--cone", type=_csv_ints, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_subdivide)

    r = sub.add_parser("render", help="SVG cross-section")
    r.add_argument("file")
    r.add_argument("--plane", type=_csv_ints, default=None)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_render)

    v = sub.add_parser("verify", help="run the invariant suite")
    v.add_argument("file")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--iters", type=int, default=10)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.DocumentError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO
    except ValidationError as exc:
        sys.stderr.write(f"validation failed: {getattr(exc, 'kind', '')}: {exc}\n")
        return EXIT_VALIDATION
    except InternalInvariantViolation as exc:
        sys.stderr.write(f"invariant violated: {exc}\n")
        return EXIT_INVARIANT
    except StackyFanError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_VALIDATION
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
