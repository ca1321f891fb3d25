"""Command-line front end: ``holoforms verify | decompose | cone``.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error.  The
default output format is ``text``; the ``HOLOFORMS_FORMAT`` environment
variable may set it to ``json``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import cone, structures, suites
from .exterior import norm_sq, wedge
from .parsing import AxisRangeError, FormSyntaxError, detect_base, format_form, parse_form
from .scalars import format_scalar

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("text", "json")

_DIMS = {"g2": 7, "spin7": 8, "cy3": 6}
_STRUCTURE_TEXT = {
    "g2": "phi = e012 + e034 + e056 + e135 - e146 - e236 - e245",
    "spin7": "Omega = dt^phi + *phi, with phi on e0..e6 and dt = e7",
    "cy3": "omega = e01 + e23 + e45, dz_j = e_2j + i e_2j+1",
}


class UsageError(Exception):
    pass


def _default_format() -> str:
    fmt = os.environ.get("HOLOFORMS_FORMAT", "text").strip().lower()
    return fmt if fmt in FORMATS else "text"


def _axes(value: str) -> str:
    if value not in ("0", "1", "auto"):
        raise argparse.ArgumentTypeError("axes must be 0, 1 or auto")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holoforms", description="Exact checks for special-holonomy forms.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a named suite")
    v.add_argument("suite", help="suite name, or 'list' to print the names")
    v.add_argument("--seed", type=int, default=suites.DEFAULT_SEED)
    v.add_argument("--samples", type=int, default=suites.DEFAULT_SAMPLES)
    v.add_argument("--format", choices=FORMATS, default=None)
    v.add_argument("--axes", type=_axes, default="auto",
                   help="accepted for symmetry with decompose; reports name no axis labels")
    v.add_argument("--timing", action="store_true", help="record wall-clock time in elapsed_ms")
    v.add_argument("--output", help="also write the report to this file")

    d = sub.add_parser("decompose", help="split a 2-form under a structure")
    d.add_argument("expr")
    d.add_argument("--structure", required=True, choices=sorted(_DIMS))
    d.add_argument("--axes", type=_axes, default="auto")
    d.add_argument("--format", choices=FORMATS, default=None)

    c = sub.add_parser("cone", help="inspect a cone or cylinder preset")
    c.add_argument("preset", choices=cone.PRESET_NAMES)
    c.add_argument("--solve", metavar="TARGET", help="find a potential beta with d(beta) = TARGET")
    c.add_argument("--ansatz", action="append", metavar="SHAPE",
                   help="ansatz shape, optionally 'SHAPE@lo:hi' for r^lo..r^hi (repeatable)")
    c.add_argument("--classify", metavar="ELEMENT", help="classify the growth of an element")
    c.add_argument("--format", choices=FORMATS, default=None)
    return p


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    if args.suite == "list":
        print("\n".join(suites.suite_names()))
        return EXIT_OK
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    cfg = suites.SuiteConfig(seed=args.seed, samples=args.samples, timing=args.timing)
    try:
        rep = suites.run_suite(args.suite, cfg)
    except suites.UnknownSuite as exc:
        raise UsageError(exc.args[0]) from None
    text = rep.to_json() if args.format == "json" else rep.to_text()
    sys.stdout.write(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK if rep.ok else EXIT_FAIL


# ---------------------------------------------------------------- decompose


def decompose(expr: str, structure: str, axes: str = "auto") -> dict:
    """Components, squared norms and eigen-identity residuals of a 2-form."""
    n = _DIMS[structure]
    base = detect_base(expr, n) if axes == "auto" else int(axes)
    alpha = parse_form(expr, n, base)
    if alpha and alpha.degrees() != {2}:
        raise UsageError(f"expected a 2-form, got degrees {sorted(alpha.degrees())}")
    preset = structures.canonical_structure(structure)
    split = structures.split2(alpha, preset)
    parts = {lab: part for lab, part in zip(split.labels, split.parts)}
    residuals = {"recombination": alpha - split.total()}
    if structure in ("g2", "spin7"):
        top = 2 if structure == "g2" else 3
        op = structures.two_form_operator(preset)
        big = split.labels[1]
        residuals[f"*(a7^form) - {top} a7"] = op(parts["7"]) - parts["7"] * top
        residuals[f"*(a{big}^form) + a{big}"] = op(parts[big]) + parts[big]
    else:
        omega = preset.form
        a11 = parts["1,1_0"]
        residuals["Lambda(a11_0)"] = structures.lefschetz_lambda(a11)
        residuals["a11_0^omega^omega"] = wedge(wedge(a11, omega), omega)
        for lab, typ in (("2,0", (2, 0)), ("0,2", (0, 2))):
            residuals[f"a{lab} off-type"] = parts[lab] - structures.type_component(parts[lab], *typ)
    out = {
        "structure": structure,
        "structure_form": _STRUCTURE_TEXT[structure],
        "input": format_form(alpha, base),
        "axes": base,
        "components": {lab: format_form(part, base) for lab, part in parts.items()},
        "norms_sq": {lab: format_scalar(norm_sq(part)) for lab, part in parts.items()},
        "residuals": {k: format_form(v, base) for k, v in residuals.items()},
    }
    if split.trace is not None:
        out["alpha0"] = format_scalar(split.trace)
    return out


def _decompose_text(d: dict) -> str:
    lines = [f"structure {d['structure']}: {d['structure_form']}",
             f"input ({d['axes']}-based axes): {d['input']}"]
    for lab, comp in d["components"].items():
        lines.append(f"  [{lab}] {comp}    |.|^2 = {d['norms_sq'][lab]}")
    if "alpha0" in d:
        lines.append(f"  alpha0 = {d['alpha0']}")
    lines.append("residuals:")
    for k, v in d["residuals"].items():
        lines.append(f"  {k} = {v}")
    return "\n".join(lines) + "\n"


def cmd_decompose(args) -> int:
    d = decompose(args.expr, args.structure, args.axes)
    sys.stdout.write(json.dumps(d, indent=2) + "\n" if args.format == "json" else _decompose_text(d))
    return EXIT_OK if all(v == "0" for v in d["residuals"].values()) else EXIT_FAIL


# ---------------------------------------------------------------- cone


def _parse_ansatz(specs: list[str]) -> list:
    out = []
    for s in specs:
        if "@" in s:
            shape, rng = s.rsplit("@", 1)
            try:
                lo, hi = (int(x) for x in rng.split(":"))
            except ValueError:
                raise UsageError(f"bad r range in ansatz {s!r}; expected SHAPE@lo:hi") from None
            out.append({"shape": shape.strip(), "r": [lo, hi]})
        else:
            out.append({"shape": s.strip()})
    return out


def default_ansatz(preset: cone.ConePreset, degree: int, r_max: int = 6) -> list[cone.ConeElement]:
    """Every monomial of the given degree with r^0..r^r_max (and t^0, t^1 on cylinders)."""
    alg = preset.algebra
    out = []
    t_range = (0, 1) if alg.uses_t else (0,)
    dt_range = (0, 1) if alg.uses_t else (0,)
    for g, p in alg.base.degrees.items():
        for dt in dt_range:
            for dr in (0, 1):
                if p + dt + dr != degree:
                    continue
                for a in range(r_max + 1):
                    for b in t_range:
                        out.append(alg.element({(a, b, dt, dr, g): 1}))
    return out


def cmd_cone(args) -> int:
    p = cone.load_preset(args.preset)
    result: dict = {"preset": p.name, "description": p.description,
                    "elements": {k: str(v) for k, v in p.elements.items()}}
    status = EXIT_OK
    if args.solve:
        target = p.parse(args.solve)
        degrees = target.degrees()
        if len(degrees) != 1:
            raise UsageError("the target must be homogeneous")
        ansatz = _parse_ansatz(args.ansatz) if args.ansatz else default_ansatz(p, next(iter(degrees)) - 1)
        try:
            sol = cone.solve_potential(target, ansatz, p)
        except cone.NotClosed as exc:
            result["solve"] = {"target": str(target), "error": "not closed", "d_target": str(exc.d_target)}
            status = EXIT_FAIL
        else:
            if sol:
                g = cone.growth_classify(sol.potential, p)
                result["solve"] = {"target": str(target), "potential": str(sol.potential),
                                   "kernel_dim": sol.kernel_dim, "growth": g.label}
            else:
                result["solve"] = {"target": str(target), "error": sol.reason}
                status = EXIT_FAIL
    if args.classify:
        g = cone.growth_classify(p.parse(args.classify), p)
        result["classify"] = {"element": args.classify, "class": g.label,
                              "exponents": {m: e for m, _, e in g.exponents}}
    if not args.solve and not args.classify:
        rep = cone.verify_structure_preset(p)
        result["report"] = rep.as_dict()
        status = EXIT_OK if rep.ok else EXIT_FAIL
    if args.format == "json":
        sys.stdout.write(json.dumps(result, indent=2) + "\n")
    else:
        lines = [f"preset {p.name}: {p.description}"]
        lines += [f"  {k} = {v}" for k, v in result["elements"].items()]
        if "solve" in result:
            lines += [f"solve: {k} = {v}" for k, v in result["solve"].items()]
        if "classify" in result:
            lines += [f"classify: {k} = {v}" for k, v in result["classify"].items()]
        sys.stdout.write("\n".join(lines) + "\n")
        if "report" in result:
            sys.stdout.write(rep.to_text())
    return status


# ---------------------------------------------------------------- entry point


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "format", None) is None:
        args.format = _default_format()
    handlers = {"verify": cmd_verify, "decompose": cmd_decompose, "cone": cmd_cone}
    try:
        return handlers[args.command](args)
    except (UsageError, FormSyntaxError, AxisRangeError, cone.ConeError, structures.DegreeError) as exc:
        print(f"holoforms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
