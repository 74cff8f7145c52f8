"""Command-line entry point."""
import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import ampcalc, verify
from .alcove import classify, generic_sweep, is_epsilon_generic, orbit_family
from .bggkit import (
    BUILDERS,
    FilteredComplex,
    euler_characteristic,
    serre_dual,
    validate_filtration,
)
from .charring import (
    Window,
    levi_jh_multiplicity,
    verma_character,
    weyl_character,
    weyl_dimension,
)
from .diagram import alcove_svg
from .euler_check import big_computation_n, build_ledger, floor_case_analysis, multiplicity_differences
from .groth import alcove_index, decompose_weyl_mod_p, simple_char_in_vermas, simple_in_weyl
from .rootdata import group

VERSION = "0.1.0"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    group: str = "gsp4"
    primes: list = field(default_factory=lambda: [13])
    lambda0: object = None  # explicit weight, or "sweep"
    eps: object = None
    window: int = 0
    format: str = "json"
    output: object = None


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def prime(text):
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"p must be an integer, got {text!r}") from None
    if p < 7 or not _is_prime(p):
        raise argparse.ArgumentTypeError(f"p must be a prime >= 7, got {p}")
    return p


def weight(text):
    if text == "sweep":
        return "sweep"
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights are comma-separated integers, got {text!r}") from None


def _datum(args):
    return group(args.group)


def _check_rank(datum, lam, flag, sweep_ok=False):
    if lam is None:
        raise UsageError(f"{flag} is required")
    if lam == "sweep":
        if not sweep_ok:
            raise UsageError(f"{flag} sweep is only accepted by bgg verify and verify euler")
        return
    if len(lam) != datum.rank:
        raise UsageError(f"{flag} needs {datum.rank} coordinates for {datum.name}, got {len(lam)}")


# ---------------------------------------------------------------- commands

def cmd_alcove(args):
    d = _datum(args)
    if args.action == "sweep":
        pts = generic_sweep(d, args.p, args.eps)
        return {"group": d.name, "p": args.p, "eps": args.eps, "count": len(pts), "points": [list(x) for x in pts]}, 0
    _check_rank(d, args.weight, "--lambda")
    if args.action == "classify":
        out = classify(d, args.p, args.weight).as_json()
        out["alcove_index"] = alcove_index(d, args.p, args.weight)
        if args.eps is not None:
            out["eps_generic"] = is_epsilon_generic(d, args.p, args.eps, args.weight)
        return out, 0
    return cmd_orbit(args)


def cmd_orbit(args):
    d = _datum(args)
    _check_rank(d, args.weight, "--lambda0")
    fam = orbit_family(d, args.p, args.weight)
    return {"group": d.name, "p": args.p, "family": fam.as_dict()}, 0


def cmd_char(args):
    d = _datum(args)
    _check_rank(d, args.weight, "--lambda")
    if args.kind == "weyl":
        chi = weyl_character(d, args.weight, for_levi=args.levi)
        return {"weight": list(args.weight), "levi": args.levi, "dimension": weyl_dimension(d, args.weight, args.levi),
                "character": chi.to_json()}, 0
    if args.kind == "verma":
        top = args.top or args.weight
        win = Window(tuple(top), args.depth)
        chi = verma_character(d, args.module, args.weight, win, args.p)
        return {"weight": list(args.weight), "module": args.module, "window": {"top": list(top), "depth": args.depth},
                "character": chi.to_json()}, 0
    if args.kind == "simple":
        k = simple_char_in_vermas(d, args.p, args.weight)
        return {"weight": list(args.weight), "p": args.p, "verma_classes": k.to_json(), "text": repr(k)}, 0
    # mult: Levi Jordan-Holder multiplicities of a Levi weight in a G-module character
    source = args.source or args.weight
    chi = weyl_character(d, source)
    w, l = levi_jh_multiplicity(d, args.p, chi, args.weight)
    return {"module": list(source), "levi_weight": list(args.weight), "W": w, "L_M": l}, 0


def cmd_decompose(args):
    d = _datum(args)
    _check_rank(d, args.weight, "--lambda")
    return {
        "weight": list(args.weight),
        "p": args.p,
        "composition_factors": [{"weight": list(w), "mult": m} for w, m in decompose_weyl_mod_p(d, args.p, args.weight)],
        "simple_in_weyl": [{"weight": list(w), "coeff": c} for w, c in simple_in_weyl(d, args.p, args.weight)],
    }, 0


def _builder(datum, alcove):
    fn = BUILDERS.get((datum.name, alcove))
    if fn is None:
        raise UsageError(f"no BGG builder for {datum.name} alcove C{alcove}")
    return fn


def _build(args):
    d = _datum(args)
    _check_rank(d, args.weight, "--lambda0")
    return d, _builder(d, args.alcove)(d, args.p, args.weight)


def _cells(datum, args):
    if args.weight == "sweep":
        primes = getattr(args, "primes", None) or [args.p]
        return [(p, lam) for p in primes for lam in generic_sweep(datum, p, args.eps)]
    return [(args.p, args.weight)]


def _pmap(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _bgg_cell(item):
    name, alcove, p, lam = item
    d = group(name)
    spec = BUILDERS[(name, alcove)](d, p, lam)
    euler = euler_characteristic(spec.total)
    target = simple_char_in_vermas(d, p, spec.family[f"lambda{alcove}"])
    issues = validate_filtration(d, spec.total)
    piece_sum = sum((euler_characteristic(c) for _, c in spec.pieces), type(euler)())
    ok = euler == target and not issues and piece_sum == euler
    return {"p": p, "lambda0": list(lam), "euler_characteristic": repr(euler), "simple_character": repr(target),
            "euler_matches": euler == target, "pieces_add_up": piece_sum == euler,
            "filtration_issues": issues, "pass": ok}


def cmd_bgg(args):
    d = _datum(args)
    _check_rank(d, args.weight, "--lambda0", sweep_ok=args.action == "verify")
    _builder(d, args.alcove)
    if args.action == "build":
        return _builder(d, args.alcove)(d, args.p, args.weight).to_json(), 0
    rows = _pmap(_bgg_cell, [(d.name, args.alcove, p, lam) for p, lam in _cells(d, args)], args.jobs)
    ok = all(r["pass"] for r in rows)
    if len(rows) == 1:
        return rows[0], 0 if ok else 1
    return {"cells": len(rows), "passed": sum(r["pass"] for r in rows), "rows": rows, "pass": ok}, 0 if ok else 1


def cmd_dual(args):
    d = _datum(args)
    if args.input:
        c = FilteredComplex.from_json(json.loads(Path(args.input).read_text()))
    else:
        if args.weight is None:
            raise UsageError("give --input or --lambda0 with --alcove")
        _, spec = _build(args)
        c = spec.total
    return serre_dual(d, c).to_json(), 0


def _euler_identity_cell(item):
    p, lam, eps = item
    d = group("gsp4")
    led = build_ledger(d, p, lam, eps=eps)
    n = big_computation_n(d, p, lam, eps, ledger=led)
    diffs = multiplicity_differences(d, p, lam, eps, ledger=led)
    floor = floor_case_analysis(d, p, lam)
    ok = n == 1 and diffs == (1, 1, 1, 0) and floor["pass"]
    return {"p": p, "lambda0": list(lam), "n": n, "diffs": list(diffs), "diffs_expected": [1, 1, 1, 0],
            "euler_combinations": [diffs[0] - diffs[2], diffs[1] - diffs[3]],
            "floor_cases": floor, "pass": ok}


def cmd_verify(args):
    if args.target in ("euler", "lemma39"):
        d = group("gsp4")
        _check_rank(d, args.weight, "--lambda0", sweep_ok=True)
        rows = _pmap(_euler_identity_cell, [(p, lam, args.eps) for p, lam in _cells(d, args)], args.jobs)
        ok = all(r["pass"] for r in rows)
        if len(rows) == 1:
            return rows[0], 0 if ok else 1
        return {"cells": len(rows), "passed": sum(r["pass"] for r in rows), "rows": rows, "pass": ok}, 0 if ok else 1
    checks = verify.CHECKS
    if args.target != "all":
        try:
            index = int(args.target)
            if not 1 <= index <= len(checks):
                raise ValueError
        except ValueError:
            raise UsageError(f"unknown verify target {args.target!r}: use all, euler (alias lemma39) or 1-{len(checks)}") from None
        checks = [checks[index - 1]]
        indices = [index - 1]
    else:
        indices = list(range(len(checks)))
    results = _pmap(_run_check, indices, args.jobs)
    ok = all(r.passed for r in results)
    if args.format == "text":
        return "\n".join(r.line() for r in results), 0 if ok else 1
    return {"checks": [r.to_json() for r in results], "pass": ok}, 0 if ok else 1


def _run_check(i):
    return verify.CHECKS[i]()


def cmd_amplitude(args):
    drop = set(args.drop or [])
    try:
        res = ampcalc.run_scenario(args.script, drop=drop)
    except ampcalc.ScenarioError as e:
        raise UsageError(str(e)) from None
    if args.minimality:
        res["minimality"] = ampcalc.minimality(args.script)
    code = 1 if res["verdict"] == "FAIL" else 0
    if args.format == "text":
        return ampcalc.format_trace(res), code
    return res, code


def cmd_diagram(args):
    d = _datum(args)
    _check_rank(d, args.weight, "--lambda0")
    return alcove_svg(d, args.p, args.weight, include_primed=args.primed), 0


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", choices=["gl3", "gsp4"], default="gsp4")
    common.add_argument("--p", type=prime, default=13)
    common.add_argument("--eps", type=int, default=None, help="genericity margin (default: no filter)")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps and check batteries")

    parser = argparse.ArgumentParser(prog="modbgg", description="Mod p BGG bookkeeping for GL3 and GSp4.")
    parser.add_argument("--config", help="JSON file with default option values")
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alcove", parents=[common], help="alcove signatures, sweeps and orbit families")
    p.add_argument("action", choices=["classify", "orbit", "sweep"])
    p.add_argument("--lambda", "--lambda0", dest="weight", type=weight)
    p.set_defaults(func=cmd_alcove)

    p = sub.add_parser("orbit", parents=[common], help="named affine reflections of lambda0")
    p.add_argument("--lambda0", dest="weight", type=weight)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("char", parents=[common], help="characters and multiplicities")
    p.add_argument("kind", choices=["weyl", "verma", "simple", "mult"])
    p.add_argument("--lambda", "--mu", dest="weight", type=weight)
    p.add_argument("--levi", action="store_true", help="Levi module instead of G-module")
    p.add_argument("--module", choices=["W", "L_M"], default="W")
    p.add_argument("--top", type=weight, help="window top (default: the weight)")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--source", type=weight, help="G-weight whose Weyl character is decomposed (mult)")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("decompose", parents=[common], help="Weyl module composition factors mod p")
    p.add_argument("--lambda", dest="weight", type=weight)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("bgg", parents=[common], help="build or check a filtered BGG complex")
    p.add_argument("action", choices=["build", "verify"])
    p.add_argument("--lambda0", dest="weight", type=weight)
    p.add_argument("--alcove", type=int, default=1)
    p.set_defaults(func=cmd_bgg)

    p = sub.add_parser("dual", parents=[common], help="Serre dual of a complex")
    p.add_argument("--input", help="FilteredComplex JSON file")
    p.add_argument("--lambda0", dest="weight", type=weight)
    p.add_argument("--alcove", type=int, default=1)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("verify", parents=[common], help="acceptance checks")
    p.add_argument("target", help="all, euler (alias lemma39), or a criterion number 1-10")
    p.add_argument("--lambda0", dest="weight", type=weight, default=(4, 2))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("amplitude", parents=[common], help="cohomological amplitude scenarios")
    p.add_argument("action", choices=["run", "list"])
    p.add_argument("script", nargs="?", help="scenario name or JSON path")
    p.add_argument("--drop", action="append", help="fact id to delete (repeatable)")
    p.add_argument("--minimality", action="store_true")
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("diagram", parents=[common], help="SVG alcove picture")
    p.add_argument("--lambda0", dest="weight", type=weight)
    p.add_argument("--primed", action="store_true", help="also draw the Borel-level partners")
    p.set_defaults(func=cmd_diagram)
    return parser


def load_config(path):
    try:
        raw = json.loads(Path(path).read_text())
        cfg = RunConfig(**raw)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config {path}: {e}") from None
    except TypeError as e:
        raise UsageError(f"bad config {path}: {e}") from None
    if not cfg.primes:
        raise UsageError("config primes must be a non-empty list")
    try:
        primes = [prime(str(q)) for q in cfg.primes]
    except argparse.ArgumentTypeError as e:
        raise UsageError(f"config: {e}") from None
    defaults = {"group": cfg.group, "p": primes[0], "eps": cfg.eps, "format": cfg.format, "output": cfg.output,
                "primes": primes}
    if cfg.lambda0 is not None:
        defaults["weight"] = "sweep" if cfg.lambda0 == "sweep" else tuple(cfg.lambda0)
    if cfg.window:
        defaults["depth"] = cfg.window
    return defaults


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    defaults = load_config(known.config)
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            sp.set_defaults(**defaults)


def _emit(result, args):
    if isinstance(result, str):
        text = result if result.endswith("\n") else result + "\n"
    elif args.format == "text" and isinstance(result, dict):
        text = "\n".join(f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in result.items()) + "\n"
    else:
        envelope = {"meta": {"command": args.command, "version": VERSION}, "result": result}
        text = json.dumps(envelope, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return e.code
        if args.command == "amplitude" and args.action == "list":
            result, code = {"scenarios": ampcalc.scenario_names()}, 0
        elif args.command == "amplitude" and not args.script:
            raise UsageError("amplitude run needs a scenario name or path")
        else:
            result, code = args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"modbgg: error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, KeyError) as e:
        print(f"modbgg: error: {e}", file=sys.stderr)
        return 2
    _emit(result, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
