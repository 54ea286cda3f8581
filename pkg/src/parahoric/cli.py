"""Command-line driver: every command prints one JSON document.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from .chevalley import (generate_family, product_order, unicity_report, verify_identities,
                        find_rescaling)
from .errors import DepthOne, InputError, ParahoricError, TooLarge
from .report import VerificationReport
from .ring import iso_search, make_ring, parse_ring_spec
from .rootsystem import extend_concave, format_root, parse_point, parse_system

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
TABLE_LIMIT = 81


def load_schema(name: str) -> dict:
    """Published JSON schema for one output kind, e.g. ``report`` or ``ring_info``."""
    text = resources.files("parahoric").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


class Outcome:
    def __init__(self, payload, passed: bool = True):
        self.payload = payload
        self.passed = passed


# -- ring ----------------------------------------------------------------------

def _ring_info(R) -> dict:
    try:
        pi = R.format(R.uniformizer())
    except DepthOne:
        pi = None
    return {"spec": R.spec.text(), "order": R.order, "characteristic": R.characteristic,
            "residue_field_order": R.q, "depth": R.h, "uniformizer": pi,
            "teichmuller_reps": [R.format(x) for x in R.teichmuller_reps()]}


def run_ring(spec: str, action: str, other: str | None = None, cap: int | None = None) -> Outcome:
    R = make_ring(parse_ring_spec(spec))
    if action == "info":
        return Outcome(_ring_info(R))
    if action == "table":
        limit = min(cap or TABLE_LIMIT, TABLE_LIMIT)
        if R.order > limit:
            raise TooLarge(f"tables are printed for rings of order <= {limit}")
        els = R.elements()
        return Outcome({"spec": R.spec.text(), "elements": [R.format(x) for x in els],
                        "add": [[R.code(x + y) for y in els] for x in els],
                        "mul": [[R.code(x * y) for y in els] for x in els]})
    if action == "iso":
        if other is None:
            raise InputError("iso needs a second ring spec")
        S = make_ring(parse_ring_spec(other))
        phi = iso_search(R, S)
        out = {"source": R.spec.text(), "target": S.spec.text(), "isomorphic": phi is not None}
        if phi is not None:
            out["generator_images"] = {k: S.format(v) for k, v in phi.generator_images.items()}
        return Outcome(out)
    raise InputError(f"unknown ring action {action!r}")


# -- roots and constants ---------------------------------------------------------

def run_roots(system: str, point: list | None = None) -> Outcome:
    s = parse_system(system)
    out = {"system": s.name,
           "simple": [format_root(a) for a in s.simple_roots],
           "positive": [format_root(a) for a in s.positive_roots],
           "highest": format_root(s.highest_root()),
           "extended_simple": [format_root(a) for a in s.extended_simple_roots()],
           "cartan_matrix": [list(r) for r in s.cartan_matrix()],
           "additive_pairs": [{"pair": [format_root(a), format_root(b)], "p": s.p_int(a, b)}
                              for a, b in s.additive_pairs()]}
    if point is not None:
        f = extend_concave(s, parse_point(point))
        out["f"] = {format_root(a): f(a) for a in s.roots}
        out["psi"] = [format_root(a) for a in f.psi()]
    return Outcome(out)


def _higher_json(fam) -> dict:
    return {f"({format_root(a)},{format_root(b)},{i},{j})": v.text()
            for (a, b, i, j), v in sorted(fam.higher.items(),
                                          key=lambda kv: (fam.system.index(kv[0][0]),
                                                          fam.system.index(kv[0][1]),
                                                          kv[0][2], kv[0][3]))}


def run_constants(system: str | None = None, group: str | None = None) -> Outcome:
    if group is not None:
        from .group import extract_constants, make_group
        G = make_group(group)
        fam = extract_constants(G, product_order)
        rep = verify_identities(fam)
        ref = generate_family(G.system).with_higher().reduce(G.ring)
        N = find_rescaling(fam, ref)
        rep.add("constants.rescaling", "c' = N_a N_b / N_(a+b) c", 1,
                [] if N is not None else ["no rescaling onto the generated family"])
        return Outcome({"group": G.describe(), "constants": fam.to_json(),
                        "higher": _higher_json(fam), "report": rep.to_json(),
                        "rescaling": N.to_json() if N is not None else None}, rep.passed)
    if system is None:
        raise InputError("constants needs a root system or --group")
    fam = generate_family(parse_system(system)).with_higher()
    rep = verify_identities(fam)
    return Outcome({"system": fam.system.name, "constants": fam.to_json(),
                    "higher": _higher_json(fam), "report": rep.to_json()}, rep.passed)


# -- groups -----------------------------------------------------------------------

def run_group(spec: str, action: str, cap: int) -> Outcome:
    from .group import make_group
    G = make_group(spec)
    out = {"group": G.describe(), "spec": G.spec.to_json()}
    if action == "order":
        out["order"] = G.order(cap=cap)
    elif action == "roots":
        out["root_subgroups"] = [{"root": format_root(a), "f": G.f(a),
                                  "order": len(G.root_subgroup(a))} for a in G.system.roots]
    elif action != "info":
        raise InputError(f"unknown group action {action!r}")
    return Outcome(out)


VERIFY_TARGETS = ("identities", "unicity", "axioms", "rank1", "iwahori", "constants")


def run_verify(target: str, arg: str, cap: int, seed: int) -> Outcome:
    rep = VerificationReport()
    if target == "identities":
        rep = verify_identities(generate_family(parse_system(arg)).with_higher())
    elif target == "unicity":
        rep = unicity_report(parse_system(arg), seed=seed)
    elif target in ("axioms", "rank1", "iwahori"):
        from .group import axiom_report, iwahori_sweep, make_group, rank1_sweep
        G = make_group(arg)
        if target == "axioms":
            rep = axiom_report(G, cap=cap, seed=seed)
        elif target == "rank1":
            rep = rank1_sweep(G)
        else:
            rep = iwahori_sweep(G)
    elif target == "constants":
        return run_constants(group=arg)
    else:
        raise InputError(f"unknown verify target {target!r}")
    return Outcome(rep.to_json(), rep.passed)


def run_counterexample(n: int, r1: str, r2: str, samples: int, seed: int) -> Outcome:
    from .group import counterexample_group
    res = counterexample_group(n, r1, r2, seed=seed, samples=samples)
    rep = res.report
    closure = rep.by_id("counterexample.closure").status == "pass"
    axioms = all(e.status != "fail" for e in rep.entries if e.id.startswith("axiom."))
    out = {"n": n, "rings": [r1, r2], "closed": closure,
           "axioms": "pass" if axioms else "fail",
           "induced_ring_iso": res.isomorphic,
           "report": rep.to_json(),
           "induced_rings": [r.to_json() for r in res.rings]}
    return Outcome(out, rep.passed)


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parahoric", description=__doc__.splitlines()[0])
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--cap", type=int, default=10 ** 7, help="enumeration cap")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("ring", help="truncated rings")
    r.add_argument("spec")
    r.add_argument("action", choices=("info", "table", "iso"))
    r.add_argument("other", nargs="?")

    s = sub.add_parser("roots", help="root systems and concave functions")
    s.add_argument("system")
    s.add_argument("--point", help="comma-separated rationals on the simple roots")

    c = sub.add_parser("constants", help="structure constants")
    c.add_argument("system", nargs="?")
    c.add_argument("--group", help="extract from a group spec instead")

    g = sub.add_parser("group", help="windowed groups")
    g.add_argument("spec")
    g.add_argument("action", nargs="?", default="info", choices=("info", "order", "roots"))

    v = sub.add_parser("verify", help="verification suites")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("arg")

    x = sub.add_parser("counterexample", help="the two-ring block group")
    x.add_argument("n", type=int)
    x.add_argument("--r1", default="ram(p=3,e=2,c=1,h=3)")
    x.add_argument("--r2", default="ram(p=3,e=2,c=2,h=3)")
    x.add_argument("--samples", type=int, default=10_000)
    return p


def dispatch(args) -> Outcome:
    if args.command == "ring":
        return run_ring(args.spec, args.action, args.other, args.cap)
    if args.command == "roots":
        point = args.point.split(",") if args.point else None
        return run_roots(args.system, point)
    if args.command == "constants":
        return run_constants(args.system, args.group)
    if args.command == "group":
        return run_group(args.spec, args.action, args.cap)
    if args.command == "verify":
        return run_verify(args.target, args.arg, args.cap, args.seed)
    return run_counterexample(args.n, args.r1, args.r2, args.samples, args.seed)


def _emit(payload, pretty: bool):
    text = json.dumps(payload, indent=2 if pretty else None,
                      separators=None if pretty else (",", ":"))
    sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        outcome = dispatch(args)
    except TooLarge as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.pretty)
        return EXIT_CAP
    except InputError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.pretty)
        return EXIT_INPUT
    except ParahoricError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.pretty)
        return EXIT_FAIL
    _emit(outcome.payload, args.pretty)
    return EXIT_PASS if outcome.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
