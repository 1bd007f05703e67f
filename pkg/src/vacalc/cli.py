"""Command-line front end.

Subcommands::

    vacalc ope     A B         OPE of two states (two-point, vertex or commutator form)
    vacalc verify  --suite S   axiom and braiding checks with witnesses
    vacalc basis   DEGREE      PBW basis of a graded piece
    vacalc delta   N           (z - w)^(N+1) d^N delta = 0 on a window

Family and bicharacter arguments accept a path or the name of a bundled
fixture (``heisenberg``, ``sl2``, ``virasoro``, ``heis_c1``, ``sl2_k1``,
``vir_c1``, ``toy``).  ``VA_FIXTURES`` points at another fixture directory.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional

from . import quantum, vertex
from .bicharacter import Bicharacter, Counit
from .delta import delta_annihilation_check
from .pbw import AlgebraFamily, FamilyError, State, graded_basis
from .serialize import (ParseError, bicharacter_from_json, dumps, family_from_json, load_json,
                        ope_to_json, parse_state, state_to_json, to_jsonable)

SUITES = ("vacuum", "translation", "locality", "ybe", "braided", "twist")

GRAMMAR_HELP = """state grammar (whitespace ignored):
  b(-1)b(-2)|0>      Heisenberg
  J[e](-1)|0>        affine, label in brackets
  L(-2)|0>           Virasoro
  2*b(-2)|0> - 1/2 b(-1)b(-1)|0>   rational coefficients and sums
"""


class UsageError(Exception):
    pass


def fixture_dir() -> Path:
    env = os.environ.get("VA_FIXTURES")
    if env:
        return Path(env)
    return Path(str(resources.files("vacalc") / "fixtures"))


def resolve(spec: str) -> Path:
    p = Path(spec)
    if p.exists():
        return p
    for cand in (fixture_dir() / spec, fixture_dir() / f"{spec}.json"):
        if cand.exists():
            return cand
    raise UsageError(f"no such file or bundled fixture: {spec}")


def load_config(args) -> tuple[AlgebraFamily, Bicharacter, bool]:
    fam = family_from_json(load_json(resolve(args.family)))
    if args.bichar:
        r = bicharacter_from_json(load_json(resolve(args.bichar)), fam)
        return r.family, r, True
    return fam, Counit(fam), False


def _emit(args, payload: dict, text: str) -> None:
    out = dumps(payload) if args.format == "json" else text.rstrip("\n") + "\n"
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _ope_text(res) -> str:
    lines = [f"truncation {res.truncation}"]
    for p, s in sorted(res.principal.items(), reverse=True):
        lines.append(f"  (x1-x2)^-{p}: {s}")
    for (i, j), s in sorted(res.regular.items()):
        lines.append(f"  x1^{i} x2^{j}: {s}")
    for (m, j), s in sorted(res.defect.items()):
        lines.append(f"  defect u^{m} x2^{j}: {s}")
    return "\n".join(lines)


# commands


def cmd_ope(args) -> int:
    fam, r, _ = load_config(args)
    va = vertex.VertexAlgebraInstance(fam, r, args.route)
    a = parse_state(args.a, fam)
    b = parse_state(args.b, fam)
    if args.kind == "vertex":
        res = vertex.vertex_op(va, a, b, args.trunc)
    elif args.kind == "commutator":
        res = vertex.ope_commutator(va, a, b, args.trunc)
    else:
        res = vertex.ope(va, a, b, args.trunc)
    payload = {"family": fam.describe(), "a": state_to_json(a), "b": state_to_json(b),
               "kind": args.kind, "route": args.route, "result": ope_to_json(res)}
    _emit(args, payload, _ope_text(res))
    return 0


def _generators(fam: AlgebraFamily) -> List[State]:
    base = fam.base_mode()
    return [State.monomial(fam, ((base, i),)) for i in range(len(fam.labels))]


def _report(name: str, rep) -> dict:
    detail = getattr(rep, "detail", None)
    if detail is None:
        detail = {"checked": rep.checked, "witness": rep.witness}
    return {"check": name, "passed": bool(rep), "detail": to_jsonable(detail)}


def run_suite(suite: str, fam: AlgebraFamily, r: Bicharacter, twisted: bool,
              window: int, trunc: int, route: str = "fields") -> dict:
    va = vertex.VertexAlgebraInstance(fam, r, route)
    gens = _generators(fam)
    checks = []
    if suite == "vacuum":
        for a in [va.vacuum] + gens:
            checks.append(_report(f"vacuum[{a}]", vertex.check_vacuum(va, a, trunc, window)))
    elif suite == "translation":
        for a in [va.vacuum] + gens:
            checks.append(_report(f"translation[{a}]", vertex.check_translation(va, a, trunc, window)))
    elif suite == "locality":
        for i, a in enumerate(gens):
            for b in gens[i:]:
                rep = vertex.check_locality(va, a, b, N_max=2 * fam.weight + 2, window=window)
                checks.append(_report(f"locality[{a}, {b}]", rep))
    elif suite == "ybe":
        R = quantum.braided_R_from_bichar(r, window)
        checks.append(_report("unit", R.unit_check()))
        checks.append(_report("ybe", quantum.ybe_check(R)))
        checks.append(_report("hexagon", quantum.rmatrix_hexagon_check(R)))
    elif suite == "braided":
        R = quantum.braided_R_from_bichar(r, window)
        checks.append(_report("braided", quantum.braided_comm_check(r, R, window)))
        plain = quantum.plain_comm_check(r, window)
        checks.append({"check": "commutative", "passed": True, "informational": True,
                       "commutative": bool(plain)})
    elif suite == "twist":
        if not twisted:
            return {"suite": suite, "passed": True, "skipped": "no bicharacter given", "checks": []}
        if not getattr(r, "is_symmetric", lambda: False)():
            return {"suite": suite, "passed": True, "checks": [],
                    "skipped": "non-symmetric bicharacter has no ordinary vertex algebra to compare with"}
        rep = vertex.twist_agreement(va, vertex.twist_pairs(fam, min(window, 3)), trunc)
        checks.append(_report("twist", rep))
    else:
        raise UsageError(f"unknown suite {suite!r}")
    return {"suite": suite, "passed": all(c["passed"] for c in checks), "checks": checks}


def cmd_verify(args) -> int:
    fam, r, twisted = load_config(args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    results = [run_suite(s, fam, r, twisted, args.window, args.trunc, args.route) for s in suites]
    ok = all(x["passed"] for x in results)
    payload = {"family": fam.describe(), "bicharacter": getattr(r, "name", "counit"),
               "route": args.route, "window": args.window, "truncation": args.trunc,
               "passed": ok, "suites": results}
    lines = []
    for res in results:
        tag = "skip" if res.get("skipped") else ("PASS" if res["passed"] else "FAIL")
        lines.append(f"{res['suite']}: {tag}")
        for c in res["checks"]:
            if c.get("informational"):
                lines.append(f"  {c['check']}: {'yes' if c['commutative'] else 'no'} (informational)")
                continue
            extra = ""
            if c["check"].startswith("locality") and "N" in c["detail"]:
                extra = f" N={c['detail']['N']}"
            lines.append(f"  {c['check']}: {'pass' if c['passed'] else 'FAIL'}{extra}")
            if not c["passed"]:
                lines.append(f"    witness: {c['detail']}")
    lines.append("ALL PASS" if ok else "FAILED")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 1


def cmd_basis(args) -> int:
    fam = family_from_json(load_json(resolve(args.family)))
    basis = graded_basis(fam, args.degree)
    names = [fam.mono_str(m) for m in basis]
    payload = {"family": fam.describe(), "degree": args.degree, "dimension": len(names), "basis": names}
    _emit(args, payload, f"degree {args.degree}: dimension {len(names)}\n" + "\n".join(names))
    return 0


def cmd_delta(args) -> int:
    window = (-args.window, args.window)
    res = delta_annihilation_check(args.n, window, args.power)
    payload = {"n": args.n, "power": args.n + 1 if args.power is None else args.power,
               "window": list(window), "holds": res}
    word = {True: "holds", False: "FAILS", None: "window too small to certify"}[res]
    _emit(args, payload, f"(z-w)^{payload['power']} d^{args.n} delta(z,w) = 0 on {window}: {word}")
    return 1 if res is False else (2 if res is None else 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")

    fam_args = argparse.ArgumentParser(add_help=False)
    fam_args.add_argument("--family", default="heisenberg", help="family fixture (path or bundled name)")
    fam_args.add_argument("--bichar", help="bicharacter fixture; default is the counit")
    fam_args.add_argument("--trunc", type=_nonneg, default=None, help="truncation order N")
    fam_args.add_argument("--window", type=_nonneg, default=4, help="degree window")
    fam_args.add_argument("--route", choices=("fields", "twist"), default="fields")

    p = argparse.ArgumentParser(prog="vacalc", description="Exact OPE, axiom and braiding calculator for vertex algebras.",
                                epilog=GRAMMAR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("ope", parents=[common, fam_args], help="compute an OPE", epilog=GRAMMAR_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    o.add_argument("a")
    o.add_argument("b")
    o.add_argument("--kind", choices=("ope", "vertex", "commutator"), default="ope")
    o.set_defaults(func=cmd_ope, trunc_default=4)

    v = sub.add_parser("verify", parents=[common, fam_args], help="run checker suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.set_defaults(func=cmd_verify, trunc_default=6)

    b = sub.add_parser("basis", parents=[common], help="list a graded basis")
    b.add_argument("degree", type=_nonneg)
    b.add_argument("--family", default="heisenberg")
    b.set_defaults(func=cmd_basis)

    d = sub.add_parser("delta", parents=[common], help="delta annihilation identity")
    d.add_argument("n", type=_nonneg)
    d.add_argument("--window", type=_nonneg, default=12)
    d.add_argument("--power", type=_nonneg, default=None)
    d.set_defaults(func=cmd_delta)
    return p


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "trunc", "absent") is None:
        args.trunc = args.trunc_default
    try:
        return args.func(args)
    except (UsageError, ParseError, FamilyError) as exc:
        print(f"vacalc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
