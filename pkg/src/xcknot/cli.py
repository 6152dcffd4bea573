"""Command-line front end: ``xcknot verify | invariant | equations | groebner``.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .algebra import algebra_from_json
from .diagram import DiagramSyntaxError, DiagramValidationError, builtin, load_diagram, parse_diagram, stats
from .expr import ExprSyntaxError
from .invariant import MissingInverse, check_triviality, evaluate, expected, as_bead_word
from .polysys import Ideal, ResourceCapExceeded, ResourceCaps, buchberger, divide, ideal_membership, is_groebner_basis, xc0_ideal
from .sweedler import BASIS, SW, builtin_structure
from .xc import (
    AXIOMS,
    ConstraintViolation,
    UnsatisfiableSampling,
    check_commutators,
    check_theta_xi_identities,
    sample_assignments,
    structure_from_json,
    verify_axiom,
    xc_equations,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def load_structure(ref: str):
    """A built-in name (``sw:ex1`` ...) or a path to a structure JSON file."""
    if ref.startswith("sw:") and not Path(ref).exists():
        return builtin_structure(ref)
    return structure_from_json(_read_json(ref))


def load_algebra(ref: str):
    if ref.lower() == "sw":
        return SW
    return algebra_from_json(_read_json(ref))


def load_diagram_arg(text: str):
    try:
        return builtin(text)
    except ValueError:
        pass
    path = Path(text)
    if path.is_file():
        return load_diagram(path)
    return parse_diagram(text)


def _element_json(x) -> dict:
    return {"basis": list(x.algebra.basis), "coeffs": [str(c) for c in x.coeffs]}


def _element_text(x) -> str:
    return x.to_str()


def _emit(args, report: dict, lines):
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _map(args, fn, items):
    threads = max(1, getattr(args, "threads", 1) or 1)
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def _is_sweedler(X) -> bool:
    return X.algebra.basis == BASIS


def _structural_checks(X):
    if X.Rinv is None or X.kappaInv is None:
        return {"missing inverse": False}, {"missing inverse": False}
    return check_commutators(X), check_theta_xi_identities(X)


def cmd_verify(args) -> int:
    X = load_structure(args.xc)
    axioms = args.axioms.split(",") if args.axioms else list(AXIOMS)
    for a in axioms:
        if a not in AXIOMS:
            raise InputError(f"unknown axiom {a!r}; expected one of {', '.join(AXIOMS)}")
    samples = None if args.symbolic else args.samples
    reports = _map(args, lambda a: verify_axiom(X, a, samples, args.seed), axioms)
    report = {
        "structure": X.name or args.xc,
        "mode": reports[0].mode if reports else "symbolic",
        "axioms": [r.as_dict() for r in reports],
    }
    ok = all(r.passed for r in reports)
    lines = [f"structure {report['structure']} ({report['mode']})"]
    lines += [f"  {r.axiom:9s} {'PASS' if r.passed else 'FAIL'}" + (f"  {r.failures[0]}" if r.failures else "") for r in reports]
    if X.computed:
        report["computed"] = {}
        if "Rinv" in X.computed:
            n = X.algebra.dim
            z = X.algebra.zero
            report["computed"]["Rinv"] = [[str(X.Rinv.coeffs.get((a, b), z)) for b in range(n)] for a in range(n)]
        if "kappaInv" in X.computed:
            report["computed"]["kappaInv"] = [str(c) for c in X.kappaInv.coeffs]
        lines.append(f"  computed inverses: {', '.join(X.computed)}")
    if _is_sweedler(X):
        if samples is None or not X.params:
            comm, ident = _structural_checks(X)
            comm_fail, ident_fail = ([] if all(comm.values()) else [0]), ([] if all(ident.values()) else [0])
        else:
            comm, ident = {}, {}
            comm_fail, ident_fail = [], []
            for idx, (_, Xs) in enumerate(sample_assignments(X, samples, args.seed)):
                c, i = _structural_checks(Xs)
                for k, v in c.items():
                    comm[k] = comm.get(k, True) and v
                for k, v in i.items():
                    ident[k] = ident.get(k, True) and v
                if not all(c.values()):
                    comm_fail.append(idx)
                if not all(i.values()):
                    ident_fail.append(idx)
        report["commutators"] = {"checks": comm, "failed_samples": comm_fail}
        report["identities"] = {"checks": ident, "failed_samples": ident_fail}
        ok = ok and all(comm.values()) and all(ident.values())
        lines.append(f"  commutators in J(x)J: {'PASS' if all(comm.values()) else 'FAIL'}")
        for k, v in ident.items():
            lines.append(f"  {k}: {'PASS' if v else 'FAIL'}")
    report["passed"] = ok
    lines.append("PASS" if ok else "FAIL")
    _emit(args, report, lines)
    return EXIT_PASS if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# invariant
# --------------------------------------------------------------------------


def cmd_invariant(args) -> int:
    X = load_structure(args.xc)
    D = load_diagram_arg(args.diagram)
    W = as_bead_word(D)
    st = stats(D)
    samples = None if args.symbolic else args.samples
    report = {"structure": X.name or args.xc, "diagram": str(D), "stats": st.as_dict()}
    lines = [f"diagram: {D}   (writhe {st.writhe}, rot {st.rot}, framing {st.framing})"]
    if not st.parity_ok:
        lines.append("warning: rot + writhe is odd; not a rotational diagram")
        report["warning"] = "parity"
    ok = True
    if samples is None or not X.params:
        value = evaluate(X, W, args.strategy)
        report["mode"] = "symbolic"
        report["value"] = _element_json(value)
        lines.append(f"value: {_element_text(value)}")
        if args.check_triviality:
            target = expected(X, st.framing)
            ok = value == target
            report["expected"] = _element_json(target)
            report["equal"] = ok
            lines.append(f"nu^{st.framing}: {_element_text(target)}")
    else:
        report["mode"] = "sampled"
        report["seed"] = args.seed
        if args.check_triviality:
            r = check_triviality(X, W, samples, args.seed, args.strategy)
            ok = r.passed
            report.update({"samples": samples, "equal": ok, "failures": r.failures})
            lines.append(f"{samples} samples, seed {args.seed}: value = nu^{st.framing} at every sample" if ok else f"mismatch at samples {[f['sample'] for f in r.failures]}")
        else:
            vals = []
            for idx, (point, Xs) in enumerate(sample_assignments(X, samples, args.seed)):
                v = evaluate(Xs, W, args.strategy)
                vals.append({"point": {k: str(c) for k, c in point.items()}, "value": _element_json(v)})
                lines.append(f"sample {idx}: {_element_text(v)}")
            report["samples"] = vals
    if args.check_triviality:
        report["passed"] = ok
        lines.append("equal" if ok else "NOT equal")
    _emit(args, report, lines)
    return EXIT_PASS if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# equations / groebner
# --------------------------------------------------------------------------


def cmd_equations(args) -> int:
    if args.xc0:
        I = xc0_ideal()
        data = I.to_json()
        summary = f"(XC0) ideal: {len(data['gens'])} generators in {len(data['vars'])} variables, constants {data['constants']}"
    else:
        alg = load_algebra(args.algebra)
        system = xc_equations(alg)
        eqs = [(label, p) for label, p in system.equations if not p.is_zero()]
        data = {
            "vars": system.unknowns,
            "constants": [],
            "order": "grevlex",
            "gens": [p.to_str() for _, p in eqs],
            "labels": [label for label, _ in eqs],
        }
        summary = f"{len(system.unknowns)} unknowns, {len(eqs)} nonzero equations"
    text = json.dumps(data, indent=2, sort_keys=True)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        print(summary if not args.json else json.dumps({"summary": summary, "output": args.output}, sort_keys=True))
    else:
        print(text)
    return EXIT_PASS


def cmd_groebner(args) -> int:
    I = Ideal.from_json(_read_json(args.ideal))
    caps = ResourceCaps(args.max_basis, args.max_terms, args.max_pairs)
    report = {"vars": list(I.ring.variables), "constants": list(I.ring.constants), "order": I.ring.order.kind}
    lines = []
    ok = True
    if args.member:
        results = {}
        for expr in args.member:
            res = ideal_membership(I.ring.parse(expr), I, caps)
            results[expr] = res
            lines.append(f"member {expr}: {'true' if res else 'false'}")
            ok = ok and res
        report["member"] = results
    else:
        G = buchberger(I, caps)
        spoly_ok = is_groebner_basis(G)
        gens_ok = all(divide(g, G).remainder.is_zero() for g in I.generators)
        ok = spoly_ok and gens_ok
        report["basis"] = [I.ring.to_scalar(g).to_str() for g in G]
        report["certificate"] = {"s_polynomials_reduce": spoly_ok, "generators_reduce": gens_ok}
        lines.append(f"Groebner basis ({len(G)} elements, {I.ring.order.kind}):")
        lines += [f"  {I.ring.to_scalar(g).to_str()}" for g in G]
        lines.append(f"all S-polynomials reduce to 0: {spoly_ok}")
        lines.append(f"all generators reduce to 0: {gens_ok}")
    report["passed"] = ok
    _emit(args, report, lines)
    return EXIT_PASS if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="xcknot", description="XC-algebra verification and universal knot invariants")
    p.add_argument("--threads", type=int, default=1, help="worker threads for independent checks")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, sampling=True):
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("--threads", type=int, default=argparse.SUPPRESS)
        if sampling:
            sp.add_argument("--symbolic", action="store_true", help="exact symbolic check (default)")
            sp.add_argument("--samples", type=int, default=None, help="check at N random parameter points")
            sp.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="check the XC axioms of a structure")
    v.add_argument("--xc", required=True, help="built-in (sw:standard, sw:ex1..4) or JSON file")
    v.add_argument("--axioms", default=None, help=f"comma-separated subset of {','.join(AXIOMS)}")
    common(v)
    v.set_defaults(func=cmd_verify)

    inv = sub.add_parser("invariant", help="evaluate the universal invariant of a diagram")
    inv.add_argument("--xc", required=True)
    inv.add_argument("--diagram", required=True, help="built-in name, token string or file")
    inv.add_argument("--check-triviality", action="store_true", help="compare with nu^framing")
    inv.add_argument("--strategy", choices=("auto", "expand", "dp"), default="auto")
    common(inv)
    inv.set_defaults(func=cmd_invariant)

    eq = sub.add_parser("equations", help="emit the defining polynomial system")
    g = eq.add_mutually_exclusive_group(required=True)
    g.add_argument("--algebra", help="'sw' or an algebra JSON file")
    g.add_argument("--xc0", action="store_true", help="emit the cleared (XC0) ideal on SW instead")
    eq.add_argument("-o", "--output", default=None)
    common(eq, sampling=False)
    eq.set_defaults(func=cmd_equations)

    gb = sub.add_parser("groebner", help="Groebner basis or ideal membership")
    gb.add_argument("--ideal", required=True, help="ideal JSON file")
    gb.add_argument("--member", action="append", default=None, help="expression to test (repeatable)")
    caps = ResourceCaps()
    gb.add_argument("--max-basis", type=int, default=caps.max_basis)
    gb.add_argument("--max-terms", type=int, default=caps.max_terms)
    gb.add_argument("--max-pairs", type=int, default=caps.max_pairs)
    common(gb, sampling=False)
    gb.set_defaults(func=cmd_groebner)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_PASS
    if getattr(args, "samples", None) is not None and args.samples < 1:
        print("error: --samples must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except ResourceCapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (
        InputError,
        ExprSyntaxError,
        DiagramSyntaxError,
        DiagramValidationError,
        ConstraintViolation,
        UnsatisfiableSampling,
        MissingInverse,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
