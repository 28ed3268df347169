"""Command line front end: ``eqset lindio | wordeq | edt0l``.

Exit codes are uniform: 0 for a positive answer, 1 for a negative one and
2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import edt0l, lindio, poly, wordeq
from .core import IntMatrix, IntVec, LinearSystem

EXIT_YES, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _jvec(v):
    return [poly.json_int(x) for x in v]


def _read_json(source: str):
    """Inline JSON when ``source`` starts with ``{``, stdin for ``-``, else a path."""
    try:
        if source.lstrip().startswith("{"):
            return json.loads(source)
        if source == "-":
            return json.load(sys.stdin)
        with open(source, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def _as_int(x, where):
    if isinstance(x, bool):
        raise InputError(f"{where}: expected an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise InputError(f"{where}: expected an integer, got {x!r}")


def load_linear_system(data) -> LinearSystem:
    if not isinstance(data, dict) or "A" not in data or "c" not in data:
        raise InputError('expected an object {"A": [[...]], "c": [...]}')
    a, c = data["A"], data["c"]
    if not isinstance(a, list) or not a or not all(isinstance(r, list) for r in a):
        raise InputError("$.A: expected a non-empty list of rows")
    if not isinstance(c, list):
        raise InputError("$.c: expected a list")
    rows = [[_as_int(x, f"$.A[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(a)]
    target = [_as_int(x, f"$.c[{i}]") for i, x in enumerate(c)]
    try:
        return LinearSystem(IntMatrix(rows), IntVec(target))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def affine_dot(aut) -> str:
    lines = [
        "digraph solutions {",
        "  rankdir=LR;",
        "  node [shape=circle];",
        '  start [shape=point];',
    ]
    for s in aut.states:
        shape = ' [shape=doublecircle]' if s == aut.final else ""
        lines.append(f'  "{_vec(s)}"{shape};')
    if aut.states:
        lines.append(f'  start -> "{_vec(aut.initial)}";')
    for p, h, q in aut.arcs:
        lines.append(f'  "{_vec(p)}" -> "{_vec(q)}" [label="{h.label()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def endo_dot(aut) -> str:
    def esc(s):
        return s.replace("\\", "\\\\").replace('"', '\\"')

    lines = ["digraph edt0l {", "  rankdir=LR;", "  node [shape=circle];", "  start [shape=point];"]
    for s in aut.states:
        shape = " [shape=doublecircle]" if s in aut.finals else ""
        lines.append(f'  "{esc(s)}"{shape};')
    lines.append(f'  start -> "{esc(aut.initial)}";')
    for p, h, q in aut.arcs:
        label = ", ".join(f"{a}->{w or 'ε'}" for a, w in h.nontrivial().items()) or "id"
        lines.append(f'  "{esc(p)}" -> "{esc(q)}" [label="{esc(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_lindio(args, out) -> int:
    s = load_linear_system(_read_json(args.input))
    report, aut, norm_s, projection = lindio.analyze(s)
    solutions = None
    if args.bound is not None:
        solutions = [
            lindio.project(x, projection) for x in lindio.enumerate_solutions(aut, args.bound)
        ]
        solutions = sorted(set(solutions))
    if args.emit_dot:
        with open(args.emit_dot, "w", encoding="utf-8") as fh:
            fh.write(affine_dot(aut))
    if args.report:
        from . import report as figures

        bound = args.bound if args.bound is not None else 8
        sols = solutions
        if sols is None:
            sols = sorted({lindio.project(x, projection)
                           for x in lindio.enumerate_solutions(aut, bound)})
        figures.write_report(args.report, aut, sols, s.n, bound)

    fmt = args.format or "text"
    if fmt == "dot":
        out.write(affine_dot(aut))
    elif fmt == "json":
        doc = {
            "n": s.n,
            "normalized": {"A": [_jvec(r) for r in norm_s.a.tolist()], "c": _jvec(norm_s.c)},
            "solvable": report.solvable,
            "infinite": report.infinite,
            "witness": None if report.witness is None else _jvec(report.witness),
            "automaton": {
                "states": len(aut.states),
                "arcs": len(aut.arcs),
                "norm_bound": aut.norm_bound,
            },
            "state_bound": poly.json_int(lindio.state_bound(norm_s.a)),
            "reference_state_count": poly.json_int(lindio.reference_state_count(norm_s.a)),
        }
        if solutions is not None:
            doc["bound"] = args.bound
            doc["solutions"] = [_jvec(x) for x in solutions]
        out.write(_dump(doc))
    else:
        yn = {True: "true", False: "false"}
        out.write(
            f"system: n={s.n} |A|_1={s.a.norm1()} |c|_1={s.c.norm1()}"
            f" padded_to={norm_s.n}\n"
        )
        out.write(f"solvable: {yn[report.solvable]}\n")
        out.write(f"infinite: {yn[report.infinite]}\n")
        out.write(f"witness: {'none' if report.witness is None else _vec(report.witness)}\n")
        out.write(
            f"automaton: {len(aut.states)} states, {len(aut.arcs)} arcs,"
            f" norm bound {aut.norm_bound}\n"
        )
        out.write(f"state bound (2|A|_1+1)^n: {lindio.state_bound(norm_s.a)}\n")
        out.write(f"reference count |A|_1^(2n+1): {lindio.reference_state_count(norm_s.a)}\n")
        if solutions is not None:
            out.write(f"solutions with coordinates <= {args.bound}: {len(solutions)}\n")
            for x in solutions:
                out.write(_vec(x) + "\n")
    return EXIT_YES if report.solvable else EXIT_NO


def _parse_eq(text):
    try:
        return wordeq.parse_equation(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_wordeq(args, out) -> int:
    eq = _parse_eq(args.equation)
    fmt = args.format or "text"
    if args.action == "solve":
        if args.cap is None:
            raise InputError("solve needs --cap")
        sols = wordeq.brute_force_wordeq(eq, args.cap)
        if fmt == "json":
            out.write(_dump({
                "equation": str(eq),
                "cap": args.cap,
                "solutions": [s.as_dict() for s in sols],
                "exhaustive_up_to_cap": True,
            }))
        else:
            out.write(f"equation: {eq}\n")
            out.write(f"solutions with images of length <= {args.cap}: {len(sols)}\n")
            for s in sols:
                out.write(f"{s}\n")
            if not sols:
                out.write("note: bounded search only; this does not prove the equation unsolvable\n")
        return EXIT_YES if sols else EXIT_NO

    try:
        ps = wordeq.encode_equation(eq)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.single:
        ps = poly.to_single_equation(ps)

    if args.action == "encode":
        out.write(_dump(ps.to_json()) if fmt == "json" else ps.to_text())
        return EXIT_YES

    # check
    if not args.assign:
        raise InputError("check needs --assign PATH")
    raw = _read_json(args.assign)
    if not isinstance(raw, dict):
        raise InputError("assignment must be an object {unknown: integer}")
    assignment = {k: _as_int(v, f"$.{k}") for k, v in raw.items()}
    if args.single and not set(ps.unknowns) <= set(assignment):
        source = wordeq.encode_equation(eq)
        if set(source.unknowns) <= set(assignment):
            assignment = poly.lift_assignment(source, assignment)
    try:
        ok = poly.eval_poly_system(ps, assignment)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    if fmt == "json":
        out.write(_dump({"equation": str(eq), "satisfied": ok}))
    else:
        out.write(f"satisfied: {'true' if ok else 'false'}\n")
    return EXIT_YES if ok else EXIT_NO


def cmd_edt0l(args, out) -> int:
    try:
        system = edt0l.system_from_dict(_read_json(args.input))
    except edt0l.SchemaError as exc:
        raise InputError(f"schema violation at {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    fmt = args.format or "text"
    if fmt == "dot":
        out.write(endo_dot(system.automaton))
        return EXIT_YES

    if args.action in ("enumerate", "tuples"):
        if args.cap is None:
            raise InputError(f"{args.action} needs --cap")
        try:
            result = edt0l.edt0l_enumerate(system, args.cap, args.depth_cap)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        marker = system.marker
        if args.action == "tuples" and marker is None:
            raise InputError("tuples needs a marker")
        if fmt == "json":
            doc = {"cap": args.cap, "truncated": result.truncated}
            if args.action == "tuples":
                doc["tuples"] = [list(edt0l.split_tuple(w, marker)) for w in result.words]
            else:
                doc["words"] = list(result.words)
            out.write(_dump(doc))
        else:
            for w in result.words:
                if args.action == "tuples":
                    out.write("\t".join(f or "ε" for f in edt0l.split_tuple(w, marker)) + "\n")
                else:
                    out.write((w or "ε") + "\n")
            if result.truncated:
                out.write(f"# truncated: depth cap {args.depth_cap} reached\n")
        return EXIT_YES if result.words else EXIT_NO

    if args.action == "empty":
        answer = edt0l.edt0l_is_empty(system)
    else:
        answer = edt0l.edt0l_is_language_infinite(system)
    if fmt == "json":
        out.write(_dump({args.action: answer}))
    else:
        out.write(f"{args.action}: {'true' if answer else 'false'}\n")
    return EXIT_YES if answer else EXIT_NO


def _nonneg(text):
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqset",
        description="Solution sets of linear Diophantine systems, EDT0L systems and word equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lindio", help="decide and enumerate A x = c over the naturals")
    p.add_argument("input", help='JSON file, "-" for stdin, or inline {"A": ..., "c": ...}')
    p.add_argument("--bound", type=_nonneg, help="list solutions with coordinates <= BOUND")
    p.add_argument("--emit-dot", metavar="PATH", help="write the trimmed automaton as DOT")
    p.add_argument("--report", metavar="DIR", help="write CSV tables and PNG figures to DIR")
    p.add_argument("--format", choices=("text", "json", "dot"))
    p.set_defaults(func=cmd_lindio)

    p = sub.add_parser("wordeq", help="word equations: brute force, encoding, checking")
    p.add_argument("action", choices=("solve", "encode", "check"))
    p.add_argument("equation", help='e.g. "abX=Yba"; lowercase constants, uppercase variables')
    p.add_argument("--cap", type=_nonneg, help="maximal image length for solve")
    p.add_argument("--single", action="store_true", help="fold into a single equation")
    p.add_argument("--assign", metavar="PATH", help="JSON assignment for check")
    p.add_argument("--format", choices=("text", "json"))
    p.set_defaults(func=cmd_wordeq)

    p = sub.add_parser("edt0l", help="query an EDT0L system given as JSON")
    p.add_argument("action", choices=("enumerate", "empty", "infinite", "tuples"))
    p.add_argument("input", help='JSON file, "-" for stdin, or inline JSON')
    p.add_argument("--cap", type=_nonneg, help="maximal word length")
    p.add_argument("--depth-cap", type=_nonneg, default=32,
                   help="path length limit when some label erases (default 32)")
    p.add_argument("--format", choices=("text", "json", "dot"))
    p.set_defaults(func=cmd_edt0l)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"eqset: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
