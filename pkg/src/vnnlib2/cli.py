"""Command-line interface.

Exit codes: 0 success / satisfied / found; 1 violated / unknown;
2 type error; 3 parse error; 4 I/O or format error.  Results go to
stdout, diagnostics to stderr; `--json` swaps the human result lines for
one machine-readable report object.
"""

from __future__ import annotations

import argparse
import json
import sys

from .lexer import SourceError, line_col
from .mini import MINI_THEORY, FormatError, load_model_file
from .parser import parse_query
from .printer import print_query
from .real import wrap_theory
from .semantics import eval_query, search_witness
from .syntax import Query, ast_to_json
from .typecheck import TypeCheckError, check_assignment, check_models, type_query

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_TYPE_ERROR = 2
EXIT_PARSE_ERROR = 3
EXIT_FORMAT_ERROR = 4


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class _Failure(Exception):
    def __init__(self, code: int, report: dict, diagnostic: str):
        self.code = code
        self.report = report
        self.diagnostic = diagnostic
        super().__init__(diagnostic)


def _error_report(command: str, kind: str, message: str, **extra) -> dict:
    report = {"command": command, "status": "error",
              "error": {"kind": kind, "message": message, **extra}}
    return report


def _read_text(command: str, path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Failure(
            EXIT_FORMAT_ERROR,
            _error_report(command, "io", str(exc), path=path),
            f"error: cannot read {path}: {exc}",
        ) from None


def _parse(command: str, path: str, source: str) -> Query:
    try:
        return parse_query(source)
    except SourceError as exc:
        line, col = line_col(source, min(exc.position, len(source)))
        raise _Failure(
            EXIT_PARSE_ERROR,
            _error_report(
                command, "parse", exc.message, position=exc.position,
                line=line, column=col,
            ),
            f"{path}:{line}:{col}: parse error: {exc.message}",
        ) from None


def _type_failure(command: str, path: str, source: str, exc: TypeCheckError) -> _Failure:
    line, col = line_col(source, min(exc.span.start, len(source)))
    return _Failure(
        EXIT_TYPE_ERROR,
        _error_report(
            command, "type", exc.message, code=exc.code.value,
            span=exc.span.to_json(), line=line, column=col,
        ),
        f"{path}:{line}:{col}: type error [{exc.code.value}]: {exc.message}",
    )


def _format_failure(command: str, exc: FormatError) -> _Failure:
    return _Failure(
        EXIT_FORMAT_ERROR,
        _error_report(command, "format", exc.message, path=exc.path),
        f"error: {exc.path}: {exc.message}",
    )


def _parse_bindings(command: str, pairs: list[str]) -> dict[str, str]:
    bindings: dict[str, str] = {}
    for pair in pairs:
        name, sep, path = pair.partition("=")
        if not sep or not name or not path:
            raise _Failure(
                EXIT_FORMAT_ERROR,
                _error_report(command, "format", f"malformed binding {pair!r}",
                              path=pair),
                f"error: network bindings look like NAME=PATH, got {pair!r}",
            )
        if name in bindings:
            raise _Failure(
                EXIT_FORMAT_ERROR,
                _error_report(command, "format",
                              f"duplicate binding for network {name!r}", path=pair),
                f"error: network {name!r} is bound twice",
            )
        bindings[name] = path
    return bindings


def _load_models(command: str, query: Query, bindings: dict[str, str]) -> dict:
    declared = {n.name for n in query.networks}
    for name in bindings:
        if name not in declared:
            raise _Failure(
                EXIT_FORMAT_ERROR,
                _error_report(command, "format",
                              f"binding for undeclared network {name!r}", path=name),
                f"error: the query declares no network named {name!r}",
            )
    models = {}
    for name, path in bindings.items():
        try:
            models[name] = load_model_file(path)
        except OSError as exc:
            raise _Failure(
                EXIT_FORMAT_ERROR,
                _error_report(command, "io", str(exc), path=path),
                f"error: cannot read {path}: {exc}",
            ) from None
        except FormatError as exc:
            raise _failure_with_file(command, path, exc) from None
    return models


def _failure_with_file(command: str, path: str, exc: FormatError) -> _Failure:
    return _Failure(
        EXIT_FORMAT_ERROR,
        _error_report(command, "format", exc.message, path=f"{path}:{exc.path}"),
        f"error: {path}: {exc.path}: {exc.message}",
    )


def _load_assignment(command: str, query: Query, path: str, theory) -> dict:
    text = _read_text(command, path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Failure(
            EXIT_FORMAT_ERROR,
            _error_report(command, "format", f"not valid JSON: {exc}", path=path),
            f"error: {path}: not valid JSON: {exc}",
        ) from None
    if not isinstance(doc, dict):
        raise _Failure(
            EXIT_FORMAT_ERROR,
            _error_report(command, "format", "expected an object of tensors",
                          path=path),
            f"error: {path}: expected an object mapping variables to tensors",
        )
    declared_inputs = {d.var_name for n in query.networks for d in n.inputs}
    assignment = {}
    for name, obj in doc.items():
        if name not in declared_inputs:
            raise _Failure(
                EXIT_FORMAT_ERROR,
                _error_report(command, "format",
                              f"{name!r} is not a declared input variable",
                              path=f"{path}:{name}"),
                f"error: {path}: {name!r} is not a declared input variable",
            )
        try:
            assignment[name] = theory.tensor_from_json(obj, name)
        except FormatError as exc:
            raise _failure_with_file(command, path, exc) from None
    return assignment


def _theory(args):
    return wrap_theory(MINI_THEORY) if args.real else MINI_THEORY


# -- command handlers -----------------------------------------------------------


def _cmd_parse(args) -> tuple[int, dict, list[str]]:
    source = _read_text("parse", args.query)
    query = _parse("parse", args.query, source)
    report = {"command": "parse", "status": "ok"}
    if args.ast_json:
        report["ast"] = ast_to_json(query)
        lines = [canonical_json(report["ast"])]
    elif args.pretty:
        lines = [print_query(query).rstrip("\n")]
    else:
        lines = ["OK"]
    return EXIT_OK, report, lines


def _cmd_check(args) -> tuple[int, dict, list[str]]:
    source = _read_text("check", args.query)
    query = _parse("check", args.query, source)
    theory = _theory(args)
    bindings = _parse_bindings("check", args.network or [])
    try:
        type_query(query, theory)
    except TypeCheckError as exc:
        raise _type_failure("check", args.query, source, exc) from None
    if bindings:
        models = _load_models("check", query, bindings)
        try:
            check_models(query, models, theory)
        except TypeCheckError as exc:
            raise _type_failure("check", args.query, source, exc) from None
    return EXIT_OK, {"command": "check", "status": "ok"}, ["OK"]


def _cmd_eval(args) -> tuple[int, dict, list[str]]:
    source = _read_text("eval", args.query)
    query = _parse("eval", args.query, source)
    theory = _theory(args)
    bindings = _parse_bindings("eval", args.network or [])
    try:
        type_query(query, theory)
    except TypeCheckError as exc:
        raise _type_failure("eval", args.query, source, exc) from None
    models = _load_models("eval", query, bindings)
    try:
        check_models(query, models, theory)
        assignment = _load_assignment("eval", query, args.assignment, theory)
        check_assignment(query, assignment, theory)
    except TypeCheckError as exc:
        raise _type_failure("eval", args.query, source, exc) from None
    verdict = eval_query(query, models, assignment, theory)
    status = "satisfied" if verdict.satisfied else "violated"
    report = {
        "command": "eval",
        "status": status,
        "assertions": [
            {"span": span.to_json(), "holds": holds}
            for span, holds in verdict.per_assertion
        ],
    }
    lines = ["SATISFIED-BY-WITNESS" if verdict.satisfied else "VIOLATED"]
    for i, (span, holds) in enumerate(verdict.per_assertion, start=1):
        line, col = line_col(source, span.start)
        lines.append(f"  assertion {i} ({line}:{col}): {'true' if holds else 'false'}")
    return (EXIT_OK if verdict.satisfied else EXIT_VIOLATED), report, lines


def _cmd_search(args) -> tuple[int, dict, list[str]]:
    source = _read_text("search", args.query)
    query = _parse("search", args.query, source)
    theory = _theory(args)
    bindings = _parse_bindings("search", args.network or [])
    try:
        type_query(query, theory)
    except TypeCheckError as exc:
        raise _type_failure("search", args.query, source, exc) from None
    models = _load_models("search", query, bindings)
    try:
        check_models(query, models, theory)
    except TypeCheckError as exc:
        raise _type_failure("search", args.query, source, exc) from None
    witness = search_witness(
        query, models, theory, samples=args.samples, seed=args.seed
    )
    if witness is None:
        report = {"command": "search", "status": "unknown", "samples": args.samples}
        lines = [f"UNKNOWN (best-effort search exhausted {args.samples} samples; "
                 "this is not an unsatisfiability proof)"]
        return EXIT_VIOLATED, report, lines
    witness_json = {
        name: theory.tensor_to_json(tensor) for name, tensor in witness.items()
    }
    report = {"command": "search", "status": "found", "witness": witness_json}
    return EXIT_OK, report, ["FOUND", canonical_json(witness_json)]


def _cmd_version(args) -> tuple[int, dict, list[str]]:
    from . import __version__

    report = {
        "command": "version",
        "version": __version__,
        "queryLanguage": "2.0",
    }
    return EXIT_OK, report, [f"vnnlib2 {__version__} (query language 2.0)"]


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vnnlib2",
        description="Parse, type-check and evaluate neural network "
        "verification queries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, networks=True):
        p.add_argument("query", help="query file (.vnnlib)")
        if networks:
            p.add_argument(
                "--network", action="append", metavar="NAME=PATH",
                help="bind a declared network to a model file (repeatable)",
            )
        p.add_argument("--real", action="store_true",
                       help="use the exact real-valued theory")
        p.add_argument("--json", action="store_true",
                       help="emit a machine-readable report on stdout")

    p_parse = sub.add_parser("parse", help="parse a query and report the first error")
    p_parse.add_argument("query")
    p_parse.add_argument("--ast-json", action="store_true",
                         help="print the AST as a JSON tree")
    p_parse.add_argument("--pretty", action="store_true",
                         help="print the canonical form of the query")
    p_parse.add_argument("--json", action="store_true")
    p_parse.set_defaults(handler=_cmd_parse)

    p_check = sub.add_parser("check", help="type-check a query (and models, if bound)")
    add_common(p_check)
    p_check.set_defaults(handler=_cmd_check)

    p_eval = sub.add_parser("eval", help="evaluate a query against one witness")
    add_common(p_eval)
    p_eval.add_argument("--assignment", required=True, metavar="PATH",
                        help="JSON file assigning a tensor to every input variable")
    p_eval.set_defaults(handler=_cmd_eval)

    p_search = sub.add_parser("search", help="best-effort witness search")
    add_common(p_search)
    p_search.add_argument("--samples", type=int, default=256,
                          help="sample budget (default 256)")
    p_search.add_argument("--seed", type=int, default=0,
                          help="RNG seed (default 0)")
    p_search.set_defaults(handler=_cmd_search)

    p_version = sub.add_parser("version", help="print version information")
    p_version.add_argument("--json", action="store_true")
    p_version.set_defaults(handler=_cmd_version)

    return parser


def run(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        code, report, lines = args.handler(args)
    except _Failure as failure:
        if getattr(args, "json", False):
            print(canonical_json(failure.report))
        print(failure.diagnostic, file=sys.stderr)
        return failure.code
    if getattr(args, "json", False):
        print(canonical_json(report))
    else:
        for line in lines:
            print(line)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
