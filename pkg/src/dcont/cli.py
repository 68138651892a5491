"""Command-line front end: law checking, interpretation and constructions.

Exit codes: 0 when every law passes (or is exhausted without failure), 1 when
some law fails, 2 for usage, parse and evaluation errors.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
from typing import Any, List, Optional, Sequence, Tuple

from . import dsl
from .constructions import STRICT, StrictDirectedContainer, strict_to_dc
from .containers import CONTAINERS, Container, ContainerMorphism, render_structure, structure
from .directed import (
    MORPHISMS,
    DCMorphism,
    DirectedContainer,
    builtin,
    builtin_names,
    dc_comult,
    dc_counit,
    dc_extend,
)
from .errors import DcontError
from .laws import (
    Bounds,
    LawReport,
    UniversalProbe,
    check_comonad_laws,
    check_dc_laws,
    check_dc_morphism_laws,
    check_functor_laws,
    check_morphism_typing,
    check_roundtrips,
    check_strict_laws,
    check_universal,
    check_update_monad_laws,
)
from .values import Symbol, quantify, render

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401 - argparse hook
        raise UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dcont", description="Directed containers: law checking and interpretation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="run the law suites on a .dcont file, a directory or a builtin")
    check.add_argument("path", nargs="?", help=".dcont file or directory of them (not recursive)")
    check.add_argument("--builtin", help="check a catalogue entry instead of a file")
    check.add_argument("--object", help="only check this declaration")
    check.add_argument("--shape-bound", type=_positive)
    check.add_argument("--pos-fuel", type=_positive)
    check.add_argument("--payloads", type=_positive)
    check.add_argument("--json", action="store_true", help="machine-readable report")
    check.add_argument("--deep", action="store_true", help="also run comonad, round-trip and monad suites")

    for name, text in (
        ("interp", "print the structure (shape, payloads)"),
        ("duplicate", "apply the comultiplication"),
        ("extract", "apply the counit"),
        ("extend", "apply a function to every substructure"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("path", nargs="?")
        p.add_argument("--builtin")
        p.add_argument("--object")
        p.add_argument("--shape", required=True, help="shape, as a DSL expression")
        p.add_argument("--payloads", required=True, help="comma-separated payloads in position order")
        if name == "extend":
            p.add_argument("--fn", choices=("counit", "size", "shape"), default="counit")

    cons = sub.add_parser("construct", help="emit a construction as DSL text")
    cons.add_argument("kind", choices=dsl.CONSTRUCT_KINDS)
    cons.add_argument("args", nargs="+", help="names of the objects to combine (and options)")
    cons.add_argument("--file", help="spec declaring the named objects")
    cons.add_argument("--name", help="name of the constructed object")

    sub.add_parser("builtins", help="list the builtin catalogue")
    return parser


# ---------------------------------------------------------------------------
# loading


def _bounds(args: argparse.Namespace) -> Bounds:
    try:
        base = Bounds.from_env()
    except ValueError as err:
        raise UsageError(str(err)) from None
    return Bounds(
        args.shape_bound or base.shape_bound,
        args.pos_fuel or base.position_fuel,
        args.payloads or base.payload_samples,
    )


def _spec_files(path: str) -> List[str]:
    if os.path.isdir(path):
        return sorted(os.path.join(path, f) for f in os.listdir(path) if f.endswith(".dcont"))
    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    return [path]


def _read(path: str) -> dsl.Namespace:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return dsl.load(text)
    except DcontError as err:
        raise UsageError(f"{path}:{err}") from None


def _builtin_object(name: str) -> Any:
    if name in STRICT:
        return STRICT[name]
    if name in MORPHISMS:
        return MORPHISMS[name]
    try:
        return builtin(name)
    except DcontError as err:
        raise UsageError(str(err)) from None


# ---------------------------------------------------------------------------
# check


def _reports_for(name: str, obj: Any, kind: str, bundle: Any, b: Bounds, deep: bool) -> List[LawReport]:
    if isinstance(obj, DCMorphism):
        return [check_dc_morphism_laws(obj, b)]
    if isinstance(obj, ContainerMorphism):
        return [check_morphism_typing(obj, b)]
    if isinstance(obj, StrictDirectedContainer):
        report = check_strict_laws(obj, b)
        if deep:
            report.extend(check_dc_laws(strict_to_dc(obj), b))
        return [report]
    if isinstance(obj, Container):
        return [check_functor_laws(obj, b)] if deep else []
    report = check_dc_laws(obj, b)
    if deep:
        report.extend(check_comonad_laws(obj, b))
        report.extend(check_roundtrips(obj, b))
        report.extend(check_update_monad_laws(obj, b))
        if bundle is not None:
            report.extend(check_universal(bundle.kind, bundle, _default_probes(bundle), b))
    return [report]


def _default_probes(bundle: Any) -> List[UniversalProbe]:
    if bundle.kind == "coproduct":
        return [UniversalProbe((bundle.legs["inl"], bundle.legs["inr"]), label="injections")]
    if bundle.kind == "strict_product":
        return [UniversalProbe((bundle.legs["pi0"], bundle.legs["pi1"]), label="projections")]
    return [UniversalProbe((bundle.legs["pi"], bundle.object), label="projection")]


def _collect(args: argparse.Namespace) -> List[Tuple[str, Any, str, Any]]:
    if args.builtin:
        obj = _builtin_object(args.builtin)
        return [(args.builtin, obj, "builtin", None)]
    if not args.path:
        raise UsageError("check needs a path or --builtin")
    files = _spec_files(args.path)
    several = len(files) > 1 or os.path.isdir(args.path)
    out = []
    for path in files:
        ns = _read(path)
        names = ns.names()
        if args.object:
            if args.object not in ns.objects:
                if several:
                    continue
                raise UsageError(f"{path}: no object named {args.object!r}")
            names = [args.object]
        for n in names:
            label = f"{os.path.basename(path)}:{n}" if several else n
            out.append((label, ns.objects[n], ns.kinds[n], ns.bundles.get(n)))
    if args.object and not out:
        raise UsageError(f"no object named {args.object!r}")
    return out


def _format_text(reports: List[LawReport]) -> str:
    lines = []
    failures = 0
    first = None
    for r in reports:
        verdict = "FAIL" if not r.ok else ("pass" if r.all_pass else "pass (exhausted within bounds)")
        lines.append(f"{r.subject}: {verdict}")
        for e in r.entries:
            line = f"  {e.law_id:<32} {e.status:<10} {e.cases:>6} cases"
            if e.counterexample is not None:
                line += "  counterexample " + " ".join(f"{k}={v}" for k, v in e.rendered_counterexample().items())
            if e.note and e.status == "fail":
                line += f"  ({e.note})"
            lines.append(line)
            if e.status == "fail":
                failures += 1
                if first is None:
                    first = (r.subject, e)
    lines.append(f"{len(reports)} object(s) checked, {failures} failing law(s)")
    if first is not None:
        subject, e = first
        where = ", ".join(f"{k}={v}" for k, v in e.rendered_counterexample().items())
        lines.append(f"first failure: {subject} {e.law_id} at {where}")
    return "\n".join(lines) + "\n"


def report_json(reports: List[LawReport]) -> str:
    payload: Any = [r.as_json() for r in reports]
    if len(payload) == 1:
        payload = payload[0]
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def cmd_check(args: argparse.Namespace) -> Tuple[int, str]:
    b = _bounds(args)
    reports: List[LawReport] = []
    for label, obj, kind, bundle in _collect(args):
        for r in _reports_for(label, obj, kind, bundle, b, args.deep):
            r.subject = label
            reports.append(r)
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL
    return code, report_json(reports) if args.json else _format_text(reports)


# ---------------------------------------------------------------------------
# interpretation commands


def parse_payloads(text: str) -> List[Any]:
    out: List[Any] = []
    for item in (x.strip() for x in text.split(",")):
        if not item:
            continue
        try:
            out.append(int(item))
        except ValueError:
            out.append(Symbol(item))
    return out


def _pick_directed(args: argparse.Namespace) -> Any:
    if args.builtin:
        return _builtin_object(args.builtin)
    if not args.path:
        raise UsageError(f"{args.command} needs a file or --builtin")
    ns = _read(args.path)
    if args.object:
        try:
            return ns[args.object]
        except DcontError as err:
            raise UsageError(str(err)) from None
    candidates = [n for n in ns.names() if isinstance(ns.objects[n], DirectedContainer)]
    if args.command == "interp":
        candidates = candidates or [n for n in ns.names() if isinstance(ns.objects[n], Container)]
    if len(candidates) != 1:
        raise UsageError(f"{args.path}: pass --object (found {len(candidates)} candidates)")
    return ns.objects[candidates[0]]


def cmd_structure(args: argparse.Namespace) -> Tuple[int, str]:
    obj = _pick_directed(args)
    if isinstance(obj, StrictDirectedContainer):
        obj = strict_to_dc(obj)
    container = obj.base if isinstance(obj, DirectedContainer) else obj
    if not isinstance(container, Container):
        raise UsageError(f"{args.command} needs a container or directed container")
    try:
        shape = dsl.evaluate(dsl.parse_expr(args.shape), {})
    except DcontError as err:
        raise UsageError(f"--shape: {err}") from None
    if not container.has_shape(shape):
        raise UsageError(f"{render(shape)} is not a shape of {container.name}")
    d = structure(container, shape, parse_payloads(args.payloads))
    if args.command == "interp":
        return EXIT_OK, render_structure(d) + "\n"
    if not isinstance(obj, DirectedContainer):
        raise UsageError(f"{args.command} needs a directed container")
    if args.command == "duplicate":
        return EXIT_OK, render_structure(dc_comult(obj, d)) + "\n"
    if args.command == "extract":
        return EXIT_OK, render(dc_counit(obj, d)) + "\n"
    fns = {
        "counit": lambda sub: dc_counit(obj, sub),
        "size": lambda sub: len(quantify(sub.container.positions(sub.shape), 64)[0]),
        "shape": lambda sub: sub.shape,
    }
    return EXIT_OK, render_structure(dc_extend(obj, fns[args.fn], d)) + "\n"


# ---------------------------------------------------------------------------
# construct and builtins


def cmd_construct(args: argparse.Namespace) -> Tuple[int, str]:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            try:
                spec = dsl.parse_spec(fh.read())
            except DcontError as err:
                raise UsageError(f"{args.file}:{err}") from None
    else:
        spec = dsl.Spec(())
    declared = set(spec.names())
    extra = []
    values: List[Any] = []
    for a in args.args:
        if a.lstrip("-").isdigit():
            values.append(int(a))
            continue
        values.append(a)
        if a in declared or a in CONTAINERS or a in ("recursive", "depth_bounded"):
            continue
        if a in STRICT or a not in builtin_names():
            raise UsageError(f"unknown object {a!r}")
        extra.append(dsl.BuiltinDecl(_ident(a), a))
        values[-1] = _ident(a)
    name = args.name or _ident("_".join([args.kind] + [str(v) for v in values]))
    decl = dsl.ConstructDecl(name, args.kind, tuple(values))
    out = dsl.Spec(tuple(extra) + spec.declarations + (decl,))
    text = dsl.print_spec(out)
    try:
        dsl.build(dsl.parse_spec(text))
    except DcontError as err:
        raise UsageError(str(err)) from None
    return EXIT_OK, text


def _ident(text: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in text).strip("_")


def cmd_builtins(_args: argparse.Namespace) -> Tuple[int, str]:
    lines = ["directed containers:"]
    lines += [f"  {n}" for n in builtin_names()]
    lines.append("containers:")
    lines += [f"  {n}" for n in CONTAINERS]
    lines.append("strict directed containers:")
    lines += [f"  {n}" for n in STRICT]
    lines.append("container morphisms:")
    lines += [f"  {h.name} : {h.source.name} -> {h.target.name}" for h in MORPHISMS.values()]
    return EXIT_OK, "\n".join(lines) + "\n"


_COMMANDS = {
    "check": cmd_check,
    "interp": cmd_structure,
    "duplicate": cmd_structure,
    "extract": cmd_structure,
    "extend": cmd_structure,
    "construct": cmd_construct,
    "builtins": cmd_builtins,
}


def run_command(argv: Sequence[str]) -> Tuple[int, str]:
    """Run one command; returns ``(exit_code, output)`` without touching the process."""
    parser = build_parser()
    captured = io.StringIO()
    try:
        with contextlib.redirect_stdout(captured):
            args = parser.parse_args(list(argv))
    except UsageError as err:
        return EXIT_USAGE, f"{err}\n"
    except SystemExit as stop:  # --help
        return (stop.code or 0), captured.getvalue()
    try:
        return _COMMANDS[args.command](args)
    except UsageError as err:
        return EXIT_USAGE, f"error: {err}\n"
    except DcontError as err:
        return EXIT_USAGE, f"error: {err}\n"
    except OSError as err:
        return EXIT_USAGE, f"error: {err}\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, output = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code != EXIT_USAGE else sys.stderr
    stream.write(output)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
