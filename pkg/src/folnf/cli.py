"""Command-line interface: ``folnf <subcommand> [options]``.

Exit codes: 0 success (or equivalent), 1 not equivalent, 2 validation
error, 3 genericity or resonance error, 4 parse error.
"""
import argparse
import json
import re
import sys

from .cone import check_genericity, construct_example
from .documents import (FORM_SCHEMA, NORMAL_FORM_SCHEMA, detect_schema, parse_form_document,
                        parse_map, parse_normal_form, serialize_form, serialize_map,
                        serialize_normal_form, serialize_transcript)
from .errors import DocumentError, ExpressionSyntaxError, FolnfError, ValidationError
from .expr import parse_expr
from .invariants import invariant_equivalent
from .jets import pullback
from .perturb import random_identity_tangent_map
from .reduction import rectify_separatrix, reduce_to_normal_form

EXIT_OK, EXIT_NOT_EQUIVALENT, EXIT_VALIDATION, EXIT_GENERICITY, EXIT_PARSE = 0, 1, 2, 3, 4


def _read(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _split_list(text):
    return [part.strip() for part in text.split(",") if part.strip()] if text else []


_TERM_RE = re.compile(r"^(?:(?P<coef>.+)\*)?(?P<var>[xy])$")


def parse_linear_form(text, generators=None):
    """Parse ``a*x + c*y`` style text (e.g. ``x``, ``x-y``, ``t1*x+2*y``) into ``(a, c)``."""
    s = text.replace(" ", "")
    if not s:
        raise ExpressionSyntaxError("empty linear form", text, 0)
    terms, depth, start = [], 0, 0
    for pos, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and pos > start and s[pos - 1] not in "*/^(":
            terms.append(s[start:pos])
            start = pos
    terms.append(s[start:])
    coeffs = {"x": parse_expr("0"), "y": parse_expr("0")}
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-") if term[:1] in "+-" else term
        m = _TERM_RE.match(body)
        if m is None:
            raise ExpressionSyntaxError("expected a term like 'c*x' or 'y'", text, s.find(term))
        c = parse_expr(m.group("coef"), generators) if m.group("coef") else parse_expr("1")
        coeffs[m.group("var")] = coeffs[m.group("var")] + c * sign
    return coeffs["x"], coeffs["y"]


def _report_dict(report):
    return {"schema": "folnf.genericity/1",
            "dicritic": report.dicritic,
            "cone_normalized": report.cone_normalized,
            "cone_scale": None if report.cone_scale is None else str(report.cone_scale),
            "residues": None if report.residues is None else [str(a) for a in report.residues],
            "generic": report.generic,
            "verdict": report.reason()}


def _load_form(path, order=None):
    doc = parse_form_document(_read(path))
    if order is not None and order != doc.form.order:
        if order > doc.form.order:
            raise ValidationError(f"--order {order} exceeds the document's order {doc.form.order}")
        doc.form = doc.form.truncate(order)
    return doc


# -- subcommands ---------------------------------------------------------------------
def cmd_analyze(args):
    doc = _load_form(args.input, args.order_explicit)
    _write(args.output, json.dumps(_report_dict(check_genericity(doc.form)), indent=2) + "\n")
    return EXIT_OK


def cmd_construct(args):
    lam = [parse_expr(t) for t in _split_list(args.residues)]
    lines = [parse_linear_form(t) for t in _split_list(args.lines)]
    b = [parse_expr(t) for t in _split_list(args.b)]
    eta = construct_example(lam, lines, b, args.order)
    meta = {"label": args.label} if args.label else None
    _write(args.output, serialize_form(eta, metadata=meta))
    return EXIT_OK


def cmd_rectify(args):
    doc = _load_form(args.input, args.order_explicit)
    report = check_genericity(doc.form)
    if not report.cone_normalized:
        from .errors import GenericityError
        raise GenericityError(report.reason())
    eta, steps = rectify_separatrix(doc.form.scale(report.cone_scale.inverse()))
    meta = {"rectification": [{"k": s.k, "c": str(s.c)} for s in steps]}
    _write(args.output, serialize_form(eta, metadata=meta))
    return EXIT_OK


def cmd_reduce(args):
    doc = _load_form(args.input, args.order_explicit)
    nf, transcript = reduce_to_normal_form(doc.form)
    if args.transcript:
        _write(args.transcript, serialize_transcript(transcript))
    _write(args.output, serialize_normal_form(nf))
    return EXIT_OK


def cmd_pullback(args):
    doc = _load_form(args.input, args.order_explicit)
    phi = parse_map(_read(args.map))
    N = doc.form.order
    if phi.order < N:
        raise ValidationError(f"map order {phi.order} is below the form's order {N}")
    if phi.order > N:
        from .jets import FormalMapJet
        phi = FormalMapJet(phi.U.truncate(N), phi.V.truncate(N))
    _write(args.output, serialize_form(pullback(doc.form, phi)))
    return EXIT_OK


def _as_normal_form(path):
    text = _read(path)
    schema = detect_schema(text)
    if schema == NORMAL_FORM_SCHEMA:
        return parse_normal_form(text)
    if schema == FORM_SCHEMA:
        return reduce_to_normal_form(parse_form_document(text).form)[0]
    if schema is None:
        parse_normal_form(text)  # raises the precise syntax error
    raise DocumentError(f"{path}: expected a form or normal-form document, found {schema!r}")


def cmd_equiv(args):
    nf1 = _as_normal_form(args.first)
    nf2 = _as_normal_form(args.second)
    same = invariant_equivalent(nf1, nf2)
    _write(args.output, ("equivalent" if same else "not equivalent") + "\n")
    return EXIT_OK if same else EXIT_NOT_EQUIVALENT


def cmd_perturb(args):
    doc = _load_form(args.input, args.order_explicit)
    N = doc.form.order
    phi = random_identity_tangent_map(args.seed, args.degree, N)
    if args.emit_map:
        _write(args.emit_map, serialize_map(phi))
    meta = {"perturbation": {"seed": args.seed, "degree": args.degree}}
    _write(args.output, serialize_form(pullback(doc.form, phi), metadata=meta))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="folnf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, io=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if io:
            p.add_argument("--input", "-i", default="-", help="input document (default: stdin)")
        p.add_argument("--output", "-o", default="-", help="output path (default: stdout)")
        return p

    p = add("analyze", cmd_analyze, "report tangent cone, residues and genericity")
    p.add_argument("--order", type=int, dest="order_explicit", help="re-truncate the input")

    p = add("construct", cmd_construct, "build the example family", io=False)
    p.add_argument("--residues", "--lambda", default="t1,t2,1-t1-t2",
                   help="comma-separated residues summing to 1")
    p.add_argument("--lines", default="x,y,x-y", help="three comma-separated linear forms")
    p.add_argument("--b", default="", help="comma-separated correction coefficients b_0, b_1, ...")
    p.add_argument("--order", type=int, default=12, help="truncation order (default 12)")
    p.add_argument("--label", default=None, help="metadata label")

    p = add("rectify", cmd_rectify, "rectify the separatrix tangent to x=0")
    p.add_argument("--order", type=int, dest="order_explicit", help="re-truncate the input")

    p = add("reduce", cmd_reduce, "reduce to the formal normal form")
    p.add_argument("--order", type=int, dest="order_explicit", help="re-truncate the input")
    p.add_argument("--transcript", default=None, help="write the reduction transcript here")

    p = add("pullback", cmd_pullback, "pull a form back by a formal map")
    p.add_argument("--order", type=int, dest="order_explicit", help="re-truncate the input")
    p.add_argument("--map", required=True, help="map document")

    p = add("equiv", cmd_equiv, "compare two normal forms (or forms) up to homothety", io=False)
    p.add_argument("first")
    p.add_argument("second")

    p = add("perturb", cmd_perturb, "pull back by a seeded random identity-tangent map")
    p.add_argument("--order", type=int, dest="order_explicit", help="re-truncate the input")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree", type=int, default=3, help="maximal degree of the map (default 3)")
    p.add_argument("--emit-map", default=None, help="also write the map document here")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FolnfError as exc:
        print(f"folnf {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
