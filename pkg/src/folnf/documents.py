"""JSON documents for forms, maps, normal forms and transcripts.

Every document carries a ``schema`` tag, the truncation ``order`` and the
declared ``generators``.  Coefficients are canonical expression strings,
listed as ``[i, j, "coeff"]`` in increasing total degree and, within a
degree, decreasing power of x.  Serialization is deterministic so that
``serialize(parse(text)) == text`` for any serialized text.
"""
import json
import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import DegreeOverflowError, DocumentError, ExpressionSyntaxError, ParseError
from .expr import parse_expr
from .field import FieldDescriptor, Generator
from .invariants import NormalForm
from .jets import FormalMapJet, Jet2, OneFormJet
from .reduction import RectificationStep, ReductionStep, ReductionTranscript

FORM_SCHEMA = "folnf.form/1"
MAP_SCHEMA = "folnf.map/1"
NORMAL_FORM_SCHEMA = "folnf.normal_form/1"
TRANSCRIPT_SCHEMA = "folnf.transcript/1"


@dataclass
class FormDocument:
    form: OneFormJet
    generators: tuple = ()
    metadata: dict = field(default_factory=dict)


@dataclass
class MapDocument:
    map: FormalMapJet
    generators: tuple = ()
    metadata: dict = field(default_factory=dict)


_TRIPLE_RE = re.compile(r'\[\s+(\d+),\s+(\d+),\s+("(?:[^"\\]|\\.)*")\s+\]')


def _dump(doc):
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    # one monomial per line
    return _TRIPLE_RE.sub(r"[\1, \2, \3]", text) + "\n"


def _load(text, schema):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        line = lines[exc.lineno - 1] if exc.lineno <= len(lines) else ""
        # positions are 0-based like expression positions; lines are 1-based
        raise ExpressionSyntaxError(f"invalid JSON: {exc.msg}", line, exc.colno - 1, exc.lineno) from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    got = doc.get("schema")
    if got != schema:
        raise DocumentError(f"expected schema {schema!r}, found {got!r}")
    return doc


def _order(doc):
    n = doc.get("order")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise DocumentError("'order' must be a nonnegative integer")
    return n


def _generators(doc):
    names = doc.get("generators", [])
    if not isinstance(names, list):
        raise DocumentError("'generators' must be a list")
    try:
        gens = [Generator.parse(n) for n in names]
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"bad generator name: {exc}") from None
    return tuple(g.name for g in sorted(set(gens)))


def _coeff(text, gens, where):
    try:
        return parse_expr(text, gens)
    except ParseError as exc:
        raise _relocate(exc, where)


def _relocate(exc, where):
    exc.args = (f"{where}: {exc.args[0] if exc.args else exc}",)
    return exc


def _terms_to_jet(entries, order, gens, where):
    if not isinstance(entries, list):
        raise DocumentError(f"{where} must be a list of [i, j, coefficient]")
    coeffs = {}
    for n, item in enumerate(entries):
        loc = f"{where}[{n}]"
        if (not isinstance(item, list) or len(item) != 3 or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in item[:2])):
            raise DocumentError(f"{loc} must be [i, j, coefficient]")
        i, j, text = item
        if i < 0 or j < 0:
            raise DocumentError(f"{loc} has a negative exponent")
        if i + j > order:
            raise DegreeOverflowError(i, j, order)
        if (i, j) in coeffs:
            raise DocumentError(f"{loc} repeats monomial x^{i} y^{j}")
        coeffs[(i, j)] = _coeff(text, gens, loc)
    return Jet2(coeffs, order)


def _jet_to_terms(jet):
    keys = sorted(jet.coeffs, key=lambda k: (k[0] + k[1], -k[0]))
    return [[i, j, str(jet.coeffs[(i, j)])] for i, j in keys]


def _names_of(mask_or_elements):
    return FieldDescriptor.of(mask_or_elements).names


def _declared(gens, used):
    """Declared generators, defaulting to those in use."""
    if gens is None:
        return used
    missing = set(used) - set(gens)
    if missing:
        raise DocumentError(f"generators {sorted(missing)} are used but not declared")
    return sorted(set(gens), key=lambda n: Generator.parse(n))


# -- forms ----------------------------------------------------------------------------
def form_to_dict(eta: OneFormJet, generators=None, metadata=None):
    used = _names_of(list(eta.coefficients()))
    doc = {"schema": FORM_SCHEMA, "order": eta.order,
           "generators": _declared(generators, used),
           "P": _jet_to_terms(eta.P), "Q": _jet_to_terms(eta.Q)}
    if metadata:
        doc["metadata"] = metadata
    return doc


def serialize_form(eta, generators=None, metadata=None) -> str:
    if isinstance(eta, FormDocument):
        eta, generators, metadata = eta.form, eta.generators or None, eta.metadata
    return _dump(form_to_dict(eta, generators, metadata))


def form_from_dict(doc) -> FormDocument:
    N = _order(doc)
    gens = _generators(doc)
    P = _terms_to_jet(doc.get("P", []), N, gens, "P")
    Q = _terms_to_jet(doc.get("Q", []), N, gens, "Q")
    meta = doc.get("metadata", {})
    if not isinstance(meta, dict):
        raise DocumentError("'metadata' must be an object")
    return FormDocument(OneFormJet(P, Q), gens, meta)


def parse_form_document(text) -> FormDocument:
    return form_from_dict(_load(text, FORM_SCHEMA))


def parse_form(text) -> OneFormJet:
    return parse_form_document(text).form


# -- maps ------------------------------------------------------------------------------
def serialize_map(phi, generators=None, metadata=None) -> str:
    if isinstance(phi, MapDocument):
        phi, generators, metadata = phi.map, phi.generators or None, phi.metadata
    used = _names_of(list(phi.U.coeffs.values()) + list(phi.V.coeffs.values()))
    doc = {"schema": MAP_SCHEMA, "order": phi.order,
           "generators": _declared(generators, used),
           "U": _jet_to_terms(phi.U), "V": _jet_to_terms(phi.V)}
    if metadata:
        doc["metadata"] = metadata
    return _dump(doc)


def parse_map_document(text) -> MapDocument:
    doc = _load(text, MAP_SCHEMA)
    N = _order(doc)
    gens = _generators(doc)
    U = _terms_to_jet(doc.get("U", []), N, gens, "U")
    V = _terms_to_jet(doc.get("V", []), N, gens, "V")
    meta = doc.get("metadata", {})
    return MapDocument(FormalMapJet(U, V), gens, meta if isinstance(meta, dict) else {})


def parse_map(text) -> FormalMapJet:
    return parse_map_document(text).map


# -- normal forms --------------------------------------------------------------------
def normal_form_to_dict(nf: NormalForm):
    return {"schema": NORMAL_FORM_SCHEMA, "order": nf.N,
            "generators": nf.field.names,
            "residues": [str(a) for a in nf.residues],
            "b": [str(v) for v in nf.b],
            "b_cutoff": nf.b_cutoff,
            "field": {"generators": nf.field.names,
                      "transcendence_degree": nf.field.transcendence_degree}}


def serialize_normal_form(nf: NormalForm) -> str:
    return _dump(normal_form_to_dict(nf))


def parse_normal_form(text) -> NormalForm:
    doc = _load(text, NORMAL_FORM_SCHEMA)
    N = _order(doc)
    gens = _generators(doc)
    res = doc.get("residues")
    b = doc.get("b")
    if not isinstance(res, list) or len(res) != 3:
        raise DocumentError("'residues' must list three coefficients")
    if not isinstance(b, list) or len(b) != N - 2:
        raise DocumentError(f"'b' must list {N - 2} coefficients for order {N}")
    residues = [_coeff(t, gens, f"residues[{n}]") for n, t in enumerate(res)]
    bs = [_coeff(t, gens, f"b[{n}]") for n, t in enumerate(b)]
    if N < 4:
        raise DocumentError("normal forms need order at least 4")
    return NormalForm.build(residues, bs, N)


# -- transcripts ------------------------------------------------------------------------
def transcript_to_dict(tr: ReductionTranscript):
    return {"schema": TRANSCRIPT_SCHEMA, "order": tr.N,
            "generators": _names_of(list(tr.coefficients())),
            "input_digest": tr.input_digest,
            "cone_scale": str(tr.cone_scale),
            "rectification": [{"k": r.k, "c": str(r.c)} for r in tr.rectification],
            "steps": [{"m": s.m, "alpha": _jet_to_terms(s.alpha), "beta": _jet_to_terms(s.beta),
                       "delta": _jet_to_terms(s.delta), "b": str(s.b), "b_unique": s.b_unique}
                      for s in tr.steps]}


def serialize_transcript(tr: ReductionTranscript) -> str:
    return _dump(transcript_to_dict(tr))


def parse_transcript(text) -> ReductionTranscript:
    doc = _load(text, TRANSCRIPT_SCHEMA)
    N = _order(doc)
    gens = _generators(doc)
    digest = doc.get("input_digest")
    if not isinstance(digest, str):
        raise DocumentError("'input_digest' must be a string")
    try:
        rect = tuple(RectificationStep(int(r["k"]), _coeff(r["c"], gens, f"rectification[{n}]"))
                     for n, r in enumerate(doc.get("rectification", [])))
        steps = []
        for n, s in enumerate(doc.get("steps", [])):
            loc = f"steps[{n}]"
            steps.append(ReductionStep(
                int(s["m"]),
                _terms_to_jet(s["alpha"], N, gens, loc + ".alpha"),
                _terms_to_jet(s["beta"], N, gens, loc + ".beta"),
                _terms_to_jet(s["delta"], N, gens, loc + ".delta"),
                _coeff(s["b"], gens, loc + ".b"),
                bool(s.get("b_unique", True))))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed transcript entry: {exc}") from None
    return ReductionTranscript(digest, N, _coeff(doc.get("cone_scale", "1"), gens, "cone_scale"),
                               rect, tuple(steps))


def detect_schema(text) -> Optional[str]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return None
    return doc.get("schema") if isinstance(doc, dict) else None
